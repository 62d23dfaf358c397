"""Command line entry point: ``nefcone``.

Exit codes: 0 when every verdict passes, 1 when a verdict fails, 2 on usage
or schema errors.
"""

import argparse
import json
import sys

from . import scenarios as sc


def _vec_arg(text):
    parts = [p for p in text.replace(",", " ").split() if p]
    if not parts:
        raise argparse.ArgumentTypeError("empty class")
    return parts


def _emit(report, out, timing):
    text = report.to_json(timing)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


def build_parser():
    p = argparse.ArgumentParser(prog="nefcone", description="Exact nef cone computations.")
    p.add_argument("--timing", action="store_true", help="include wall time in reports")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a scenario document")
    r.add_argument("scenario")
    r.add_argument("--out")

    b = sub.add_parser("builtin", help="run a built-in reproduction")
    b.add_argument("name")
    b.add_argument("--seed", type=int)
    b.add_argument("--word-bound", type=int)
    b.add_argument("--out")

    sub.add_parser("list", help="list built-in reproductions")

    s = sub.add_parser("surface")
    ss = s.add_subparsers(dest="op", required=True)
    for name in ("negcurves", "nef"):
        x = ss.add_parser(name)
        x.add_argument("--k", type=int, required=True)
    x = ss.add_parser("res-nef")
    x.add_argument("--class", dest="cls", type=_vec_arg, required=True,
                   help="10 coordinates in the basis H, E1..E9")

    f = sub.add_parser("fibprod")
    fs = f.add_subparsers(dest="op", required=True)
    x = fs.add_parser("decompose")
    x.add_argument("--left", required=True)
    x.add_argument("--right", required=True)
    x.add_argument("--d1", type=_vec_arg, required=True)
    x.add_argument("--d2", type=_vec_arg, required=True)
    x = fs.add_parser("corr-check")
    x.add_argument("--left", required=True)
    x.add_argument("--right", required=True)
    fs.add_parser("example-3-3")

    d = sub.add_parser("fundomain")
    ds = d.add_subparsers(dest="op", required=True)
    for name in ("dirichlet", "tile", "stabilizer"):
        x = ds.add_parser(name)
        x.add_argument("action", help="JSON file with generators, cone and xi")
        x.add_argument("--word-bound", type=int, default=4)
    return p


def _module_doc(args):
    if args.command == "surface":
        params = {"op": args.op}
        if args.op == "res-nef":
            params["class"] = args.cls
        else:
            params["k"] = args.k
        return {"kind": "surface", "name": f"surface-{args.op}", "parameters": params}
    if args.command == "fibprod":
        params = {"op": args.op}
        if args.op != "example-3-3":
            params.update(left=args.left, right=args.right)
        if args.op == "decompose":
            params.update(d1=args.d1, d2=args.d2)
        return {"kind": "fibprod", "name": f"fibprod-{args.op}", "parameters": params}
    with open(args.action) as fh:
        params = json.load(fh)
    if not isinstance(params, dict):
        raise sc.SchemaError("action document must be an object")
    params["op"] = args.op
    return {"kind": "fundomain", "name": f"fundomain-{args.op}", "parameters": params,
            "bounds": {"word_bound": args.word_bound}}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        if args.command == "list":
            for name in sc.list_builtins():
                print(name)
            return 0
        if args.command == "builtin":
            rep = sc.run_builtin(args.name, args.seed, args.word_bound)
            return _emit(rep, args.out, args.timing)
        if args.command == "run":
            with open(args.scenario) as fh:
                text = fh.read()
            return _emit(sc.run_scenario(text), args.out, args.timing)
        return _emit(sc.run_scenario(_module_doc(args)), None, args.timing)
    except (sc.SchemaError, OSError, json.JSONDecodeError) as e:
        print(f"nefcone: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
