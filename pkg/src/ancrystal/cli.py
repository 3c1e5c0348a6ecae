"""Command-line front end: build, verify, analyze, and pattern conversion."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import axioms
from .crystal import generate
from .errors import (
    CapExceededError,
    GraphFormatError,
    InfeasibleError,
    ModelError,
    ParameterError,
)
from .gt import GTPattern, count_bounded_patterns, from_gt, sigma_bound, to_gt
from .structure import (
    LOWER,
    UPPER,
    branching_multiplicity,
    principal_lattice,
    skeleton,
    subcrystals,
)
from .support import build_supporting_graph
from .weights import WeightFunction

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}")


def _add_model_args(p, require_c=True):
    p.add_argument("--n", type=int, required=require_c, help="number of colors")
    p.add_argument("--c", type=_int_list, required=require_c, help="upper bounds, comma-separated")
    p.add_argument("--d", type=_int_list, default=None, help="lower bounds (default zeros)")
    p.add_argument("--cap", type=int, default=None, help="vertex cap for generation")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ancrystal", description=__doc__)
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized helpers")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="generate a crystal and export it")
    _add_model_args(p)
    p.add_argument("--out", default=None, help="output file path")
    p.add_argument("--format", choices=("json", "dot"), default="json")

    p = sub.add_parser("verify", help="run the axiom battery on a graph")
    _add_model_args(p, require_c=False)
    p.add_argument("--in", dest="infile", default=None, help="crystal JSON or edge-list file")
    p.add_argument("--strict-a4", action="store_true", help="also check the derivable half of A4")

    p = sub.add_parser("analyze", help="structural decomposition report")
    _add_model_args(p)
    p.add_argument("--out", default=None, help="output file path")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("gt", help="pattern conversion and counting")
    _add_model_args(p, require_c=False)
    p.add_argument("--count", action="store_true", help="print the bounded-pattern count")
    p.add_argument(
        "--direction", choices=("to-pattern", "from-pattern"), default=None,
        help="convert a function file to a pattern file or back",
    )
    p.add_argument("--in", dest="infile", default=None, help="input JSON file")
    p.add_argument("--out", default=None, help="output file path")
    return ap


def _generate(args):
    kwargs = {}
    if args.cap is not None:
        kwargs["cap"] = args.cap
    return generate(args.n, args.c, args.d, **kwargs)


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_build(args) -> int:
    K = _generate(args)
    d = K.bounds.d
    length = sum(
        (K.bounds.c[k] - d[k]) * (k + 1) * (K.n - k) for k in range(K.n)
    )
    principal = principal_lattice(K).size
    print(
        f"vertices={K.num_vertices} edges={K.num_edges} "
        f"length={length} principal={principal}"
    )
    if args.format == "dot":
        text = K.to_dot()
    else:
        text = json.dumps(K.to_json(), indent=2) + "\n"
    if args.out is not None:
        _write(args.out, text)
    return EXIT_OK


def _load_graph(args):
    if args.infile is not None:
        with open(args.infile) as fh:
            text = fh.read()
        stripped = text.lstrip()
        if stripped.startswith("{"):
            return axioms.from_crystal_json(json.loads(text))
        return axioms.from_edge_list_text(text)
    if args.n is None or args.c is None:
        raise ParameterError("verify needs either --in or --n/--c")
    K = _generate(args)
    return axioms.from_crystal_json(K.to_json())


def cmd_verify(args) -> int:
    g = _load_graph(args)
    verdicts = axioms.verify_graph(g, strict_a4=args.strict_a4, fail_fast=False)
    for v in verdicts:
        print(v)
    return EXIT_OK if axioms.all_pass(verdicts) else EXIT_VERDICT


def cmd_analyze(args) -> int:
    K = _generate(args)
    lattice = principal_lattice(K)
    skel = skeleton(K)
    records = subcrystals(K, UPPER) + subcrystals(K, LOWER)
    eta = {}
    for r in records:
        if r.side == UPPER:
            eta[r.parameter] = branching_multiplicity(K.bounds.c, r.parameter)
    rows = [
        {
            "side": r.side,
            "anchor": list(r.anchor),
            "parameter": list(r.parameter),
            "size": r.size,
            "principal_vertex": r.principal_vertex,
        }
        for r in records
    ]
    print(
        f"principal={lattice.size} skeleton={skel.graph.num_vertices} "
        f"upper={sum(1 for r in records if r.side == UPPER)} "
        f"lower={sum(1 for r in records if r.side == LOWER)}"
    )
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["side", "anchor", "parameter", "size", "principal_vertex"])
        for row in rows:
            w.writerow(
                [
                    row["side"],
                    " ".join(map(str, row["anchor"])),
                    " ".join(map(str, row["parameter"])),
                    row["size"],
                    row["principal_vertex"],
                ]
            )
        text = buf.getvalue()
    else:
        report = {
            "n": K.n,
            "c": list(K.bounds.c),
            "d": list(K.bounds.d),
            "principal_lattice_size": lattice.size,
            "skeleton_size": skel.graph.num_vertices,
            "subcrystals": rows,
            "branching": [
                {"parameter": list(q), "multiplicity": m} for q, m in sorted(eta.items())
            ],
        }
        text = json.dumps(report, indent=2) + "\n"
    if args.out is not None:
        _write(args.out, text)
    return EXIT_OK


def cmd_gt(args) -> int:
    if args.count:
        if args.n is None or args.c is None:
            raise ParameterError("gt --count needs --n and --c")
        print(count_bounded_patterns(args.n, sigma_bound(args.c)))
        return EXIT_OK
    if args.direction is None or args.infile is None:
        raise ParameterError("gt needs --count, or --direction with --in")
    with open(args.infile) as fh:
        data = json.load(fh)
    if args.direction == "to-pattern":
        f = WeightFunction.from_json(data)
        text = json.dumps(to_gt(f).to_json(), indent=2) + "\n"
    else:
        if args.n is None or args.c is None:
            raise ParameterError("gt --direction from-pattern needs --n and --c")
        g = build_supporting_graph(args.n)
        f = from_gt(g, GTPattern.from_json(data), args.c)
        text = json.dumps(f.to_json(), indent=2) + "\n"
    _write(args.out, text)
    return EXIT_OK


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    handlers = {
        "build": cmd_build,
        "verify": cmd_verify,
        "analyze": cmd_analyze,
        "gt": cmd_gt,
    }
    try:
        return handlers[args.command](args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphFormatError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InfeasibleError, ModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
