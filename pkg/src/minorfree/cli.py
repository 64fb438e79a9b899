"""Command-line interface.

Exit codes: 0 success, 1 benchmark check failed or invalid input,
2 infeasible or no-instance, 3 size or width cap exceeded, 4 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import baker, bench, dp, gnc, oracle
from . import io as gio
from .bipartite import PieceDecomposition, bip_weighted_is, bip_weighted_vc, hybrid_solve
from .graph import CapExceeded, two_coloring
from .treedec import (EXACT_TREEWIDTH_CAP, WidthCapExceeded, exact_treewidth, heuristic_decompose,
                      make_nice, to_json)

EXIT_OK, EXIT_FAILED, EXIT_INFEASIBLE, EXIT_CAP, EXIT_PARSE = 0, 1, 2, 3, 4


class _Infeasible(Exception):
    pass


def _load(args):
    if not args.input:
        raise gio.ParseError(None, "--input is required")
    return gio.parse_graph(args.input, args.format)


def _weights(args, g):
    return gio.read_weights(args.weights, g) if getattr(args, "weights", None) else None


def _emit(args, payload: dict, text: str):
    out = gio.dumps_json(payload) if args.json else text.rstrip("\n") + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def cmd_tw(args):
    g = _load(args)
    if args.exact:
        width, td = exact_treewidth(g)
    else:
        td = heuristic_decompose(g, args.strategy)
        width = td.width
    payload = dict(to_json(td, 0), width=width)
    _emit(args, payload, f"width {width}\nbags {len(td.bags)}")


def cmd_partition(args):
    g = _load(args)
    part = baker.baker_partition(g, args.t)
    classes = [sorted(c) for c in part.classes]
    text = "\n".join(f"class {i}: {' '.join(map(str, c))}" for i, c in enumerate(classes))
    _emit(args, {"t": args.t, "classes": classes, "levels": list(part.levels.level)}, text)


def _sides(g):
    tc = two_coloring(g)
    if tc.coloring is None:
        raise ValueError(f"graph is not bipartite (odd cycle {tc.odd_cycle})")
    return ([v for v in range(g.n) if tc.coloring[v] == 0], [v for v in range(g.n) if tc.coloring[v] == 1])


def cmd_solve(args):
    g = _load(args)
    w = _weights(args, g)
    p = args.problem
    if args.engine == "flow":
        if p not in ("is", "vc"):
            raise ValueError("the flow engine solves 'is' and 'vc' on bipartite graphs")
        sol = (bip_weighted_is if p == "is" else bip_weighted_vc)(g, _sides(g), w)
    elif args.engine == "oracle":
        res = oracle.oracle(p, g, w)
        sol = dp.DpSolution(p, res.value, res.certificate)
    else:
        td = heuristic_decompose(g, args.strategy)
        if td.width > args.width_cap:
            raise WidthCapExceeded(td.width, args.width_cap)
        ntd = make_nice(td)
        if p == "is":
            sol = dp.solve_wis(g, w, ntd)
        elif p == "vc":
            sol = dp.solve_wvc(g, w, ntd)
        elif p == "ds":
            sol = dp.solve_ds(g, ntd)
        elif p == "maxcut":
            sol = dp.solve_maxcut(g, w, ntd)
        else:
            sol = dp.chromatic_number(g, ntd)
    _emit(args, sol.to_json(), f"value {sol.value}\ncertificate {' '.join(map(str, sol.certificate))}")


def cmd_ptas(args):
    g = _load(args)
    w = _weights(args, g)
    cap = args.width_cap
    if args.problem == "is":
        sol, rep = baker.ptas_is(g, w, args.t, cap)
    elif args.problem == "maxcut":
        sol, rep = baker.ptas_maxcut(g, w, args.t, cap)
    elif args.problem == "ds":
        sol, rep = baker.ptas_domset(g, args.t, cap)
    else:
        colors, rep = baker.two_part_color(g, baker.decompose_two_parts(g), cap or 12)
        sol = dp.DpSolution("coloring", rep.value, colors)
    payload = {"solution": sol.to_json(), "report": rep.to_json()}
    _emit(args, payload, f"value {sol.value}\nshift {rep.shift}\nwidths {' '.join(map(str, rep.widths))}\n"
                         f"guarantee {rep.guarantee}")


def cmd_gnc(args):
    g = _load(args)
    decision, cert, rep = gnc.gnc_solve_vc(g, args.k, beta=args.beta, width_cap=args.width_cap)
    payload = {"decision": decision, "certificate": list(cert) if cert else None, "report": rep.to_json()}
    _emit(args, payload, f"decision {'yes' if decision else 'no'}\nregime {rep.regime}\nmethod {rep.method}\n"
                         f"kernel_vertices {rep.kernel_vertices}")
    if not decision:
        raise _Infeasible()


def cmd_oddminor(args):
    g = _load(args)
    try:
        pd = PieceDecomposition.from_json(gio.load_json(args.pieces))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise gio.ParseError(None, f"bad piece decomposition file: {exc}") from None
    sol = hybrid_solve(g, pd, args.problem, _weights(args, g), args.width_cap)
    _emit(args, sol.to_json(), f"value {sol.value}\ncertificate {' '.join(map(str, sol.certificate))}")


def cmd_oracle(args):
    g = _load(args)
    res = oracle.oracle(args.problem, g, _weights(args, g))
    _emit(args, {"problem": res.problem, "value": res.value, "certificate": list(res.certificate)},
          f"value {res.value}")


def cmd_bench(args):
    records = bench.bench_run(args.suite, args.seed)
    rows = [r.row(timing=args.timing) for r in records]
    failed = sum(not r.ok for r in records)
    if args.output:
        gio.write_report(args.output, rows)
    elif args.json:
        sys.stdout.write(gio.dumps_json(rows))
    else:
        sys.stdout.write(gio.format_csv(rows))
    sys.stderr.write(f"{args.suite}: {len(records)} records, {failed} failed\n")
    return EXIT_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="graph file")
    common.add_argument("--format", choices=gio.FORMATS, default="edgelist")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--json", action="store_true", help="emit JSON")

    parser = argparse.ArgumentParser(prog="minorfree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tw", parents=[common], help="tree decomposition and width")
    p.add_argument("--strategy", choices=("min-fill", "min-degree"), default="min-fill")
    p.add_argument("--exact", action="store_true", help=f"exact treewidth (n <= {EXACT_TREEWIDTH_CAP})")
    p.set_defaults(func=cmd_tw)

    p = sub.add_parser("partition", parents=[common], help="BFS layer classes mod t")
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("solve", parents=[common], help="exact solve")
    p.add_argument("--problem", choices=oracle.PROBLEMS, required=True)
    p.add_argument("--engine", choices=("dp", "flow", "oracle"), default="dp")
    p.add_argument("--strategy", choices=("min-fill", "min-degree"), default="min-fill")
    p.add_argument("--weights")
    p.add_argument("--width-cap", type=int, default=20)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("ptas", parents=[common], help="layer-based approximation")
    p.add_argument("--problem", choices=("is", "maxcut", "ds", "color"), required=True)
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--weights")
    p.add_argument("--width-cap", type=int)
    p.set_defaults(func=cmd_ptas)

    p = sub.add_parser("gnc", parents=[common], help="decide vertex cover of size <= k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--width-cap", type=int, default=25)
    p.set_defaults(func=cmd_gnc)

    p = sub.add_parser("oddminor", parents=[common], help="exact solve over a piece decomposition")
    p.add_argument("--pieces", required=True, help="piece decomposition JSON")
    p.add_argument("--problem", choices=("vc", "is"), default="vc")
    p.add_argument("--weights")
    p.add_argument("--width-cap", type=int, default=25)
    p.set_defaults(func=cmd_oddminor)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive reference solve")
    p.add_argument("--problem", choices=oracle.PROBLEMS, required=True)
    p.add_argument("--weights")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", parents=[common], help="run a benchmark suite")
    p.add_argument("--suite", choices=sorted(bench.SUITES), required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include wall times (output no longer reproducible)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except gio.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (dp.InfeasibleError, _Infeasible) as exc:
        if str(exc):
            print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
