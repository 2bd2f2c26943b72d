"""Command line interface.

Exit codes: 0 on success (and on a scan that finds no violations), 1 on
usage or input errors, 2 when a scan finds a bound violation.  Graphs are
read from arc-list files, or from stdin when the path is `-`, so generator
output can be piped straight into the bound commands.
"""

from __future__ import annotations

import argparse
import sys

from .circular import BlockStructure, CircularOrder, circular_feedback, generate
from .decompose import theorem1_feedback
from .digraph import (
    Digraph,
    FeedbackCertificate,
    format_edge_list,
    gamma,
    parse_edge_list,
    read_edge_list,
    verify_feedback_set,
)
from .errors import TrifreeError
from .exact import beta_exact
from .harness import conjecture_scan
from .two_cliques import two_cliques_feedback


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage by default; 2 is reserved for
    # scan violations here, so usage errors must come back as 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}")


def _load(path: str) -> Digraph:
    if path == "-":
        return parse_edge_list(sys.stdin.read())
    return read_edge_list(path)


def _print_certificate(G: Digraph, cert: FeedbackCertificate) -> None:
    # independent re-check before anything is written out
    assert verify_feedback_set(G, cert.arcs)
    print(f"algorithm {cert.algorithm}")
    print(f"bound_kind {cert.bound_kind}")
    print(f"bound_value {cert.bound_value}")
    print(f"arcs {cert.size}")
    for u, v in cert.arcs:
        print(f"arc {u} {v}")
    print("verified true")


def _cmd_beta(args) -> int:
    G = _load(args.file)
    result = beta_exact(G)
    print(f"beta {result.beta}")
    print("order", *result.elimination_order)
    for u, v in result.witness:
        print(f"arc {u} {v}")
    return 0


def _cmd_gamma(args) -> int:
    G = _load(args.file)
    report = gamma(G)
    print(f"gamma {report.gamma}")
    for u, v in report.pairs:
        print(f"pair {u} {v}")
    return 0


def _cmd_bound_thm1(args) -> int:
    G = _load(args.file)
    _print_certificate(G, theorem1_feedback(G))
    return 0


def _cmd_bound_twoclique(args) -> int:
    G = _load(args.file)
    M = _int_list(args.m)
    N = _int_list(args.n)
    _print_certificate(G, two_cliques_feedback(G, M, N))
    return 0


def _cmd_bound_circular(args) -> int:
    G = _load(args.file)
    order = CircularOrder(tuple(_int_list(args.order)))
    _print_certificate(G, circular_feedback(G, order))
    return 0


def _emit_generated(G: Digraph, order: CircularOrder) -> None:
    print("# order", *order.order)
    sys.stdout.write(format_edge_list(G))


def _cmd_gen_extremal(args) -> int:
    if args.n < 0:
        raise ValueError("--n must be nonnegative")
    G, order = generate(BlockStructure(t=1, sizes=(args.n,) * 4))
    _emit_generated(G, order)
    return 0


def _cmd_gen_circular(args) -> int:
    sizes = tuple(_int_list(args.blocks))
    t = max(1, (len(sizes) - 1) // 3)
    G, order = generate(BlockStructure(t=t, sizes=sizes))
    _emit_generated(G, order)
    return 0


def _cmd_scan(args) -> int:
    mode = "random" if args.random else "exhaustive"
    report = conjecture_scan(
        args.nmax,
        mode=mode,
        budget=args.budget,
        seed=args.seed,
        workers=args.workers,
    )
    print(f"RESULT mode {report.mode}")
    print(f"RESULT n_max {report.n}")
    print(f"RESULT instances {report.instances_checked}")
    for n in sorted(report.per_n):
        print(f"RESULT instances_n {n} {report.per_n[n]}")
    print(f"RESULT max_beta_minus_half_gamma {report.max_beta_minus_half_gamma}")
    print(f"RESULT complete {'true' if report.complete else 'false'}")
    print(f"RESULT violations {len(report.violations)}")
    for vio in report.violations:
        arcs = " ".join(f"{u}->{v}" for u, v in vio.graph.arcs)
        print(
            f"VIOLATION {vio.kind} n={vio.graph.n} beta={vio.beta} "
            f"gamma={vio.gamma} arcs={arcs}"
        )
    return 2 if report.violations else 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="trifree", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_beta = sub.add_parser("beta", help="exact minimum deletion number")
    p_beta.add_argument("file", help="arc-list file, or - for stdin")
    p_beta.set_defaults(func=_cmd_beta)

    p_gamma = sub.add_parser("gamma", help="nonadjacent pair count")
    p_gamma.add_argument("file", help="arc-list file, or - for stdin")
    p_gamma.set_defaults(func=_cmd_gamma)

    p_bound = sub.add_parser("bound", help="constructive feedback certificates")
    bound_sub = p_bound.add_subparsers(dest="bound_kind", required=True)

    p_thm1 = bound_sub.add_parser("thm1", help="pivot decomposition, size <= gamma")
    p_thm1.add_argument("file")
    p_thm1.set_defaults(func=_cmd_bound_thm1)

    p_tc = bound_sub.add_parser("twoclique", help="cover bound, size <= gamma/2")
    p_tc.add_argument("file")
    p_tc.add_argument("--m", required=True, help="comma-separated vertices of side M")
    p_tc.add_argument("--n", required=True, help="comma-separated vertices of side N")
    p_tc.set_defaults(func=_cmd_bound_twoclique)

    p_circ = bound_sub.add_parser("circular", help="cut bound, size <= gamma/2")
    p_circ.add_argument("file")
    p_circ.add_argument(
        "--order", required=True, help="comma-separated circular vertex order"
    )
    p_circ.set_defaults(func=_cmd_bound_circular)

    p_gen = sub.add_parser("gen", help="generate structured instances")
    gen_sub = p_gen.add_subparsers(dest="gen_kind", required=True)

    p_ext = gen_sub.add_parser("extremal", help="four equal blocks of size n")
    p_ext.add_argument("--n", type=int, required=True)
    p_ext.set_defaults(func=_cmd_gen_extremal)

    p_gc = gen_sub.add_parser("circular", help="block circle, 3t+1 sizes")
    p_gc.add_argument("--blocks", required=True, help="comma-separated block sizes")
    p_gc.set_defaults(func=_cmd_gen_circular)

    p_scan = sub.add_parser("scan", help="search for bound violations")
    p_scan.add_argument("--nmax", type=int, required=True)
    p_scan.add_argument("--random", action="store_true", help="sample instead of enumerating")
    p_scan.add_argument("--seed", type=int, default=0)
    p_scan.add_argument("--budget", type=int, default=None, help="instance cap")
    p_scan.add_argument("--workers", type=int, default=1)
    p_scan.set_defaults(func=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except (TrifreeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
