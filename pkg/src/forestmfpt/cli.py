"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 the forest and Meyer routes
disagree by more than ``--tol``.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .chain import digraph_of, load_chain
from .enumeration import DEFAULT_LIMIT, InForest, enumerate_in_forests
from .exceptions import ChainError
from .forests import Diagonal, MfptMatrix, TreeWeights, TwoTreeWeights, forest_analysis, mfpt_forest
from .group_inverse import meyer_analysis
from .simulation import estimate_mfpt

EXIT_OK, EXIT_INPUT, EXIT_DISCREPANCY = 0, 1, 2


@dataclass(frozen=True, eq=False)
class AnalysisBundle:
    pi: np.ndarray
    q: TreeWeights
    f: TwoTreeWeights | None
    m_forest: MfptMatrix
    m_meyer: MfptMatrix
    sigmas: np.ndarray
    max_route_discrepancy: float = field(init=False)

    def __post_init__(self):
        a = np.asarray(self.m_forest, dtype=float).copy()
        if self.m_forest.diagonal is Diagonal.ZERO:
            # compare like with like: Meyer's form is always recurrence-time
            np.fill_diagonal(a, self.q.sigma_tot / self.q.q)
        d = float(np.max(np.abs(a - self.m_meyer.m)))
        object.__setattr__(self, "max_route_discrepancy", d)

    @property
    def n(self) -> int:
        return len(self.pi)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "pi": self.pi.tolist(),
            "q": self.q.q.tolist(),
            "f": None if self.f is None else self.f.f.tolist(),
            "m_forest": self.m_forest.m.tolist(),
            "m_meyer": self.m_meyer.m.tolist(),
            "sigmas": self.sigmas.tolist(),
            "max_route_discrepancy": self.max_route_discrepancy,
            "diagonal": self.m_forest.diagonal.value,
        }


def analyze(t, diagonal: Diagonal | str = Diagonal.RECURRENCE) -> AnalysisBundle:
    """Run both routes on ``t`` and bundle the results.

    ``pi`` in the bundle comes from the forest route.
    """
    acc, tw, ttw, m_forest = forest_analysis(t, diagonal)
    _, _, m_meyer = meyer_analysis(t)
    return AnalysisBundle(tw.q_tilde, tw, ttw, m_forest, m_meyer, np.asarray(acc.sigmas))


def _fmt(x, precision):
    return f"{x:.{precision}g}"


def _vector(v, precision):
    return "  ".join(_fmt(x, precision) for x in v)


def _matrix(a, precision, indent="  "):
    cells = [[_fmt(x, precision) for x in row] for row in a]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(indent + "  ".join(c.rjust(width) for c in row) for row in cells)


def _render_analysis(b: AnalysisBundle, precision: int, both: bool) -> str:
    out = [f"states: {b.n}"]
    out.append("sigma_0..sigma_n: " + _vector(b.sigmas, precision))
    out.append("q (converging-tree weights): " + _vector(b.q.q, precision))
    out.append("q~ = pi (stationary distribution): " + _vector(b.pi, precision))
    if b.f is not None:
        out += ["f (2-tree in-forest weights):", _matrix(b.f.f, precision)]
    if both:
        rec = mfpt_forest(b.q, b.f, Diagonal.RECURRENCE)
        zero = mfpt_forest(b.q, b.f, Diagonal.ZERO)
        out += ["M (mean first passage times, diagonal = recurrence):", _matrix(rec.m, precision)]
        out += ["M (mean first passage times, diagonal = zero):", _matrix(zero.m, precision)]
    else:
        out += [f"M (mean first passage times, diagonal = {b.m_forest.diagonal.value}):",
                _matrix(b.m_forest.m, precision)]
    out.append(f"max |M_forest - M_meyer|: {b.max_route_discrepancy:.3e}")
    return "\n".join(out)


def _arc_text(f: InForest, precision):
    return ", ".join(f"{t + 1}->{h + 1} ({_fmt(w, precision)})" for (t, h), w in zip(f.arcs, f.arc_weights))


def forest_dot(f: InForest, name: str) -> str:
    """DOT digraph of one forest; roots get ``peripheries=2`` and arcs
    carry their weight (``repr``, so it parses back exactly)."""
    lines = [f"digraph {name} {{", f'  label="{name} weight={f.weight!r}";']
    for v in range(f.n):
        lines.append(f"  {v + 1} [peripheries=2];" if f.parent[v] < 0 else f"  {v + 1};")
    for (t, h), w in zip(f.arcs, f.arc_weights):
        lines.append(f'  {t + 1} -> {h + 1} [label="{w!r}"];')
    lines.append("}")
    return "\n".join(lines)


def cmd_validate(args) -> int:
    t = load_chain(args.chain)
    print(f"ok: irreducible chain with {t.n} states")
    return EXIT_OK


def cmd_analyze(args) -> int:
    t = load_chain(args.chain)
    diagonal = Diagonal.RECURRENCE if args.diagonal == "both" else Diagonal(args.diagonal)
    b = analyze(t, diagonal)
    if args.format == "json":
        print(json.dumps(b.to_json()))
    else:
        print(_render_analysis(b, args.precision, args.diagonal == "both"))
    if not b.max_route_discrepancy <= args.tol:
        print(f"error: forest and Meyer routes differ by {b.max_route_discrepancy:.3e} > tol {args.tol:g}",
              file=sys.stderr)
        return EXIT_DISCREPANCY
    return EXIT_OK


def cmd_forests(args) -> int:
    t = load_chain(args.chain)
    g = digraph_of(t)
    forests = enumerate_in_forests(g, args.k, limit=args.enum_limit)
    total = sum(f.weight for f in forests)
    if args.dot:
        print("\n\n".join(forest_dot(f, f"F{idx}") for idx, f in enumerate(forests, start=1)))
    elif args.format == "json":
        print(json.dumps({
            "n": g.n,
            "k": args.k,
            "forests": [{"arcs": [[a + 1, b + 1] for a, b in f.arcs],
                         "weights": list(f.arc_weights),
                         "roots": sorted(r + 1 for r in f.roots),
                         "weight": f.weight} for f in forests],
            "total_weight": total,
        }))
    else:
        print(f"{len(forests)} in-forests with {args.k} arcs on {g.n} vertices")
        for idx, f in enumerate(forests, start=1):
            roots = ",".join(str(r + 1) for r in sorted(f.roots))
            arcs = _arc_text(f, args.precision) or "(no arcs)"
            print(f"F{idx}: arcs {arcs}; roots {{{roots}}}; weight {_fmt(f.weight, args.precision)}")
        print(f"total weight: {_fmt(total, args.precision)}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    t = load_chain(args.chain)
    report = estimate_mfpt(t, args.trials, args.seed)
    m = forest_analysis(t)[3].m
    z = report.z_scores(m)
    if args.format == "json":
        print(json.dumps({"n": t.n, "trials": report.trials, "seed": report.seed,
                          "m_hat": report.m_hat.tolist(), "stderr": report.stderr.tolist(),
                          "m_analytic": m.tolist(), "z": z.tolist()}))
        return EXIT_OK
    p = args.precision
    print(f"trials per pair: {report.trials}, seed: {report.seed}")
    print("m_hat +- stderr:")
    for i in range(t.n):
        print("  " + "  ".join(f"{_fmt(report.m_hat[i, j], p)} +- {_fmt(report.stderr[i, j], p)}"
                              for j in range(t.n)))
    print("analytic M:")
    print(_matrix(m, p))
    print("z-scores:")
    print(_matrix(z, 3))
    print(f"max |z|: {np.max(np.abs(z)):.3f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("chain", help="chain-spec file (plain text or JSON)")
    common.add_argument("--precision", type=int, default=6, help="significant digits in text output")
    common.add_argument("--format", choices=["text", "json"], default="text")

    parser = argparse.ArgumentParser(
        prog="forestmfpt",
        description="Mean first passage times of ergodic Markov chains via spanning in-forests.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check that a chain is stochastic and irreducible")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", parents=[common], help="pi, tree weights and passage times by both routes")
    p.add_argument("--tol", type=float, default=1e-8, help="allowed forest/Meyer discrepancy")
    p.add_argument("--diagonal", choices=["recurrence", "zero", "both"], default="recurrence")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("forests", parents=[common], help="list the k-arc in-forests of the chain's digraph")
    p.add_argument("-k", type=int, required=True, help="number of arcs")
    p.add_argument("--dot", action="store_true", help="emit one DOT digraph per forest")
    p.add_argument("--enum-limit", type=int, default=DEFAULT_LIMIT)
    p.set_defaults(func=cmd_forests)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo passage times")
    p.add_argument("--trials", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ChainError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
