"""Command-line surface.

Subcommands: eval, gind, extract, probe-minimality, chain, verify.  Exit
codes: 0 success, 1 mathematical failure with witness, 2 usage or document
error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import formats
from .budget import OptBudget, default_budget
from .core import RandomStream
from .errors import NonConvergenceError, NormlabError
from .extraction import extract_pair, minimality_probe
from .gind import GIndPair, chain_compare, gind_eval
from .matrix_norms import mnorm_eval
from .vector_norms import Lp, Scaled, vnorm_eval
from .verification import (
    paper_demo_suite,
    verify_lemma21,
    verify_lemma22,
    verify_theorem23,
)

_SHORTHAND = {
    "sigma": '{"kind": "sigma"}',
    "entrywise-max": '{"kind": "entrywise-max"}',
    "maxcolsum": '{"kind": "maxcolsum"}',
    "maxrowsum": '{"kind": "maxrowsum"}',
    "spectral": '{"kind": "spectral"}',
    "maxcr": '{"kind": "maxof", "inner": [{"kind": "maxcolsum"}, {"kind": "maxrowsum"}]}',
    "l1": '{"kind": "lp", "p": 1}',
    "l2": '{"kind": "lp", "p": 2}',
    "linf": '{"kind": "lp", "p": "inf"}',
}


def _resolve_norm(text: str):
    """Shorthand name, inline JSON, or @file containing JSON."""
    if text in _SHORTHAND:
        text = _SHORTHAND[text]
    elif text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            text = fh.read()
    return formats.parse_norm_spec(text)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--dim", type=int, default=2, help="matrix dimension n (default 2)")
    sub.add_argument("--seed", type=int, default=0, help="root random seed (default 0)")
    sub.add_argument("--report", metavar="PATH", help="write a JSON report document")
    sub.add_argument("--budget-multistarts", type=int, default=None)
    sub.add_argument("--budget-max-iters", type=int, default=None)
    sub.add_argument("--budget-samples", type=int, default=None)
    sub.add_argument("--budget-step-init", type=float, default=None)
    sub.add_argument("--budget-tol", type=float, default=None)


def _budget_from(args, base: OptBudget | None = None) -> OptBudget:
    base = base or default_budget(args.dim, args.seed)
    return OptBudget(
        multistarts=args.budget_multistarts or base.multistarts,
        max_iters=args.budget_max_iters or base.max_iters,
        samples=args.budget_samples or base.samples,
        step_init=args.budget_step_init or base.step_init,
        tol=args.budget_tol or base.tol,
        seed=args.seed,
    )


def _explicit_budget(args) -> OptBudget | None:
    """The CLI budget only when the user set at least one --budget-* flag."""
    given = any(
        value is not None
        for value in (
            args.budget_multistarts,
            args.budget_max_iters,
            args.budget_samples,
            args.budget_step_init,
            args.budget_tol,
        )
    )
    return _budget_from(args) if given else None


def _header(args, budget: OptBudget) -> dict:
    return {
        "dim": args.dim,
        "seed": args.seed,
        "budget": formats.budget_to_doc(budget),
    }


def _describe(budget: OptBudget | None) -> str:
    if budget is None:
        return "suite defaults (override with --budget-*)"
    return (
        f"multistarts={budget.multistarts} max_iters={budget.max_iters} "
        f"samples={budget.samples} step_init={budget.step_init} tol={budget.tol}"
    )


def _print_header(command: str, args, budget: OptBudget | None) -> None:
    print(
        f"normlab {command} | dim={args.dim} seed={args.seed} "
        f"budget: {_describe(budget)}"
    )


def _write_report(args, doc: dict) -> None:
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(formats.dumps_report(doc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normlab",
        description="Numerical laboratory for matrix norms on n x n complex matrices.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("eval", help="evaluate a matrix norm on a matrix file")
    p.add_argument("--norm", required=True, help="norm spec (name, JSON, or @file)")
    p.add_argument("--matrix", required=True, help="CSV or JSON matrix file")
    p.add_argument("--eig-max-iter", type=int, default=10000)
    _add_common(p)

    p = subs.add_parser("gind", help="generalized induced norm of a matrix")
    p.add_argument("--norm1", required=True, help="domain vector norm")
    p.add_argument("--norm2", required=True, help="codomain vector norm")
    p.add_argument("--matrix", required=True)
    _add_common(p)

    p = subs.add_parser("chain", help="the four mixed operator norms of a pair")
    p.add_argument("--norm1", required=True)
    p.add_argument("--norm2", required=True)
    p.add_argument("--matrix", required=True)
    _add_common(p)

    p = subs.add_parser("extract", help="recover the vector-norm pair of a matrix norm")
    p.add_argument("--norm", required=True)
    _add_common(p)

    p = subs.add_parser("probe-minimality", help="search for a reconstruction gap")
    p.add_argument("--norm", required=True)
    p.add_argument("--trials", type=int, default=100)
    _add_common(p)

    p = subs.add_parser("verify", help="run a property suite")
    p.add_argument(
        "--suite",
        required=True,
        choices=["lemma21", "lemma22", "theorem23", "paper-demos"],
    )
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--norm", default="spectral", help="source norm for theorem23")
    p.add_argument("--norm1", default=None, help="pair A domain norm")
    p.add_argument("--norm2", default=None, help="pair A codomain norm")
    p.add_argument("--norm3", default=None, help="pair B domain norm (lemma22)")
    p.add_argument("--norm4", default=None, help="pair B codomain norm (lemma22)")
    _add_common(p)

    return parser


def _cmd_eval(args) -> int:
    budget = _budget_from(args)
    spec = _resolve_norm(args.norm)
    matrix = formats.load_matrix(args.matrix)
    args.dim = matrix.shape[0]
    _print_header("eval", args, budget)
    value = mnorm_eval(spec, matrix, budget, eig_max_iter=args.eig_max_iter)
    print(f"norm value: {value:.10g}")
    _write_report(
        args,
        {
            "schema_version": formats.SCHEMA_VERSION,
            "kind": "norm-value",
            "norm": formats.norm_spec_to_doc(spec),
            "value": value,
            "settings": _header(args, budget),
        },
    )
    return 0


def _cmd_gind(args) -> int:
    budget = _budget_from(args)
    pair = GIndPair(_resolve_norm(args.norm1), _resolve_norm(args.norm2))
    matrix = formats.load_matrix(args.matrix)
    args.dim = matrix.shape[0]
    _print_header("gind", args, budget)
    result = gind_eval(pair, matrix, budget)
    print(f"value: {result.value:.10g}  exactness: {result.exactness}  evaluations: {result.evaluations}")
    doc = formats.computation_to_doc(result, _header(args, budget))
    doc["norm1"] = formats.norm_spec_to_doc(pair.norm1)
    doc["norm2"] = formats.norm_spec_to_doc(pair.norm2)
    _write_report(args, doc)
    return 0


def _cmd_chain(args) -> int:
    budget = _budget_from(args)
    pair = GIndPair(_resolve_norm(args.norm1), _resolve_norm(args.norm2))
    matrix = formats.load_matrix(args.matrix)
    args.dim = matrix.shape[0]
    _print_header("chain", args, budget)
    report = chain_compare(pair, matrix, budget)
    print(f"v21={report.v21:.10g} v11={report.v11:.10g} v22={report.v22:.10g} v12={report.v12:.10g}")
    print(f"chain holds: {report.chain_holds} (slack {report.slack:.3e})")
    _write_report(args, formats.chain_to_doc(report, _header(args, budget)))
    return 0


def _cmd_extract(args) -> int:
    source = _resolve_norm(args.norm)
    inner = _explicit_budget(args) or OptBudget(
        multistarts=2, max_iters=40, samples=6, step_init=0.5, tol=1e-8,
        seed=args.seed,
    )
    _print_header("extract", args, inner)
    n = args.dim
    pair = extract_pair(source, inner)
    probes = [np.eye(n, dtype=np.complex128)[0], np.ones(n, dtype=np.complex128),
              np.arange(1, n + 1).astype(np.complex128)]
    labels = ["e1", "ones", "ramp"]
    rows = []
    print(f"{'point':>6s} {'norm1 (sup form)':>18s} {'norm2 (column form)':>20s}")
    for label, x in zip(labels, probes):
        v1 = vnorm_eval(pair.norm1, x)
        v2 = vnorm_eval(pair.norm2, x)
        rows.append({"point": label, "norm1": v1, "norm2": v2})
        print(f"{label:>6s} {v1:18.10g} {v2:20.10g}")
    _write_report(
        args,
        {
            "schema_version": formats.SCHEMA_VERSION,
            "kind": "extraction",
            "source": formats.norm_spec_to_doc(source),
            "norm1": formats.norm_spec_to_doc(pair.norm1),
            "norm2": formats.norm_spec_to_doc(pair.norm2),
            "evaluations": rows,
            "settings": _header(args, inner),
        },
    )
    return 0


def _cmd_probe(args) -> int:
    source = _resolve_norm(args.norm)
    # moderate default: the probe nests a full extraction inside each trial
    outer = _explicit_budget(args) or OptBudget(
        multistarts=2, max_iters=120, samples=6, step_init=0.5, tol=1e-8,
        seed=args.seed,
    )
    _print_header("probe-minimality", args, outer)
    report = minimality_probe(
        source, args.dim, args.trials, outer, RandomStream(args.seed)
    )
    print(f"verdict: {report.verdict}  min ratio: {report.max_gap_ratio:.6f}  matrices tested: {report.trials}")
    if report.witness is not None:
        print("witness:")
        for row in report.witness:
            print("  " + "  ".join(f"{z.real:+.4f}{z.imag:+.4f}i" for z in row))
    _write_report(args, formats.probe_to_doc(report, _header(args, outer)))
    return 0


def _cmd_verify(args) -> int:
    budget = _explicit_budget(args)
    _print_header(f"verify {args.suite}", args, budget)
    rng = RandomStream(args.seed)
    if args.suite == "paper-demos":
        report = paper_demo_suite(args.seed)
    elif args.suite == "lemma21":
        pair = GIndPair(
            _resolve_norm(args.norm1) if args.norm1 else Lp(float("inf")),
            _resolve_norm(args.norm2) if args.norm2 else Lp(1.0),
        )
        report = verify_lemma21(pair, args.dim, args.trials, rng, budget)
    elif args.suite == "lemma22":
        pair_a = GIndPair(
            _resolve_norm(args.norm1) if args.norm1 else Scaled(3.0, Lp(float("inf"))),
            _resolve_norm(args.norm2) if args.norm2 else Scaled(6.0, Lp(2.0)),
        )
        pair_b = GIndPair(
            _resolve_norm(args.norm3) if args.norm3 else Lp(float("inf")),
            _resolve_norm(args.norm4) if args.norm4 else Scaled(2.0, Lp(2.0)),
        )
        report = verify_lemma22(pair_a, pair_b, args.dim, args.trials, rng, budget)
    else:
        source = _resolve_norm(args.norm)
        report = verify_theorem23(
            source, args.dim, min(args.trials, 60), budget, rng=rng
        )

    for case in report.cases:
        shown = ", ".join(f"{k}={v:.6g}" for k, v in sorted(case.values.items()))
        print(f"[{case.status:>12s}] {case.description}" + (f" ({shown})" if shown else ""))
    print(f"suite {report.suite_name}: {'PASS' if report.passed else 'FAIL'} "
          f"({len(report.cases)} cases, {report.elapsed:.2f}s)")
    settings = {"dim": args.dim, "seed": args.seed}
    if budget is not None:
        settings["budget"] = formats.budget_to_doc(budget)
    _write_report(args, formats.suite_report_to_doc(report, settings))
    return 0 if report.passed else 1


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "gind":
            return _cmd_gind(args)
        if args.command == "chain":
            return _cmd_chain(args)
        if args.command == "extract":
            return _cmd_extract(args)
        if args.command == "probe-minimality":
            return _cmd_probe(args)
        if args.command == "verify":
            return _cmd_verify(args)
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NormlabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
