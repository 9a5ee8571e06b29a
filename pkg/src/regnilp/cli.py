"""Command-line verification suites.

``regnilp verify <suite>`` runs a named battery over a parameter grid and
emits one check line per verified identity, plus an optional structured JSON
report.  Exit status: 0 all checks pass, 1 at least one failure, 2 usage
errors.  Skips (budget guards, advisory runs at bad primes) do not affect the
exit status unless ``--strict`` is given.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dc_field
from random import Random

from .centralizers import regular_report
from .families import center_scheme_report, gl_family, nonsmooth_center_report
from .fields import GF, QQ
from .flags import FlagBudgetExceeded, count_complete_flags, flags_preserved
from .gln import JordanType, center_smoothness_report, jordan_nilpotent, partitions
from .ptangent import affine_chart_weights, ptangent_weights
from .rootsystems import (
    PrimeClass,
    build_root_system,
    classify_prime,
    coxeter_spectrum_check,
    exponents_by_height,
    weyl_group_order,
)
from .springer import (
    SpringerCoeffs,
    curve_tangent,
    equivariance_check,
    product_tangent_scalars,
    regular_locus_check,
    springer_apply,
    springer_invert,
    tangent_matrix_at_zero,
)
from .linalg import DenseMatrix
from . import springer as springer_mod

SUITES = ("exponents", "regular", "springer", "theorem-a", "nonsmooth", "flags", "ptangent", "all")

EXPONENT_GRID = (
    [("A", r) for r in range(1, 8)]
    + [("B", r) for r in (2, 3, 4)]
    + [("C", r) for r in (3, 4)]
    + [("D", r) for r in (4, 5)]
    + [("G", 2), ("F", 4)]
)
REGULAR_GRID = (
    [("A", r) for r in range(1, 6)]
    + [("B", r) for r in (2, 3, 4)]
    + [("C", 3), ("D", 4), ("G", 2), ("F", 4)]
)
E_TYPES = [("E", 6), ("E", 7), ("E", 8)]
DEFAULT_PRIMES = (5, 7, 11, 13)


@dataclass
class Check:
    name: str
    expected: object
    actual: object
    verdict: str  # pass | fail | skip

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "actual": self.actual,
            "verdict": self.verdict,
        }


@dataclass
class Case:
    parameters: dict
    checks: list = dc_field(default_factory=list)

    def add(self, name, expected, actual, *, advisory: bool = False) -> None:
        ok = expected == actual
        verdict = "pass" if ok else ("skip" if advisory else "fail")
        self.checks.append(Check(name, _jsonable(expected), _jsonable(actual), verdict))

    def skip(self, name, expected, reason) -> None:
        self.checks.append(Check(name, _jsonable(expected), reason, "skip"))

    def to_dict(self) -> dict:
        return {"parameters": self.parameters, "checks": [c.to_dict() for c in self.checks]}


@dataclass
class SuiteReport:
    suite: str
    cases: list
    summary: dict
    wall_time: float

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "cases": [c.to_dict() for c in self.cases],
            "summary": self.summary,
            "wall_time": self.wall_time,
        }


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in sorted(v.items())}
    return v


def _summarize(cases) -> dict:
    summary = {"pass": 0, "fail": 0, "skip": 0}
    for case in cases:
        for check in case.checks:
            summary[check.verdict] += 1
    return summary


# -- suites --------------------------------------------------------------------


def _grid(args, base) -> list:
    grid = list(base)
    if args.include_e_types:
        grid += E_TYPES
    if args.type:
        kind = args.type[0].upper()
        fused_rank = int(args.type[1:]) if len(args.type) > 1 else None
        grid = [(k, r) for k, r in grid if k == kind] or [(kind, fused_rank or args.rank)]
        if fused_rank is not None:
            grid = [(kind, fused_rank)]
    if args.rank and (not args.type or len(args.type) == 1):
        grid = [(k, r) for k, r in grid if r == args.rank]
    return grid


def suite_exponents(args) -> list:
    cases = []
    for kind, rank in _grid(args, EXPONENT_GRID):
        rs = build_root_system(kind, rank)
        data = exponents_by_height(rs)
        case = Case({"type": f"{kind}{rank}"})
        case.add("spectrum_matches_exponents", True, coxeter_spectrum_check(rs, args.tol))
        h = data.coxeter_number
        case.add(
            "exponent_symmetry",
            tuple(h for _ in data.exponents),
            tuple(a + b for a, b in zip(data.exponents, reversed(data.exponents))),
        )
        case.add(
            "exponent_sum_rule",
            rank + 2 * rs.num_positive,
            rank + 2 * sum(data.exponents),
        )
        if rank <= 4:
            prod = 1
            for d in data.degrees:
                prod *= d
            case.add("degree_product_is_weyl_order", weyl_group_order(rs), prod)
        else:
            case.skip("degree_product_is_weyl_order", None, "explicit enumeration limited to rank <= 4")
        cases.append(case)
    return cases


def suite_regular(args) -> list:
    cases = []
    primes = args.prime or list(DEFAULT_PRIMES)
    for kind, rank in _grid(args, REGULAR_GRID):
        for p in primes:
            cls = classify_prime(kind, rank, p)
            advisory = cls is not PrimeClass.VERY_GOOD
            if advisory and not (args.prime or args.type):
                continue  # default grid sticks to very good primes
            rep = regular_report(kind, rank, p)
            case = Case({"type": f"{kind}{rank}", "prime": p, "prime_class": cls.value})
            r = rank
            exps = rep.expected_exponents
            add = lambda name, want, got: case.add(name, want, got, advisory=advisory)
            add("centralizer_dim", r, rep.dim_c)
            add("ker_ad_square_dim", 2 * r, rep.dim_ker_ad2)
            add("normalizer_dim", 2 * r + rep.dim_lie_center, rep.dim_n)
            add("centralizer_weights", tuple(sorted(2 * k for k in exps)), rep.weights_c)
            add(
                "quotient_weights",
                tuple(sorted([0] + [2 * k - 2 for k in exps[1:]])),
                rep.weights_n_mod_c,
            )
            add("weight_two_multiplicity", 1, rep.weights_c.count(2))
            add("normalizer_weights_positive", True, all(w > 0 for w in rep.weights_n if w != 0))
            add("normalizer_zero_weight_dim", 1 + rep.dim_lie_center, rep.weights_n.count(0))
            add("centralizer_abelian", True, rep.centralizer_abelian)
            add("x_in_centralizer", True, rep.x_in_centralizer)
            add("x_spans_weight_two", True, rep.x_spans_weight_two)
            add("containment_chain", True, rep.containment_chain)
            cases.append(case)
    return cases


def suite_springer(args) -> list:
    cases = []
    sizes = [args.n] if args.n else [2, 3, 4, 5, 6]
    primes = args.prime or [5, 7, 13]
    draws = 50
    for n in sizes:
        for p in primes:
            field = GF(p)
            rng = Random(args.seed)
            x = jordan_nilpotent(JordanType((n,)), field)
            case = Case({"n": n, "prime": p})
            if args.coeffs:
                coeff_draws = [[field.coerce(int(v)) for v in args.coeffs.split(",")]]
            else:
                coeff_draws = []
                for _ in range(draws):
                    raw = [field.rand(rng) for _ in range(n - 1)]
                    if raw[0] == 0:
                        raw[0] = field.one()
                    coeff_draws.append(raw)
            tangent_ok = curve_ok = True
            for raw in coeff_draws:
                c = SpringerCoeffs.from_raw(field, raw)
                a1 = raw[0]
                want = DenseMatrix.identity(field, n - 1).scale(a1)
                if tangent_matrix_at_zero(c, x) != want:
                    tangent_ok = False
                if curve_tangent(c, x) != x.scale(a1):
                    curve_ok = False
            case.add("tangent_at_zero_is_a1_identity", True, tangent_ok)
            case.add("curve_tangent_is_a1_x", True, curve_ok)
            c0 = SpringerCoeffs.from_raw(field, [field.one()] + [field.rand(rng) for _ in range(n - 2)])
            round_ok = True
            for _ in range(10):
                y = springer_mod.random_nilpotent(field, n, rng)
                if springer_invert(c0, springer_apply(c0, y)) != y:
                    round_ok = False
            case.add("round_trip", True, round_ok)
            case.add("equivariance", True, equivariance_check(c0, 10, n, field, seed=args.seed))
            rep = product_tangent_scalars(n, max(n - 1, 2), 1, 2, field)
            case.add("product_distinct_scalars", False, rep.is_scalar_multiple)
            rep_eq = product_tangent_scalars(n, max(n - 1, 2), 2, 2, field)
            case.add("product_equal_scalars", True, rep_eq.is_scalar_multiple)
            case.add("regular_locus", True, regular_locus_check(n, field, 30, seed=args.seed))
            cases.append(case)
    return cases


def suite_theorem_a(args) -> list:
    cases = []
    sizes = [args.n] if args.n else [1, 2, 3, 4, 5]
    fields = [GF(p) for p in (args.prime or [5, 7])] + [QQ]
    for n in sizes:
        for jt in partitions(n):
            for field in fields:
                rep = center_smoothness_report(jt, field)
                case = Case({
                    "partition": list(jt.parts),
                    "characteristic": field.p,
                })
                case.add("center_smooth", rep.dim_algebra_center, rep.dim_lie_center_generic)
                case.add("center_dim_is_min_poly_degree", rep.min_poly_degree, rep.dim_algebra_center)
                case.add("contains_x", True, rep.contains_x)
                cases.append(case)
    return cases


def suite_nonsmooth(args) -> list:
    cases = []
    for p in args.prime or [2, 3, 5]:
        rep = nonsmooth_center_report(p)
        case = Case({"family": rep.family, "prime": p})
        case.add("dim_lie_center", 1, rep.dim_lie_center)
        case.add("dim_reduced_center", 0, rep.dim_reduced_center)
        case.add("smooth", False, rep.smooth)
        foil = center_scheme_report(gl_family(2, GF(p)))
        case.add("gl2_foil_smooth", True, foil.smooth)
        cases.append(case)
    return cases


def suite_flags(args) -> list:
    cases = []
    grid = [(args.n, args.prime[0])] if (args.n and args.prime) else [(3, 2), (3, 3), (4, 2)]
    for n, q in grid:
        field = GF(q)
        case = Case({"n": n, "q": q})
        try:
            reg = flags_preserved(jordan_nilpotent(JordanType((n,)), field), q)
            case.add("regular_flag_count", 1, reg)
            zero = flags_preserved(jordan_nilpotent(JordanType(tuple([1] * n)), field), q)
            case.add("zero_flag_count", count_complete_flags(n, q), zero)
            if n >= 3:
                mid = flags_preserved(jordan_nilpotent(JordanType((2,) + (1,) * (n - 2)), field), q)
                case.add("subregular_strictly_between", True, 1 < mid < count_complete_flags(n, q))
        except FlagBudgetExceeded as exc:
            case.skip("regular_flag_count", 1, str(exc))
        cases.append(case)
    return cases


def suite_ptangent(args) -> list:
    rng = Random(args.seed)
    agree = 0
    total = 100
    for _ in range(total):
        dim = rng.randint(1, 3)
        chars = set()
        while len(chars) < rng.randint(1, 5):
            chars.add(tuple(rng.randint(-5, 5) for _ in range(dim)))
        weights = [(c, rng.randint(1, 3)) for c in sorted(chars)]
        chosen = rng.randrange(len(weights))
        if ptangent_weights(weights, chosen) == affine_chart_weights(weights, chosen):
            agree += 1
    case = Case({"configurations": total, "seed": args.seed})
    case.add("matches_chart_oracle", total, agree)
    case.add(
        "single_weight_block",
        {(0, 0): 2},
        ptangent_weights([((3, 1), 3)], 0),
    )
    case.add(
        "two_lines",
        {(3,): 1},
        ptangent_weights([((2,), 1), ((5,), 1)], 0),
    )
    return [case]


SUITE_RUNNERS = {
    "exponents": suite_exponents,
    "regular": suite_regular,
    "springer": suite_springer,
    "theorem-a": suite_theorem_a,
    "nonsmooth": suite_nonsmooth,
    "flags": suite_flags,
    "ptangent": suite_ptangent,
}


def run_suite(name: str, args) -> SuiteReport:
    start = time.perf_counter()
    if name == "all":
        cases = []
        for sub in SUITE_RUNNERS:
            cases.extend(SUITE_RUNNERS[sub](args))
    else:
        cases = SUITE_RUNNERS[name](args)
    wall = time.perf_counter() - start
    return SuiteReport(name, cases, _summarize(cases), round(wall, 3))


def _render_text(report: SuiteReport, out) -> None:
    for case in report.cases:
        params = " ".join(f"{k}={v}" for k, v in case.parameters.items())
        for check in case.checks:
            print(
                f"{check.verdict.upper():4} [{report.suite}] {params}: {check.name} "
                f"expected={check.expected} actual={check.actual}",
                file=out,
            )
    s = report.summary
    print(
        f"suite {report.suite}: {s['pass']} pass, {s['fail']} fail, {s['skip']} skip "
        f"({report.wall_time}s)",
        file=out,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regnilp",
        description="Exact verification suites for regular nilpotent centralizer structure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run a named verification suite")
    verify.add_argument("suite", choices=SUITES)
    verify.add_argument("--type", help="root system type, e.g. A or G2")
    verify.add_argument("--rank", type=int)
    verify.add_argument("--prime", type=int, action="append", help="repeatable prime filter")
    verify.add_argument("--n", type=int, help="matrix size (springer, theorem-a, flags)")
    verify.add_argument("--coeffs", help="comma-separated series coefficients")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--json", dest="json_path", help="write the structured report here")
    verify.add_argument("--include-e-types", action="store_true")
    verify.add_argument("--tol", type=float, default=1e-8, help="spectrum tolerance")
    verify.add_argument("--strict", action="store_true", help="skips also fail the run")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run_suite(args.suite, args)
    except (ValueError, KeyError) as exc:
        parser.error(str(exc))  # exits 2
    _render_text(report, sys.stdout)
    if args.json_path:
        with open(args.json_path, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2)
            fh.write("\n")
    failures = report.summary["fail"] + (report.summary["skip"] if args.strict else 0)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
