"""Cross-module verification suites and structure extraction.

The Boolean-structure report tests whether every triangle move [c,a,b,c] with
c collinear to {a,b} collapses to the identity; when it does, the closures of
pairs carry Steiner quadruple systems with trivial hole stabilizers and the
closures themselves form a 2-(n, 2lam+2, 1) design.  The named suites bundle
the acceptance-level checks so they can be run from the command line.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from . import codes, f2, groupoid
from .design import (
    Design,
    build_affine_design,
    build_boolean,
    build_p3,
    build_sp_design,
    are_isomorphic,
    require_valid,
    search_designs,
    validate,
)
from .errors import InvalidInputError
from .perm import Permutation


@dataclass(frozen=True)
class BooleanStructureReport:
    hypothesis_met: bool
    witness: tuple[int, int, int] | None
    alpha: int | None
    subdesign_checks: list[tuple[tuple[int, int], bool, bool]]
    lambda_design_ok: bool | None


def boolean_structure(d: Design) -> BooleanStructureReport:
    """Test the triangle-collapse hypothesis and extract the closure geometry."""
    report = require_valid(d)
    lam = report.lam
    assert lam is not None

    for a, b in itertools.combinations(range(d.n), 2):
        for c in sorted(d.closure(a, b) - {a, b}):
            g = groupoid.move_sequence(d, [c, a, b, c])
            if not g.is_identity():
                return BooleanStructureReport(False, (c, a, b), None, [], None)

    alpha = (lam + 1).bit_length() - 1 if (lam + 1) & lam == 0 else None

    closures: dict[frozenset[int], tuple[int, int]] = {}
    for a, b in itertools.combinations(range(d.n), 2):
        closures.setdefault(d.closure(a, b), (a, b))

    subdesign_checks = []
    for closure, pair in sorted(closures.items(), key=lambda kv: kv[1]):
        pts = sorted(closure)
        reindex = {p: i for i, p in enumerate(pts)}
        inner_blocks = [
            tuple(sorted(reindex[x] for x in blk))
            for blk in d.blocks
            if set(blk) <= closure
        ]
        sub = Design(len(pts), inner_blocks, name=f"{d.name}-closure{pair}")
        is_sqs = _is_steiner_quadruple_system(sub)
        is_boolean = is_sqs and groupoid.hole_stabilizer(sub, 0).order() == 1
        subdesign_checks.append((pair, is_sqs, is_boolean))

    lambda_ok = None
    if alpha is not None:
        size = 1 << (alpha + 1)
        lambda_ok = all(len(c) == size for c in closures)
        if lambda_ok:
            pair_cover: dict[tuple[int, int], int] = {}
            for c in closures:
                for p in itertools.combinations(sorted(c), 2):
                    pair_cover[p] = pair_cover.get(p, 0) + 1
            lambda_ok = all(
                pair_cover.get(p, 0) == 1
                for p in itertools.combinations(range(d.n), 2)
            )
    return BooleanStructureReport(True, None, alpha, subdesign_checks, lambda_ok)


def _is_steiner_quadruple_system(d: Design) -> bool:
    """Every 3-subset of points on exactly one block."""
    seen: set[tuple[int, int, int]] = set()
    for block in d.blocks:
        for t in itertools.combinations(block, 3):
            if t in seen:
                return False
            seen.add(t)
    return len(seen) == math.comb(d.n, 3)


def catalan_solutions(max_exponent: int) -> list[tuple[int, int, int, str]]:
    """All (p, a, b, sign) with odd prime p, a >= 2, and p^a +- 1 = 2^b <= 2^max."""
    if max_exponent > 40:
        raise InvalidInputError("exponent bound capped at 40")
    out = []
    for b in range(1, max_exponent + 1):
        power = 1 << b
        for candidate, sign in ((power + 1, "-"), (power - 1, "+")):
            for a in range(2, candidate.bit_length() + 1):
                p = round(candidate ** (1.0 / a))
                for guess in (p - 1, p, p + 1):
                    if guess >= 2 and guess**a == candidate:
                        if guess % 2 and _is_prime(guess):
                            out.append((guess, a, b, sign))
    return sorted(set(out))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: object = None


@dataclass
class SuiteReport:
    name: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, measured: object = None) -> None:
        self.checks.append(CheckResult(name, bool(passed), measured))

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "measured": _jsonable(c.measured)}
                for c in self.checks
            ],
        }

    def format_table(self) -> str:
        width = max((len(c.name) for c in self.checks), default=10)
        lines = [f"suite {self.name}"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            extra = "" if c.measured is None else f"  {c.measured}"
            lines.append(f"  {c.name:<{width}}  {status}{extra}")
        lines.append(f"  => {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _jsonable(value: object) -> object:
    if isinstance(value, (int, float, str, bool, type(None))):
        return value if not isinstance(value, int) or abs(value) < 2**53 else str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


SUITE_NAMES = ("A", "B", "C", "E1", "SMALLCASES")


def theorem_suite(name: str) -> SuiteReport:
    name = name.upper()
    if name == "A":
        return _suite_designs()
    if name == "B":
        return _suite_groupoids()
    if name == "C":
        return _suite_codes()
    if name == "E1":
        return _suite_transitivity()
    if name == "SMALLCASES":
        return _suite_small_cases()
    raise InvalidInputError(f"unknown suite {name!r}; pick one of {SUITE_NAMES}")


def _check_params(report: SuiteReport, d: Design, n: int, lam: int) -> None:
    v = validate(d)
    ok = v.ok and d.n == n and v.lam == lam
    report.add(
        f"{d.name} is a supersimple 2-({n},4,{lam}) design",
        ok,
        (d.n, v.lam, len(d.blocks)),
    )


def _suite_designs() -> SuiteReport:
    report = SuiteReport("A")
    _check_params(report, build_p3(), 13, 1)
    _check_params(report, build_boolean(3), 8, 3)
    _check_params(report, build_sp_design(3, 1), 28, 5)
    _check_params(report, build_sp_design(3, 0), 36, 9)
    _check_params(report, build_sp_design(4, 1), 120, 27)
    _check_params(report, build_affine_design(3), 64, 15)
    return report


def _suite_groupoids() -> SuiteReport:
    report = SuiteReport("B")
    p3 = build_p3()
    pi = groupoid.hole_stabilizer(p3, 0)
    report.add("p3 hole stabilizer order 95040", pi.order() == 95040, pi.order())
    report.add(
        "p3 groupoid size 1235520",
        groupoid.groupoid_size(p3, 0) == 1235520,
        groupoid.groupoid_size(p3, 0),
    )
    mg = groupoid.move_group(p3)
    report.add(
        "p3 moves generate more than the groupoid",
        mg.order() > 1235520,
        mg.order(),
    )
    for d, expected in (
        (build_sp_design(3, 1), f2.sp_order(3)),
        (build_sp_design(3, 0), f2.sp_order(3)),
        (build_affine_design(3), 64 * f2.sp_order(3)),
    ):
        s = groupoid.summarize(d, 0)
        report.add(
            f"{d.name} move group order {expected}",
            s.move_group_order == expected,
            s.move_group_order,
        )
        report.add(f"{d.name} moves form a group", s.is_group, s.is_group)
        report.add(
            f"{d.name} hole stabilizer times n",
            s.pi_order * d.n == s.move_group_order,
            s.pi_order,
        )
    bool3 = build_boolean(3)
    report.add(
        "boolean k=3 hole stabilizer trivial",
        groupoid.hole_stabilizer(bool3, 0).order() == 1,
        groupoid.hole_stabilizer(bool3, 0).order(),
    )
    return report


def _suite_codes() -> SuiteReport:
    report = SuiteReport("C")
    sp = f2.space(3)
    expectations = {
        "sp-m3-e1": (21, 3, (1, 28, 63, 36), ((28, 27, 16), (1, 12, 28))),
        "sp-m3-e0": (29, 3, (1, 36, 63, 28), ((36, 35, 16), (1, 20, 36))),
        "affine-m3": (56, 4, (1, 64, 126, 64, 1), ((64, 63, 32, 1), (1, 32, 63, 64))),
    }
    designs = {
        "sp-m3-e1": build_sp_design(3, 1),
        "sp-m3-e0": build_sp_design(3, 0),
        "affine-m3": build_affine_design(3),
    }
    for key, (dim, rho, mu, array) in expectations.items():
        code = codes.incidence_code(designs[key])
        report.add(f"{key} code dimension {dim}", code.k == dim, code.k)
        d_min = codes.min_distance(code)
        report.add(f"{key} minimum distance 4", d_min == 4, d_min)
        analysis = codes.coset_analysis(code)
        report.add(
            f"{key} covering radius {rho}", analysis.covering_radius == rho,
            analysis.covering_radius,
        )
        report.add(f"{key} coset weights {mu}", analysis.mu == mu, analysis.mu)
        report.add(
            f"{key} completely regular", analysis.completely_regular,
            analysis.completely_regular,
        )
        got = analysis.array.as_tuple() if analysis.array else None
        report.add(f"{key} intersection array {array}", got == array, got)
    for key, family, eps in (
        ("sp-m3-e1", "sp", 1),
        ("sp-m3-e0", "sp", 0),
        ("affine-m3", "affine", None),
    ):
        H = codes.characterization_parity_check(sp, family, eps)
        kern = codes.kernel_code(H)
        ok = codes.span_equals(codes.incidence_code(designs[key]), kern)
        report.add(f"{key} matches its membership characterization", ok, ok)
    A, ok = codes.brz_equivalence(3)
    pointwise = all(
        sp.theta0(A.vec_mul(v)) == codes.brz_q_value(v) for v in range(64)
    )
    report.add("bent-form substitution matches theta_0 pointwise", pointwise, pointwise)
    report.add("extended bent code maps onto the affine code", ok, ok)
    for eps in (1, 0):
        good = codes.coset_classification_check(sp, eps)
        report.add(f"coset classification eps={eps} (m=3)", good, good)
    good4 = codes.coset_classification_check(f2.space(4), 1)
    report.add("coset classification eps=1 (m=4)", good4, good4)
    return report


def _suite_transitivity() -> SuiteReport:
    report = SuiteReport("E1")
    designs = [
        build_p3(),
        build_boolean(3),
        build_sp_design(3, 1),
        build_sp_design(3, 0),
        build_affine_design(3),
    ]
    for d in designs:
        lam = validate(d).lam
        assert lam is not None
        if d.n <= 4 * lam + 1:
            report.add(f"{d.name}: n <= 4*lam+1, hypothesis empty", True, (d.n, lam))
            continue
        pi = groupoid.hole_stabilizer(d, 0)
        others = range(1, d.n)
        report.add(
            f"{d.name}: hole stabilizer transitive on the rest",
            pi.is_transitive(others),
            pi.order(),
        )
    return report


def _suite_small_cases() -> SuiteReport:
    report = SuiteReport("SMALLCASES")
    found8 = search_designs(8, 3)
    report.add("exactly one 2-(8,4,3) design", len(found8) == 1, len(found8))
    if found8:
        d8 = found8[0]
        report.add(
            "the 2-(8,4,3) design is the Boolean one",
            are_isomorphic(d8, build_boolean(3)),
        )
        report.add(
            "its hole stabilizer is trivial",
            groupoid.hole_stabilizer(d8, 0).order() == 1,
            groupoid.hole_stabilizer(d8, 0).order(),
        )
    found9 = search_designs(9, 3)
    report.add("exactly one 2-(9,4,3) design", len(found9) == 1, len(found9))
    if found9:
        d9 = found9[0]
        pi = groupoid.hole_stabilizer(d9, 0)
        report.add("its hole stabilizer has order 288", pi.order() == 288, pi.order())
        # The stabilizer is often described as a transitive wreath product, but
        # the computed group splits the remaining 8 points into two size-4
        # orbits (each a block of the design); we pin the computed structure.
        orbit_sizes = sorted(len(o) for o in pi.orbits())
        report.add(
            "size-4 orbit structure on the other 8 points "
            "(stated transitivity does not hold; see decisions ledger)",
            orbit_sizes == [1, 4, 4],
            orbit_sizes,
        )
        orbit_blocks = all(
            tuple(o) in d9.block_set for o in pi.orbits() if len(o) == 4
        )
        report.add("both size-4 orbits are blocks of the design", orbit_blocks)
    return report


def run_suites(names: list[str]) -> list[SuiteReport]:
    return [theorem_suite(n) for n in names]
