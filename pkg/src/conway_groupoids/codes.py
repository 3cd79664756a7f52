"""Binary linear codes from design incidence matrices and their coset geometry.

Codewords are ints over n coordinate bits, coordinate i being point i of the
underlying design (sorted label order).  Coset analysis runs entirely in
syndrome space: distance-to-code is a function of the syndrome for a linear
code, so a breadth-first search over the 2^(n-k) syndromes -- with one edge
per parity-check column -- yields every coset's weight, the covering radius,
the coset weight counts, and the per-level neighbour profile that decides
complete regularity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import f2
from .design import Design, require_valid
from .errors import DimensionError, InvalidInputError, ScaleError
from .f2 import F2Matrix
from .perm import Permutation

_SYNDROME_LIMIT = 24


@dataclass(frozen=True)
class LinearCode:
    """Row-reduced generator view of a binary linear code."""

    n: int
    basis: F2Matrix
    parity_check: F2Matrix | None = None

    @property
    def k(self) -> int:
        return self.basis.nrows

    def contains(self, word: int) -> bool:
        return self.basis.contains_in_rowspan(word)

    def with_parity_check(self) -> "LinearCode":
        if self.parity_check is not None:
            return self
        return LinearCode(self.n, self.basis, self.basis.kernel())

    def to_json(self) -> dict:
        data = {
            "n": self.n,
            "k": self.k,
            "basis": self.basis.to_bitstrings(),
        }
        if self.parity_check is not None:
            data["parity_check"] = self.parity_check.to_bitstrings()
        return data


def code_from_rows(rows: list[int], n: int) -> LinearCode:
    return LinearCode(n, F2Matrix(rows, n).rref())


def kernel_code(H: F2Matrix) -> LinearCode:
    """The code {c : H c^T = 0} with H attached as its parity check."""
    return LinearCode(H.ncols, H.kernel().rref(), H.rref())


def incidence_code(d: Design) -> LinearCode:
    """Rowspan of the blocks-by-points incidence matrix."""
    require_valid(d)
    rows = [sum(1 << x for x in block) for block in d.blocks]
    return code_from_rows(rows, d.n)


def characterization_parity_check(
    sp: f2.SymplecticSpace, family: str, eps: int | None = None
) -> F2Matrix:
    """Parity-check rows from the point labels.

    For the symplectic family: the 2m coordinate functionals of the labels
    plus the all-ones row (codewords are the even-size zero-sum label sets).
    For the affine family, additionally the row of theta_0 values.
    """
    if family == "sp":
        if eps is None:
            raise InvalidInputError("sp family needs eps")
        points = sp.v_epsilon(eps & 1)
        extra: list[int] = []
    elif family == "affine":
        points = list(range(1 << sp.dim))
        extra = [sum(sp.theta0(v) << i for i, v in enumerate(points))]
    else:
        raise InvalidInputError("family must be 'sp' or 'affine'")
    n = len(points)
    rows = [
        sum(((v >> j) & 1) << i for i, v in enumerate(points))
        for j in range(sp.dim)
    ]
    rows.append((1 << n) - 1)
    rows.extend(extra)
    return F2Matrix(rows, n)


def span_equals(A: LinearCode, B: LinearCode) -> bool:
    if A.n != B.n:
        raise DimensionError("codes have different lengths")
    return all(B.contains(r) for r in A.basis.rows) and all(
        A.contains(r) for r in B.basis.rows
    )


def min_distance(C: LinearCode, bound: int = 8) -> int | None:
    """Least weight of a nonzero codeword, or None if it exceeds the bound.

    Enumerates supports of each size in increasing order and tests for
    syndrome zero against the parity check.
    """
    C = C.with_parity_check()
    H = C.parity_check
    assert H is not None
    cols = _syndrome_columns(H)
    for w in range(1, bound + 1):
        for support in itertools.combinations(range(C.n), w):
            s = 0
            for i in support:
                s ^= cols[i]
            if s == 0:
                return w
    return None


def _syndrome_columns(H: F2Matrix) -> list[int]:
    cols = []
    for i in range(H.ncols):
        c = 0
        for r_idx, row in enumerate(H.rows):
            c |= ((row >> i) & 1) << r_idx
        cols.append(c)
    return cols


@dataclass(frozen=True)
class CosetTable:
    """Syndrome -> (coset weight, coset leader); weights index the mu counts."""

    syndrome_bits: int
    n: int
    weights: dict[int, int]
    leaders: dict[int, int]
    mu: tuple[int, ...]

    @property
    def covering_radius(self) -> int:
        return len(self.mu) - 1

    def to_csv(self) -> str:
        lines = ["syndrome_bits,weight,leader_bits"]
        for s in sorted(self.weights):
            lines.append(
                f"{f2.vec_to_bits(s, self.syndrome_bits)},{self.weights[s]},"
                f"{f2.vec_to_bits(self.leaders[s], self.n)}"
            )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]

    def as_tuple(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.b, self.c)


@dataclass(frozen=True)
class CosetAnalysis:
    table: CosetTable
    completely_regular: bool
    array: IntersectionArray | None
    same_level_neighbours: tuple[int, ...] | None

    @property
    def covering_radius(self) -> int:
        return self.table.covering_radius

    @property
    def mu(self) -> tuple[int, ...]:
        return self.table.mu


def coset_analysis(C: LinearCode) -> CosetAnalysis:
    """Breadth-first coset-weight computation plus the regularity profile."""
    C = C.with_parity_check()
    H = C.parity_check
    assert H is not None
    r = H.nrows
    if r > _SYNDROME_LIMIT:
        raise ScaleError(f"syndrome space 2^{r} too large")
    cols = _syndrome_columns(H)
    size = 1 << r
    weights = {0: 0}
    leaders = {0: 0}
    frontier = [0]
    w = 0
    while frontier:
        nxt = []
        for s in frontier:
            for i, col in enumerate(cols):
                t = s ^ col
                if t not in weights:
                    weights[t] = w + 1
                    leaders[t] = leaders[s] | (1 << i)
                    nxt.append(t)
        frontier = nxt
        w += 1
    if len(weights) != size:
        raise ScaleError("parity check rows are dependent; reduce first")
    rho = max(weights.values())
    mu = [0] * (rho + 1)
    for wt in weights.values():
        mu[wt] += 1

    # neighbour profile per syndrome; constant per level <=> completely regular
    profiles: list[set[tuple[int, int, int]]] = [set() for _ in range(rho + 1)]
    for s, wt in weights.items():
        down = up = same = 0
        for col in cols:
            nb = weights[s ^ col]
            if nb == wt - 1:
                down += 1
            elif nb == wt + 1:
                up += 1
            elif nb == wt:
                same += 1
        profiles[wt].add((down, up, same))
    regular = all(len(p) == 1 for p in profiles)
    array = None
    same_level = None
    if regular:
        flat = [next(iter(p)) for p in profiles]
        b = tuple(flat[i][1] for i in range(rho))
        c = tuple(flat[i][0] for i in range(1, rho + 1))
        same_level = tuple(flat[i][2] for i in range(rho + 1))
        for i in range(rho):
            if b[i] * mu[i] != c[i] * mu[i + 1]:
                raise AssertionError("coset count identity violated")
        array = IntersectionArray(b, c)
    return CosetAnalysis(
        CosetTable(r, C.n, weights, leaders, tuple(mu)),
        regular,
        array,
        same_level,
    )


def coset_classification_check(sp: f2.SymplecticSpace, eps: int) -> bool:
    """Compare BFS coset weights with the (parity, label-sum) prediction.

    Under the label parity check, a syndrome is exactly the pair
    (sum of labels, size parity) of any representative support; the predicted
    weight is 0 for (even, 0), 1 for (odd, type eps), 2 for (even, nonzero),
    and 3 for (odd, other type).
    """
    eps &= 1
    H = characterization_parity_check(sp, "sp", eps)
    # keep H unreduced so syndrome bit j stays the j-th functional
    analysis = coset_analysis(LinearCode(H.ncols, H.kernel().rref(), H))
    weights = analysis.table.weights
    dim = sp.dim
    for s, w in weights.items():
        v = s & ((1 << dim) - 1)
        odd = (s >> dim) & 1
        if not odd:
            predicted = 0 if v == 0 else 2
        else:
            predicted = 1 if sp.theta0(v) == eps else 3
        if w != predicted:
            return False
    return True


# -- the parity-check construction over Hamming columns ----------------------


def brz_q_matrix(dim: int) -> F2Matrix:
    """All-ones upper-triangular form matrix, diagonal included."""
    rows = []
    for i in range(dim):
        r = 0
        for j in range(i, dim):
            r |= 1 << j
        rows.append(r)
    return F2Matrix(rows, dim)


def brz_q_value(v: int) -> int:
    """The bent function wt(wt+1)/2 mod 2, i.e. 1 iff wt(v) = 1, 2 mod 4."""
    w = v.bit_count()
    return (w * (w + 1) // 2) & 1


@lru_cache(maxsize=None)
def brz_code(m: int) -> LinearCode:
    """Extended even-weight code with the bent-function row.

    Start from the parity check whose columns are the nonzero vectors of
    GF(2)^(2m) (column position label+1... position i holds label i+1), append
    the row of bent-function values, take the kernel, then extend by an
    overall parity coordinate.  Coordinates of the result are indexed by all
    of GF(2)^(2m) in integer order, the zero label being the new coordinate.
    """
    if m < 2:
        raise InvalidInputError("m must be at least 2")
    dim = 2 * m
    n_short = (1 << dim) - 1
    rows = [
        sum((((i + 1) >> j) & 1) << i for i in range(n_short)) for j in range(dim)
    ]
    rows.append(sum(brz_q_value(i + 1) << i for i in range(n_short)))
    Hx = F2Matrix(rows, n_short)
    short = Hx.kernel()
    extended = [
        (w << 1) | (w.bit_count() & 1) for w in short.rows
    ]
    # the equivalent one-shot parity check over all labels, for the record
    full = list(range(1 << dim))
    full_rows = [
        sum(((v >> j) & 1) << v for v in full) for j in range(dim)
    ]
    full_rows.append((1 << (1 << dim)) - 1)
    full_rows.append(sum(brz_q_value(v) << v for v in full))
    return LinearCode(
        1 << dim,
        F2Matrix(extended, 1 << dim).rref(),
        F2Matrix(full_rows, 1 << dim).rref(),
    )


def brz_equivalence(m: int) -> tuple[F2Matrix, bool]:
    """Coordinate substitution carrying the extended bent code onto the
    affine incidence code, as (matrix, span-equality verdict).

    The substitution v -> vA comes from a congruence between the bent form
    and a quadratic form of the same type on the symplectic space; the base
    form theta_0 works exactly when the types agree (m = 0, 3 mod 4), and a
    shifted form of minus type covers the other residues.
    """
    from .design import build_affine_design

    sp = f2.space(m)
    Q = brz_q_matrix(sp.dim)
    zeros_q = f2.quadratic_zero_count(Q)
    if zeros_q == f2.quadratic_zero_count(sp.e):
        target = sp.e
    else:
        a_minus = next(a for a in range(1 << sp.dim) if sp.theta0(a) == 1)
        target = sp.theta_matrix(a_minus)
    A = f2.form_congruence(sp, target, Q)
    code = brz_code(m)
    mapped_rows = []
    for row in code.basis.rows:
        image = 0
        rest = row
        while rest:
            v = (rest & -rest).bit_length() - 1
            image |= 1 << A.vec_mul(v)
            rest &= rest - 1
        mapped_rows.append(image)
    mapped = code_from_rows(mapped_rows, code.n)
    affine = incidence_code(build_affine_design(m))
    return A, span_equals(mapped, affine)


def code_automorphism_check(C: LinearCode, p: Permutation) -> bool:
    """True iff permuting coordinates maps every basis row into the code."""
    if p.degree != C.n:
        raise DimensionError("degree mismatch")
    img = p.images
    for row in C.basis.rows:
        moved = 0
        rest = row
        while rest:
            i = (rest & -rest).bit_length() - 1
            moved |= 1 << img[i]
            rest &= rest - 1
        if not C.contains(moved):
            return False
    return True
