"""Bitset linear algebra and symplectic/quadratic geometry over GF(2).

Vectors are plain Python ints used as bitsets: bit i (weight 2**i) is
coordinate i.  A vector's length comes from context -- the column count of a
matrix or the dimension of a :class:`SymplecticSpace`.  All orderings and
serializations in the package use this integer encoding.

The geometric half of the module fixes the standard hyperbolic setup on
V = GF(2)^(2m): the matrix ``e`` with the identity block in its upper-right
quadrant, the alternating form phi(u, v) = u (e + e^T) v^T, the base
quadratic form theta_0(u) = u e u^T, and its shifts
theta_a(u) = theta_0(u) + phi(u, a).  Transvections t_c act by
u -> u + phi(u, c) c and generate the symplectic group.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    DegenerateInputError,
    DimensionError,
    InequivalentFormsError,
    NoSolutionError,
    NotFoundError,
    ScaleError,
    SingularMatrixError,
)

_COSET_SCAN_LIMIT = 1 << 22


def vec_to_bits(v: int, length: int) -> str:
    """Serialize a vector as a bitstring, index 0 leftmost."""
    return "".join("1" if (v >> i) & 1 else "0" for i in range(length))


def vec_from_bits(bits: str) -> int:
    if set(bits) - {"0", "1"}:
        raise ValueError(f"not a bitstring: {bits!r}")
    return sum(1 << i for i, ch in enumerate(bits) if ch == "1")


class F2Matrix:
    """A matrix over GF(2), stored as a tuple of row bitsets."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[int], ncols: int):
        rows = tuple(rows)
        if ncols < 0:
            raise DimensionError("negative column count")
        for r in rows:
            if r < 0 or r >> ncols:
                raise DimensionError("row does not fit in the given width")
        self.rows = rows
        self.ncols = ncols

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls((1 << i for i in range(n)), n)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls((0,) * nrows, ncols)

    @classmethod
    def from_bitstrings(cls, bits: Sequence[str]) -> "F2Matrix":
        if not bits:
            return cls((), 0)
        width = len(bits[0])
        if any(len(b) != width for b in bits):
            raise DimensionError("ragged bitstring rows")
        return cls((vec_from_bits(b) for b in bits), width)

    def to_bitstrings(self) -> list[str]:
        return [vec_to_bits(r, self.ncols) for r in self.rows]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, F2Matrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.ncols))

    def __repr__(self) -> str:
        return f"F2Matrix({self.nrows}x{self.ncols})"

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def vec_mul(self, v: int) -> int:
        """Row vector times matrix: returns v . M."""
        if v < 0 or v >> self.nrows:
            raise DimensionError("vector length does not match row count")
        acc = 0
        rest = v
        while rest:
            i = (rest & -rest).bit_length() - 1
            acc ^= self.rows[i]
            rest &= rest - 1
        return acc

    def mul(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise DimensionError("inner dimensions differ")
        return F2Matrix((other.vec_mul(r) for r in self.rows), other.ncols)

    def transpose(self) -> "F2Matrix":
        cols = []
        for j in range(self.ncols):
            c = 0
            for i, r in enumerate(self.rows):
                c |= ((r >> j) & 1) << i
            cols.append(c)
        return F2Matrix(cols, self.nrows)

    def add(self, other: "F2Matrix") -> "F2Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError("shape mismatch")
        return F2Matrix((a ^ b for a, b in zip(self.rows, other.rows)), self.ncols)

    def stack(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.ncols:
            raise DimensionError("column counts differ")
        return F2Matrix(self.rows + other.rows, self.ncols)

    def rref(self) -> "F2Matrix":
        """Reduced row echelon form with zero rows dropped."""
        work = list(self.rows)
        pivots: list[tuple[int, int]] = []  # (column, row value)
        for col in range(self.ncols):
            pivot_row = None
            for idx, r in enumerate(work):
                if (r >> col) & 1:
                    pivot_row = idx
                    break
            if pivot_row is None:
                continue
            pv = work.pop(pivot_row)
            work = [r ^ pv if (r >> col) & 1 else r for r in work]
            pivots = [
                (c, v ^ pv if (v >> col) & 1 else v) for c, v in pivots
            ]
            pivots.append((col, pv))
        return F2Matrix((v for _, v in sorted(pivots)), self.ncols)

    def rank(self) -> int:
        return self.rref().nrows

    def inverse(self) -> "F2Matrix":
        if self.nrows != self.ncols:
            raise DimensionError("only square matrices invert")
        n = self.ncols
        # eliminate on rows augmented with identity in the high bits
        work = [r | (1 << (n + i)) for i, r in enumerate(self.rows)]
        row = 0
        for col in range(n):
            pivot = None
            for idx in range(row, n):
                if (work[idx] >> col) & 1:
                    pivot = idx
                    break
            if pivot is None:
                raise SingularMatrixError("matrix is singular")
            work[row], work[pivot] = work[pivot], work[row]
            for idx in range(n):
                if idx != row and (work[idx] >> col) & 1:
                    work[idx] ^= work[row]
            row += 1
        mask = (1 << n) - 1
        return F2Matrix((w >> n for w in sorted(work, key=lambda w: w & mask)), n)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.ncols

    def kernel(self) -> "F2Matrix":
        """Basis of {x : every row r has <r, x> = 0}, as rows of a matrix."""
        red = self.rref()
        pivot_cols = []
        for r in red.rows:
            pivot_cols.append((r & -r).bit_length() - 1)
        pivot_set = set(pivot_cols)
        free_cols = [j for j in range(self.ncols) if j not in pivot_set]
        basis = []
        for f in free_cols:
            x = 1 << f
            for pc, r in zip(pivot_cols, red.rows):
                if (r >> f) & 1:
                    x |= 1 << pc
            basis.append(x)
        return F2Matrix(basis, self.ncols)

    def contains_in_rowspan(self, v: int) -> bool:
        if v < 0 or v >> self.ncols:
            raise DimensionError("vector too wide")
        for r in self.rref().rows:
            pivot = r & -r
            if v & pivot:
                v ^= r
        return v == 0


def solve_linear(rows: Sequence[int], rhs: Sequence[int], ncols: int) -> int | None:
    """One solution x of <rows[i], x> = rhs[i] for all i, or None."""
    work = [r | (b & 1) << ncols for r, b in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    for col in range(ncols):
        pivot_row = None
        for idx, r in enumerate(work):
            if (r >> col) & 1:
                pivot_row = idx
                break
        if pivot_row is None:
            continue
        pv = work.pop(pivot_row)
        work = [r ^ pv if (r >> col) & 1 else r for r in work]
        pivots = [(c, v ^ pv if (v >> col) & 1 else v) for c, v in pivots]
        pivots.append((col, pv))
    if any(w for w in work):  # leftover rows must be all-zero incl. rhs bit
        return None
    x = 0
    for col, v in pivots:
        if (v >> ncols) & 1:
            x |= 1 << col
    return x


def quadratic_value(Q: F2Matrix, v: int) -> int:
    """Evaluate the quadratic function x Q x^T at x = v."""
    if v < 0 or v >> Q.nrows:
        raise DimensionError("vector length does not match")
    acc = 0
    rest = v
    while rest:
        i = (rest & -rest).bit_length() - 1
        acc ^= (Q.rows[i] & v).bit_count()
        rest &= rest - 1
    return acc & 1


class SymplecticSpace:
    """GF(2)^(2m) with the standard alternating form and quadratic forms."""

    __slots__ = ("m", "dim", "e", "f", "_mask", "_theta0_table")

    def __init__(self, m: int):
        if m < 1:
            raise DimensionError("m must be positive")
        self.m = m
        self.dim = 2 * m
        self._mask = (1 << m) - 1
        self.e = F2Matrix(
            tuple(1 << (m + i) for i in range(m)) + (0,) * m, self.dim
        )
        self.f = F2Matrix(
            tuple(1 << (m + i) for i in range(m))
            + tuple(1 << i for i in range(m)),
            self.dim,
        )
        if self.dim <= 20:
            self._theta0_table = bytes(
                ((v & self._mask) & (v >> m)).bit_count() & 1
                for v in range(1 << self.dim)
            )
        else:
            self._theta0_table = None

    def check(self, v: int) -> None:
        if v < 0 or v >> self.dim:
            raise DimensionError(f"vector does not live in GF(2)^{self.dim}")

    def phi(self, u: int, v: int) -> int:
        """The alternating form u f v^T."""
        self.check(u)
        self.check(v)
        m = self.m
        lo = self._mask
        return (((u & lo) & (v >> m)).bit_count() + ((u >> m) & (v & lo)).bit_count()) & 1

    def theta0(self, u: int) -> int:
        if self._theta0_table is not None and 0 <= u < len(self._theta0_table):
            return self._theta0_table[u]
        self.check(u)
        return ((u & self._mask) & (u >> self.m)).bit_count() & 1

    def theta(self, a: int, u: int) -> int:
        """theta_a(u) = theta_0(u) + phi(u, a)."""
        return self.theta0(u) ^ self.phi(u, a)

    def apply_transvection(self, c: int, u: int) -> int:
        """t_c: u -> u + phi(u, c) c."""
        return u ^ c if self.phi(u, c) else u

    def transvection_matrix(self, c: int) -> F2Matrix:
        self.check(c)
        return F2Matrix(
            (self.apply_transvection(c, 1 << i) for i in range(self.dim)), self.dim
        )

    def transvection_on_form(self, c: int, a: int) -> int:
        """Label of theta_a conjugated by t_c: a if theta_a(c)=1, else a+c."""
        return a if self.theta(a, c) else a ^ c

    def v_epsilon(self, eps: int) -> list[int]:
        """All v with theta_0(v) = eps, ascending in the integer encoding."""
        return [v for v in range(1 << self.dim) if self.theta0(v) == eps]

    def theta_matrix(self, a: int) -> F2Matrix:
        """Matrix Q with x Q x^T = theta_a(x) (linear part folded into the diagonal)."""
        self.check(a)
        lin = self.f.vec_mul(a)  # phi(x, a) = <x, a.f>
        rows = [
            r ^ (((lin >> i) & 1) << i) for i, r in enumerate(self.e.rows)
        ]
        return F2Matrix(rows, self.dim)


@lru_cache(maxsize=None)
def space(m: int) -> SymplecticSpace:
    return SymplecticSpace(m)


def f_eps(m: int, eps: int) -> int:
    """Size of {v : theta_0(v) = eps} in GF(2)^(2m)."""
    return (1 << (m - 1)) * ((1 << m) + (1 if eps % 2 == 0 else -1))


def inductive_v_epsilon(level0: Sequence[int], level1: Sequence[int], k: int, eps: int) -> list[int]:
    """Lift the level-k lists to level k+1 by the (x, v1, y, v2) interleaving.

    A level-k vector v = (v1, v2) maps to v_xy = (x, v1, y, v2); the level-(k+1)
    set for eps is the union of the 00, 01, 10 lifts of the eps list and the 11
    lift of the other list.
    """
    lists = {0: level0, 1: level1}
    lo_mask = (1 << k) - 1

    def lift(v: int, x: int, y: int) -> int:
        v1 = v & lo_mask
        v2 = v >> k
        return x | (v1 << 1) | (y << (k + 1)) | (v2 << (k + 2))

    out = []
    for x, y in ((0, 0), (0, 1), (1, 0)):
        out.extend(lift(v, x, y) for v in lists[eps])
    out.extend(lift(v, 1, 1) for v in lists[1 - eps])
    return out


def decompose_sum2(sp: SymplecticSpace, v: int, eps: int) -> tuple[int, int]:
    """Distinct x, y with theta_0(x) = theta_0(y) = eps and x + y = v.

    Follows a fixed case table on (theta_0(v), eps) built from basis pairs,
    scanning coordinate pairs in ascending order; falls back to an exhaustive
    scan in the tiny-m corner cases the table cannot cover.
    """
    sp.check(v)
    if v == 0:
        raise DegenerateInputError("v = 0 admits no decomposition into distinct parts")
    m = sp.m
    delta = sp.theta0(v)
    x = _decompose_sum2_table(sp, v, eps, delta)
    if x is not None:
        y = x ^ v
        if sp.theta0(x) == eps and sp.theta0(y) == eps and x != y:
            return x, y
    for x in sp.v_epsilon(eps):  # corner cases only (m = 1)
        y = x ^ v
        if y != x and sp.theta0(y) == eps:
            return x, y
    raise NotFoundError(f"no decomposition of {v} into two distinct eps={eps} vectors")


def _decompose_sum2_table(sp: SymplecticSpace, v: int, eps: int, delta: int) -> int | None:
    m = sp.m

    def bit(i: int) -> int:
        return (v >> i) & 1

    if delta == 0 and eps == 0:
        return 0
    if delta == 0 and eps == 1:
        for i in range(m):
            if bit(i) == bit(i + m):
                return (1 << i) | (1 << (i + m))
        # every pair has exactly one coordinate set; m >= 2 here
        if m == 1:
            return None
        for s in range(sp.dim):
            if bit(s) and s % m != 0:
                j = s + m if s < m else s - m
                return 1 | (1 << m) | (1 << j)
        return None
    # delta == 1: some pair has both coordinates set
    i = next(i for i in range(m) if bit(i) and bit(i + m))
    if eps == 0:
        return 1 << i
    for j in range(m):
        if j != i and bit(j) == bit(j + m):
            return (1 << j) | (1 << (j + m)) | (1 << i)
    if m == 1:
        return None
    for s in range(sp.dim):
        if bit(s) and s % m != i:
            j = s + m if s < m else s - m
            return (1 << i) | (1 << (i + m)) | (1 << j)
    return None


def decompose_sum3(sp: SymplecticSpace, v: int, eps_target: int) -> tuple[int, int, int]:
    """Three pairwise distinct vectors of type eps_target summing to v.

    Guaranteed when theta_0(v) = 1 - eps_target; otherwise an exhaustive
    search is attempted and may fail.
    """
    sp.check(v)
    if v != 0 and sp.theta0(v) == 1 - eps_target:
        x, y = decompose_sum2(sp, v, eps_target)
        y1, y2 = decompose_sum2(sp, y, eps_target)
        triple = (x, y1, y2)
        if len(set(triple)) == 3 and x ^ y1 ^ y2 == v:
            return triple
    elems = sp.v_epsilon(eps_target)
    pos = set(elems)
    for i, x in enumerate(elems):
        for y in elems[i + 1:]:
            z = v ^ x ^ y
            if z in pos and z != x and z != y:
                return (x, y, z)
    raise NotFoundError(f"no triple of eps={eps_target} vectors sums to {v}")


def solve_affine_theta(
    sp: SymplecticSpace, constraints: Sequence[tuple[int, int]], eps: int
) -> int:
    """A vector w with phi(w, a_i) = b_i for all constraints and theta_0(w) = eps.

    Solves the linear part exactly, then scans the solution coset for the
    required theta_0 value.  With at most three independent constraints and
    m >= 4 a hit is guaranteed.
    """
    rows = []
    rhs = []
    for a, b in constraints:
        sp.check(a)
        rows.append(sp.f.vec_mul(a))  # phi(w, a) = <w, a.f>
        rhs.append(b & 1)
    x0 = solve_linear(rows, rhs, sp.dim)
    if x0 is None:
        raise NoSolutionError("inconsistent linear constraints")
    kernel = F2Matrix(rows, sp.dim).kernel().rows
    if len(kernel) > 22 or (1 << len(kernel)) > _COSET_SCAN_LIMIT:
        raise ScaleError("solution coset too large to scan")
    for combo in range(1 << len(kernel)):
        w = x0
        rest = combo
        while rest:
            i = (rest & -rest).bit_length() - 1
            w ^= kernel[i]
            rest &= rest - 1
        if sp.theta0(w) == eps:
            return w
    raise NotFoundError("solution coset contains no vector of the requested type")


def sp_membership(sp: SymplecticSpace, M: F2Matrix) -> bool:
    """Whether M is invertible and preserves the alternating form."""
    if M.nrows != sp.dim or M.ncols != sp.dim:
        raise DimensionError("matrix must be 2m x 2m")
    if not M.is_invertible():
        return False
    return M.mul(sp.f).mul(M.transpose()) == sp.f


def sp_order(m: int) -> int:
    """Order of the symplectic group on GF(2)^(2m)."""
    if m < 1:
        raise DimensionError("m must be positive")
    order = 1 << (m * m)
    for i in range(1, m + 1):
        order *= (1 << (2 * i)) - 1
    return order


def _polarization_matrix(Q: F2Matrix) -> F2Matrix:
    """Bilinear form B(x, y) = q(x+y) + q(x) + q(y) of q(x) = x Q x^T."""
    n = Q.nrows
    rows = []
    for i in range(n):
        r = 0
        for j in range(n):
            if i == j:
                continue
            b = quadratic_value(Q, (1 << i) | (1 << j)) ^ quadratic_value(
                Q, 1 << i
            ) ^ quadratic_value(Q, 1 << j)
            r |= b << j
        rows.append(r)
    return F2Matrix(rows, n)


def quadratic_zero_count(Q: F2Matrix) -> int:
    """Number of vectors where x Q x^T vanishes (exhaustive)."""
    n = Q.nrows
    if n > 20:
        raise ScaleError("zero count requires enumerating 2^n vectors")
    return sum(1 for v in range(1 << n) if quadratic_value(Q, v) == 0)


def _normal_basis(Q: F2Matrix) -> F2Matrix:
    """Rows u_1..u_m, w_1..w_m with q on this basis in hyperbolic-pair form.

    Extracts one hyperbolic pair at a time; if the final 2-dimensional piece
    has no nonzero singular vector the form is of minus type and the last
    pair is left non-singular (both reductions of a same-type pair then agree).
    """
    n = Q.nrows
    B = _polarization_matrix(Q)
    if B.rank() != n:
        raise DegenerateInputError("quadratic form polarizes to a degenerate form")

    def q(v: int) -> int:
        return quadratic_value(Q, v)

    def bil(x: int, y: int) -> int:
        acc = 0
        rest = x
        while rest:
            i = (rest & -rest).bit_length() - 1
            acc ^= (B.rows[i] & y).bit_count()
            rest &= rest - 1
        return acc & 1

    def span(vectors: Sequence[int], combo: int) -> int:
        cand = 0
        rest = combo
        while rest:
            i = (rest & -rest).bit_length() - 1
            cand ^= vectors[i]
            rest &= rest - 1
        return cand

    basis = [1 << i for i in range(n)]  # basis of the current complement
    us: list[int] = []
    ws: list[int] = []
    while basis:
        k = len(basis)
        u = None
        for combo in range(1, 1 << k):
            cand = span(basis, combo)
            if q(cand) == 0:
                u = cand
                break
        if u is None:
            if k != 2:
                raise InequivalentFormsError("unexpected anisotropic piece")
            u = basis[0]  # minus-type tail: q = 1 on all three nonzero vectors
        w = None
        for combo in range(1, 1 << k):
            cand = span(basis, combo)
            if bil(u, cand):
                w = cand
                break
        if w is None:
            raise DegenerateInputError("form degenerate on a complement")
        if q(u) == 0 and q(w) == 1:
            w ^= u  # q(w + u) = q(w) + q(u) + bil(w, u) = q(w) + 1
        us.append(u)
        ws.append(w)
        # project the rest of the basis into the orthogonal complement of <u, w>
        pivots: dict[int, int] = {}
        for x in basis:
            y = x ^ (u if bil(x, w) else 0)
            y ^= w if bil(y, u) else 0
            while y:
                p = y & -y
                if p in pivots:
                    y ^= pivots[p]
                else:
                    pivots[p] = y
                    break
        basis = list(pivots.values())
    return F2Matrix(us + ws, n)


def form_congruence(sp: SymplecticSpace, Q1: F2Matrix, Q2: F2Matrix) -> F2Matrix:
    """Invertible A with q1(x A) = q2(x) for all x, for same-type forms.

    Both forms are reduced to a hyperbolic normal basis and the two changes of
    basis are composed.  The result is verified functionally: on every vector
    for m <= 4, on 10^5 random samples beyond that.
    """
    n = sp.dim
    if Q1.nrows != n or Q1.ncols != n or Q2.nrows != n or Q2.ncols != n:
        raise DimensionError("forms must be 2m x 2m")
    if quadratic_zero_count(Q1) != quadratic_zero_count(Q2):
        raise InequivalentFormsError("forms have different zero counts")
    B1 = _normal_basis(Q1)
    B2 = _normal_basis(Q2)
    A = B2.inverse().mul(B1)
    if not A.is_invertible():
        raise SingularMatrixError("congruence matrix is singular")
    if n <= 8:
        test_vectors: Iterable[int] = range(1 << n)
    else:
        rng = random.Random(0xF2F2)
        test_vectors = (rng.getrandbits(n) for _ in range(100_000))
    for v in test_vectors:
        if quadratic_value(Q1, A.vec_mul(v)) != quadratic_value(Q2, v):
            raise InequivalentFormsError("congruence verification failed")
    return A
