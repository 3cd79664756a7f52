"""Elementary moves, move sequences, hole stabilizers and groupoid analysis.

The elementary move [a, b] of a supersimple design swaps a with b and, for
each of the lam blocks {a, b, x, y} through the pair, swaps x with y; its
support is exactly the closure of {a, b}.  Move sequences compose these
left-to-right.  The set of all move sequences starting at a point ``inf``
has size n * |hole stabilizer|; it is a group exactly when that number
matches the order of the group generated by all elementary moves.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import f2
from .design import Design, require_valid
from .errors import (
    IllDefinedMoveError,
    InvalidInputError,
    NoSolutionError,
    NotFoundError,
    ScaleError,
)
from .perm import Permutation, PermGroup

_K_SUBSET_LIMIT = 600_000


def elementary_move(d: Design, a: int, b: int) -> Permutation:
    """The involution [a, b]: swap a, b and the partner pair on each block."""
    if a == b:
        raise InvalidInputError("an elementary move needs two distinct points")
    if not (0 <= a < d.n and 0 <= b < d.n):
        raise InvalidInputError("point out of range")
    images = list(range(d.n))
    images[a], images[b] = b, a
    for block in d.blocks_through(a, b):
        p, q = (x for x in block if x != a and x != b)
        if images[p] != p or images[q] != q:
            raise IllDefinedMoveError(
                f"[{a},{b}] ill-defined: point {p if images[p] != p else q} "
                "sits on two blocks through the pair"
            )
        images[p], images[q] = q, p
    return Permutation(images)


def move_sequence(d: Design, path: Sequence[int]) -> Permutation:
    """Product [a0,a1][a1,a2]...[a_{k-1},a_k], composed left-to-right."""
    if not path:
        raise InvalidInputError("a move sequence needs a starting point")
    perm = Permutation.identity(d.n)
    for a, b in zip(path, path[1:]):
        perm = perm * elementary_move(d, a, b)
    return perm


@lru_cache(maxsize=128)
def hole_stabilizer(d: Design, inf: int = 0) -> PermGroup:
    """Group generated by the closed two-step sequences [inf, a, b, inf]."""
    require_valid(d)
    if not (0 <= inf < d.n):
        raise InvalidInputError("hole out of range")
    others = [x for x in range(d.n) if x != inf]
    moves_from_inf = {a: elementary_move(d, inf, a) for a in others}
    gens = []
    for a, b in itertools.combinations(others, 2):
        g = moves_from_inf[a] * elementary_move(d, a, b) * moves_from_inf[b]
        if not g.is_identity():
            gens.append(g)
    return PermGroup(gens, d.n)


@lru_cache(maxsize=128)
def move_group(d: Design) -> PermGroup:
    """Group generated by all elementary moves."""
    require_valid(d)
    gens = [
        elementary_move(d, a, b) for a, b in itertools.combinations(range(d.n), 2)
    ]
    return PermGroup(gens, d.n)


def groupoid_size(d: Design, inf: int = 0) -> int:
    """Number of move sequences starting at inf: n * |hole stabilizer|."""
    return d.n * hole_stabilizer(d, inf).order()


def path_word(d: Design, inf: int, b: int) -> Permutation:
    """A fixed move sequence from inf to b (the one-step word)."""
    if b == inf:
        return Permutation.identity(d.n)
    return elementary_move(d, inf, b)


def groupoid_contains(
    d: Design, inf: int, p: Permutation, stabilizer: PermGroup | None = None
) -> bool:
    """Exact membership of p in the move sequences starting at inf.

    A sequence ending at b maps inf to b, so membership reduces to one coset
    test against the hole stabilizer: p * word(inf -> b)^-1 must sift to the
    identity.  The verdict does not depend on the chosen word.
    """
    if p.degree != d.n:
        raise InvalidInputError("degree mismatch")
    if stabilizer is None:
        stabilizer = hole_stabilizer(d, inf)
    b = p(inf)
    return stabilizer.contains(p * path_word(d, inf, b).inverse())


@dataclass(frozen=True)
class GroupoidSummary:
    n: int
    hole: int
    pi_order: int
    groupoid_size: int
    move_group_order: int
    is_group: bool
    transitive: bool
    primitive: bool | None
    contains_alternating: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "hole": self.hole,
            "pi_order": str(self.pi_order),
            "groupoid_size": str(self.groupoid_size),
            "move_group_order": str(self.move_group_order),
            "is_group": self.is_group,
            "transitive": self.transitive,
            "primitive": self.primitive,
            "contains_alternating": self.contains_alternating,
        }


def summarize(d: Design, inf: int = 0) -> GroupoidSummary:
    """Orders and transitivity data for one design and hole choice.

    ``transitive``/``primitive`` describe the hole stabilizer acting on the
    n-1 points other than the hole; ``contains_alternating`` compares the
    move group against Alt(n)/Sym(n) on all n points.
    """
    pi = hole_stabilizer(d, inf)
    mg = move_group(d)
    others = [x for x in range(d.n) if x != inf]
    transitive = pi.is_transitive(others)
    primitive = pi.is_primitive(others) if transitive else None
    return GroupoidSummary(
        n=d.n,
        hole=inf,
        pi_order=pi.order(),
        groupoid_size=d.n * pi.order(),
        move_group_order=mg.order(),
        is_group=mg.order() == d.n * pi.order(),
        transitive=transitive,
        primitive=primitive,
        contains_alternating=mg.contains_alternating(d.n),
    )


def orbit_partition_k_subsets(
    generators: Iterable[Permutation], n: int, k: int
) -> list[list[tuple[int, ...]]]:
    """Orbits of the induced action on sorted k-subsets of {0..n-1}."""
    if math.comb(n, k) > _K_SUBSET_LIMIT:
        raise ScaleError("too many k-subsets to enumerate")
    subsets = list(itertools.combinations(range(n), k))
    index = {s: i for i, s in enumerate(subsets)}
    gen_images = [g.images for g in generators]
    for img in gen_images:
        if len(img) != n:
            raise InvalidInputError("generator degree differs from n")
    visited = bytearray(len(subsets))
    orbits = []
    for seed in range(len(subsets)):
        if visited[seed]:
            continue
        component = []
        stack = [seed]
        visited[seed] = 1
        while stack:
            i = stack.pop()
            component.append(i)
            s = subsets[i]
            for img in gen_images:
                t = tuple(sorted(img[x] for x in s))
                j = index[t]
                if not visited[j]:
                    visited[j] = 1
                    stack.append(j)
        component.sort()
        orbits.append([subsets[i] for i in component])
    return orbits


# -- point permutations induced by the symplectic/affine actions -------------


def transvection_point_perm(sp: f2.SymplecticSpace, eps: int, c: int) -> Permutation:
    """Permutation of the sorted type-eps labels induced by conjugating by t_c."""
    points = sp.v_epsilon(eps)
    index = {v: i for i, v in enumerate(points)}
    return Permutation(index[sp.transvection_on_form(c, v)] for v in points)


def affine_transvection_perm(sp: f2.SymplecticSpace, c: int) -> Permutation:
    """Permutation of all of V induced by the transvection t_c."""
    return Permutation(sp.apply_transvection(c, v) for v in range(1 << sp.dim))


def translation_perm(sp: f2.SymplecticSpace, t: int) -> Permutation:
    """Permutation of all of V induced by v -> v + t."""
    sp.check(t)
    return Permutation(v ^ t for v in range(1 << sp.dim))


def sp_orbit_generators(sp: f2.SymplecticSpace, eps: int) -> list[Permutation]:
    """All transvections as point permutations of the type-eps labels."""
    return [
        transvection_point_perm(sp, eps, c) for c in range(1, 1 << sp.dim)
    ]


def affine_orbit_generators(sp: f2.SymplecticSpace) -> list[Permutation]:
    """Basis translations plus all transvections, acting on all of V."""
    gens = [translation_perm(sp, 1 << i) for i in range(sp.dim)]
    gens.extend(affine_transvection_perm(sp, c) for c in range(1, 1 << sp.dim))
    return gens


# -- explicit witnesses for same-orbit 3-subsets ------------------------------


def _apply_word_to_label(sp: f2.SymplecticSpace, word: Sequence[int], a: int) -> int:
    for c in word:
        a = sp.transvection_on_form(c, a)
    return a


def witness_map_3subsets(
    sp: f2.SymplecticSpace, eps: int, T1: Iterable[int], T2: Iterable[int]
) -> tuple[tuple[int, ...], Permutation]:
    """A short transvection word mapping the 3-subset T1 setwise onto T2.

    T1 and T2 are 3-subsets of labels of type eps.  After a 2-transitivity
    reduction aligns two labels, the last one is moved by a pair of
    transvections t_{a+w} t_{b+w}; the auxiliary label w is found by solving
    the induced affine conditions, by scanning all type-eps labels when the
    solver's guarantee does not apply, and as a last resort by a breadth
    first search over subset images.  The returned word is verified setwise
    and converted to a permutation of the sorted type-eps labels.
    """
    t1 = sorted(set(T1))
    t2 = sorted(set(T2))
    if len(t1) != 3 or len(t2) != 3:
        raise InvalidInputError("both arguments must be 3-subsets")
    for v in t1 + t2:
        sp.check(v)
        if sp.theta0(v) != eps:
            raise InvalidInputError(f"label {v} is not of type {eps}")
    d1 = sp.theta0(t1[0] ^ t1[1] ^ t1[2])
    d2 = sp.theta0(t2[0] ^ t2[1] ^ t2[2])
    if d1 != d2:
        raise NotFoundError("subsets have different orbit invariants")

    word: list[int] = []
    cur = set(t1)

    def apply(c: int) -> None:
        nonlocal cur
        word.append(c)
        cur = {sp.transvection_on_form(c, v) for v in cur}

    if t2[0] not in cur:
        s = min(cur - set(t2))
        apply(s ^ t2[0])
    if t2[1] not in cur:
        s = min(cur - set(t2))
        c = s ^ t2[1]
        if sp.theta(t2[0], c) == 1:
            apply(c)
        else:
            r = _fixing_intermediate(sp, eps, t2[0], s, t2[1])
            apply(s ^ r)
            apply(r ^ t2[1])
    remaining = cur - {t2[0], t2[1]}
    if len(remaining) != 1:
        raise NotFoundError("pair alignment failed")
    a = remaining.pop()
    b = t2[2]
    if a != b:
        w = _final_point_auxiliary(sp, eps, t2[0], t2[1], a, b)
        if w is None:
            return _witness_by_bfs(sp, eps, t1, t2)
        apply(a ^ w)
        apply(b ^ w)
    if {_apply_word_to_label(sp, word, v) for v in t1} != set(t2):
        return _witness_by_bfs(sp, eps, t1, t2)
    points = sp.v_epsilon(eps)
    index = {v: i for i, v in enumerate(points)}
    perm = Permutation(index[_apply_word_to_label(sp, word, v)] for v in points)
    return tuple(word), perm


def _fixing_intermediate(sp: f2.SymplecticSpace, eps: int, fixed: int, s: int, target: int) -> int:
    """Label r of type eps with theta_fixed(s+r) = theta_fixed(r+target) = 1."""
    for r in sp.v_epsilon(eps):
        if r in (fixed, s, target):
            continue
        if sp.theta(fixed, s ^ r) == 1 and sp.theta(fixed, r ^ target) == 1:
            return r
    raise NotFoundError("no intermediate label fixes the aligned point")


def _final_point_auxiliary(
    sp: f2.SymplecticSpace, eps: int, c: int, d: int, a: int, b: int
) -> int | None:
    """w of type eps with theta_c and theta_d equal to 1 at a+w and b+w."""
    constraints = [
        (a ^ c, 1 ^ sp.phi(a, c)),
        (a ^ d, 1 ^ sp.phi(a, d)),
        (b ^ c, 1 ^ sp.phi(b, c)),
    ]
    try:
        w = f2.solve_affine_theta(sp, constraints, eps)
        if sp.theta(d, b ^ w) == 1:
            return w
    except (NoSolutionError, NotFoundError):
        pass
    for w in sp.v_epsilon(eps):
        if (
            sp.theta(c, a ^ w) == 1
            and sp.theta(c, b ^ w) == 1
            and sp.theta(d, a ^ w) == 1
            and sp.theta(d, b ^ w) == 1
        ):
            return w
    return None


def _witness_by_bfs(
    sp: f2.SymplecticSpace, eps: int, t1: list[int], t2: list[int]
) -> tuple[tuple[int, ...], Permutation]:
    """Breadth-first word search through transvection images of the subset."""
    start = tuple(sorted(t1))
    goal = tuple(sorted(t2))
    labels = list(range(1, 1 << sp.dim))
    seen = {start: ()}
    frontier = [start]
    while frontier:
        nxt = []
        for subset in frontier:
            base_word = seen[subset]
            for c in labels:
                image = tuple(sorted(sp.transvection_on_form(c, v) for v in subset))
                if image not in seen:
                    seen[image] = base_word + (c,)
                    if image == goal:
                        word = seen[image]
                        points = sp.v_epsilon(eps)
                        index = {v: i for i, v in enumerate(points)}
                        perm = Permutation(
                            index[_apply_word_to_label(sp, word, v)] for v in points
                        )
                        return word, perm
                    nxt.append(image)
        frontier = nxt
    raise NotFoundError("subsets lie in different orbits")
