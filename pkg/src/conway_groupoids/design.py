"""Supersimple 2-(n,4,lambda) designs: construction, validation, search, JSON.

Points are the integers 0..n-1 and blocks are ascending 4-tuples kept in a
lexicographically sorted, duplicate-free list.  Families built from the
symplectic geometry carry a label map (point index -> vector) so that codes
and the game board are bit-exact across runs.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import f2
from .errors import InvalidInputError, ScaleError, ValidationError
from .perm import Permutation

Block = tuple[int, int, int, int]


class Design:
    """An (n, blocks) incidence structure with optional point labels.

    Instances are treated as immutable after construction; derived indexes
    are cached on first use.
    """

    def __init__(
        self,
        n: int,
        blocks: Iterable[Sequence[int]],
        *,
        name: str = "design",
        lam: int | None = None,
        labels: Sequence[int] | None = None,
        label_dim: int | None = None,
    ):
        canon = sorted({tuple(sorted(b)) for b in blocks})
        for b in canon:
            if len(b) != 4 or len(set(b)) != 4:
                raise InvalidInputError(f"block {b} is not a 4-subset")
            if b[0] < 0 or b[3] >= n:
                raise InvalidInputError(f"block {b} has points outside 0..{n - 1}")
        self.n = n
        self.blocks: tuple[Block, ...] = tuple(canon)  # type: ignore[assignment]
        self.name = name
        self.lam = lam
        self.labels = tuple(labels) if labels is not None else None
        self.label_dim = label_dim
        self._pair_index: dict[tuple[int, int], tuple[int, ...]] | None = None
        self._block_set: frozenset[Block] | None = None

    def __repr__(self) -> str:
        return f"Design({self.name}: n={self.n}, blocks={len(self.blocks)})"

    @property
    def pair_index(self) -> dict[tuple[int, int], tuple[int, ...]]:
        if self._pair_index is None:
            idx: dict[tuple[int, int], list[int]] = {}
            for bi, block in enumerate(self.blocks):
                for p, q in itertools.combinations(block, 2):
                    idx.setdefault((p, q), []).append(bi)
            self._pair_index = {k: tuple(v) for k, v in idx.items()}
        return self._pair_index

    @property
    def block_set(self) -> frozenset[Block]:
        if self._block_set is None:
            self._block_set = frozenset(self.blocks)
        return self._block_set

    def blocks_through(self, a: int, b: int) -> tuple[Block, ...]:
        key = (a, b) if a < b else (b, a)
        return tuple(self.blocks[i] for i in self.pair_index.get(key, ()))

    def closure(self, a: int, b: int) -> frozenset[int]:
        """Points collinear with {a, b}; the support of the move [a, b]."""
        if a == b:
            raise InvalidInputError("closure needs two distinct points")
        if not (0 <= a < self.n and 0 <= b < self.n):
            raise InvalidInputError("point out of range")
        pts = {a, b}
        for block in self.blocks_through(a, b):
            pts.update(block)
        return frozenset(pts)


@dataclass(frozen=True)
class ValidationReport:
    is_2design: bool
    lam: int | None
    is_supersimple: bool
    witness: tuple | None

    @property
    def ok(self) -> bool:
        return self.is_2design and self.is_supersimple


def validate(d: Design) -> ValidationReport:
    """Check the pair-coverage count and the two-point intersection bound."""
    # a repeated 3-subset across two blocks is exactly an intersection >= 3
    triple_owner: dict[tuple[int, int, int], Block] = {}
    supersimple = True
    witness: tuple | None = None
    for block in d.blocks:
        for triple in itertools.combinations(block, 3):
            other = triple_owner.get(triple)
            if other is not None:
                supersimple = False
                witness = ("blocks sharing three points", other, block)
                break
            triple_owner[triple] = block
        if not supersimple:
            break

    counts: dict[tuple[int, int], int] = {}
    for block in d.blocks:
        for pair in itertools.combinations(block, 2):
            counts[pair] = counts.get(pair, 0) + 1
    values = set(counts.values())
    n_pairs = d.n * (d.n - 1) // 2
    if len(counts) < n_pairs:
        values.add(0)
    if len(values) == 1 and d.n >= 2:
        lam = values.pop()
        is_2design = lam > 0
        if not is_2design and witness is None:
            witness = ("no blocks cover any pair",)
    else:
        is_2design = False
        lam = None
        if witness is None:
            lo = min(values)
            bad_pair = next(
                p for p in itertools.combinations(range(d.n), 2)
                if counts.get(p, 0) == lo
            )
            witness = ("pair coverage not constant", bad_pair, sorted(values))
    return ValidationReport(is_2design, lam if is_2design else None, supersimple, witness)


def require_valid(d: Design) -> ValidationReport:
    report = validate(d)
    if not report.ok:
        raise ValidationError(f"{d.name}: invalid design, witness={report.witness}")
    return report


def expected_block_count(n: int, lam: int) -> int:
    """Each block covers 6 pairs, so b = n(n-1)lam/12."""
    num = n * (n - 1) * lam
    if num % 12:
        raise InvalidInputError(f"no 2-({n},4,{lam}) design: block count not integral")
    return num // 12


@lru_cache(maxsize=None)
def build_p3() -> Design:
    """The projective plane of order 3 as a 2-(13,4,1) design.

    Points are the 1-dimensional subspaces of GF(3)^3 (represented by the
    lexicographically sorted normalized coordinates, first nonzero entry 1)
    and lines are the 2-dimensional subspaces.
    """
    def normalize(p: tuple[int, int, int]) -> tuple[int, int, int]:
        for c in p:
            if c % 3:
                inv = 1 if c % 3 == 1 else 2
                return tuple(x * inv % 3 for x in p)  # type: ignore[return-value]
        raise ValueError("zero vector")

    points = sorted({
        normalize((a, b, c))
        for a in range(3) for b in range(3) for c in range(3)
        if (a, b, c) != (0, 0, 0)
    })
    index = {p: i for i, p in enumerate(points)}
    lines = set()
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            members = {index[p], index[q]}
            for s in range(3):
                r = tuple((p[k] + s * q[k]) % 3 for k in range(3))
                if r != (0, 0, 0):
                    members.add(index[normalize(r)])  # type: ignore[arg-type]
            members.add(index[normalize(q)])
            lines.add(tuple(sorted(members)))
    return Design(13, lines, name="p3", lam=1)


@lru_cache(maxsize=None)
def build_boolean(k: int) -> Design:
    """The Boolean quadruple system on GF(2)^k: blocks are XOR-quadruples."""
    if k < 2:
        raise InvalidInputError("k must be at least 2")
    n = 1 << k
    blocks = set()
    for a, b, c in itertools.combinations(range(n), 3):
        d = a ^ b ^ c
        if d not in (a, b, c):
            blocks.add(tuple(sorted((a, b, c, d))))
    return Design(
        n,
        blocks,
        name=f"boolean-k{k}",
        lam=(1 << (k - 1)) - 1,
        labels=range(n),
        label_dim=k,
    )


@lru_cache(maxsize=None)
def build_sp_design(m: int, eps: int) -> Design:
    """Design on the quadratic forms of type eps, lines the zero-sum quadruples.

    Points are the labels {v : theta_0(v) = eps} in sorted integer order;
    a block is any 4-subset of labels with zero sum (equivalently three
    distinct labels whose sum lands back in the same type class).
    """
    if m < 2:
        raise InvalidInputError("m must be at least 2")
    if m == 2:
        import warnings

        warnings.warn("supersimple design properties are only guaranteed for m >= 3")
    eps &= 1
    sp = f2.space(m)
    points = sp.v_epsilon(eps)
    index = {v: i for i, v in enumerate(points)}
    theta0 = sp.theta0
    blocks = set()
    for i1, i2, i3 in itertools.combinations(range(len(points)), 3):
        v = points[i1] ^ points[i2] ^ points[i3]
        if theta0(v) == eps:
            blocks.add(tuple(sorted((i1, i2, i3, index[v]))))
    lam = f2.f_eps(m - 1, eps) - 1
    return Design(
        len(points),
        blocks,
        name=f"sp-m{m}-e{eps}",
        lam=lam,
        labels=points,
        label_dim=sp.dim,
    )


@lru_cache(maxsize=None)
def build_affine_design(m: int) -> Design:
    """Design on all of GF(2)^(2m); blocks are zero-sum quadruples that also
    have zero theta_0 sum."""
    if m < 2:
        raise InvalidInputError("m must be at least 2")
    sp = f2.space(m)
    n = 1 << sp.dim
    theta0 = sp.theta0
    blocks = set()
    for v1, v2, v3 in itertools.combinations(range(n), 3):
        v4 = v1 ^ v2 ^ v3
        if v4 in (v1, v2, v3):
            continue
        if theta0(v1) ^ theta0(v2) ^ theta0(v3) == theta0(v4):
            blocks.add(tuple(sorted((v1, v2, v3, v4))))
    lam = (1 << (2 * m - 2)) - 1
    return Design(
        n, blocks, name=f"affine-m{m}", lam=lam, labels=range(n), label_dim=sp.dim
    )


def automorphism_check(d: Design, p: Permutation) -> bool:
    """True iff the permutation maps every block onto a block."""
    if p.degree != d.n:
        raise InvalidInputError("permutation degree differs from point count")
    img = p.images
    block_set = d.block_set
    return all(
        tuple(sorted((img[a], img[b], img[c], img[e]))) in block_set
        for a, b, c, e in d.blocks
    )


# -- exhaustive search at small n -------------------------------------------


def search_designs(n: int, lam: int) -> list[Design]:
    """All supersimple 2-(n,4,lam) designs up to isomorphism, n <= 9.

    Backtracking over lexicographically increasing block lists.  The key
    pruning fact: in a completed, sorted block list, the next block after any
    prefix always contains the lexicographically least pair that is still
    below lam, so only those candidates are branched on.  Completed designs
    stream out in lexicographic order, hence the first representative of each
    isomorphism class is its lexicographically minimal labeling.
    """
    if n > 9:
        raise ScaleError("exhaustive search is supported only for n <= 9")
    if n < 4 or lam < 1:
        return []
    try:
        target = expected_block_count(n, lam)
    except InvalidInputError:
        return []
    if (lam * (n - 1)) % 3:  # replication number must be integral
        return []

    all_blocks = list(itertools.combinations(range(n), 4))
    blocks_with_pair: dict[tuple[int, int], list[Block]] = {}
    for block in all_blocks:
        for pair in itertools.combinations(block, 2):
            blocks_with_pair.setdefault(pair, []).append(block)

    pairs = list(itertools.combinations(range(n), 2))
    counts = {p: 0 for p in pairs}
    used_triples: set[tuple[int, int, int]] = set()
    chosen: list[Block] = []
    found: list[Design] = []
    reps: list[Design] = []

    def least_deficient_pair() -> tuple[int, int] | None:
        for p in pairs:
            if counts[p] < lam:
                return p
        return None

    def feasible(block: Block) -> bool:
        for pair in itertools.combinations(block, 2):
            if counts[pair] >= lam:
                return False
        for triple in itertools.combinations(block, 3):
            if triple in used_triples:
                return False
        return True

    def place(block: Block) -> None:
        chosen.append(block)
        for pair in itertools.combinations(block, 2):
            counts[pair] += 1
        for triple in itertools.combinations(block, 3):
            used_triples.add(triple)

    def unplace(block: Block) -> None:
        chosen.pop()
        for pair in itertools.combinations(block, 2):
            counts[pair] -= 1
        for triple in itertools.combinations(block, 3):
            used_triples.discard(triple)

    def extend() -> None:
        pair = least_deficient_pair()
        if pair is None:
            design = Design(
                n, list(chosen), name=f"search-n{n}-l{lam}-{len(found)}", lam=lam
            )
            found.append(design)
            if not any(are_isomorphic(design, rep) for rep in reps):
                reps.append(design)
            return
        if len(chosen) == target:
            return
        last = chosen[-1] if chosen else None
        for block in blocks_with_pair[pair]:
            if last is not None and block <= last:
                continue
            if feasible(block):
                place(block)
                extend()
                unplace(block)

    extend()
    return reps


def are_isomorphic(d1: Design, d2: Design) -> bool:
    """Point-by-point backtracking for a block-set isomorphism."""
    if d1.n != d2.n or len(d1.blocks) != len(d2.blocks):
        return False
    n = d1.n
    degree1 = [0] * n
    degree2 = [0] * n
    for b in d1.blocks:
        for x in b:
            degree1[x] += 1
    for b in d2.blocks:
        for x in b:
            degree2[x] += 1
    if sorted(degree1) != sorted(degree2):
        return False
    blocks2 = d2.block_set
    image = [-1] * n
    used = [False] * n

    def blocks_fully_mapped_ok() -> bool:
        for b in d1.blocks:
            if all(image[x] >= 0 for x in b):
                if tuple(sorted(image[x] for x in b)) not in blocks2:
                    return False
        return True

    def assign(x: int) -> bool:
        if x == n:
            return True
        for y in range(n):
            if used[y] or degree1[x] != degree2[y]:
                continue
            image[x] = y
            used[y] = True
            if blocks_fully_mapped_ok() and assign(x + 1):
                return True
            image[x] = -1
            used[y] = False
        return False

    return assign(0)


# -- JSON interchange --------------------------------------------------------


def design_to_json(d: Design) -> dict:
    data: dict = {
        "name": d.name,
        "n": d.n,
        "blocks": [list(b) for b in d.blocks],
    }
    if d.lam is not None:
        data["lambda"] = d.lam
    if d.labels is not None and d.label_dim is not None:
        data["labels"] = [f2.vec_to_bits(v, d.label_dim) for v in d.labels]
    return data


def design_from_json(data: dict) -> Design:
    labels = None
    label_dim = None
    if "labels" in data and data["labels"]:
        labels = [f2.vec_from_bits(b) for b in data["labels"]]
        label_dim = len(data["labels"][0])
    return Design(
        int(data["n"]),
        [tuple(b) for b in data["blocks"]],
        name=data.get("name", "design"),
        lam=data.get("lambda"),
        labels=labels,
        label_dim=label_dim,
    )


def dump_design(d: Design, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(design_to_json(d), fh)
        fh.write("\n")


def load_design(path: str) -> Design:
    with open(path, "r", encoding="utf-8") as fh:
        return design_from_json(json.load(fh))
