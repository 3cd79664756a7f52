"""Permutations and permutation groups with exact orders.

Composition is left-to-right throughout the package: ``x^(g*h) = (x^g)^h``,
so ``(g * h).images[x] == h.images[g.images[x]]``.

Groups are represented by a deterministic Schreier-Sims stabilizer chain:
base points are always the smallest point moved by the generator that forced
them, orbits are explored breadth-first with generators in insertion order,
and no randomization is used anywhere, so orders, membership tests and the
chain itself are bit-reproducible.  Incoming generators are sifted first and
redundant ones never enter the chain, which keeps strong generating sets
small even when a group is handed thousands of generators.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Sequence

from .errors import DimensionError, InvalidInputError

RawPerm = tuple[int, ...]


def _mul(p: RawPerm, q: RawPerm) -> RawPerm:
    """Left-to-right product: apply p, then q."""
    return tuple(q[i] for i in p)


def _inv(p: RawPerm) -> RawPerm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _is_identity(p: RawPerm) -> bool:
    return all(i == j for i, j in enumerate(p))


class Permutation:
    """A permutation of {0, ..., n-1} in image form."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(n)):
            raise InvalidInputError("images are not a bijection on 0..n-1")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        images = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise DimensionError("degrees differ")
        p = Permutation.__new__(Permutation)
        p.images = _mul(self.images, other.images)
        return p

    def inverse(self) -> "Permutation":
        p = Permutation.__new__(Permutation)
        p.images = _inv(self.images)
        return p

    def conjugate(self, by: "Permutation") -> "Permutation":
        """self^by = by^-1 * self * by."""
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return _is_identity(self.images)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.images) if i != j)

    def order(self) -> int:
        result = 1
        for cycle in self.cycles():
            result = math.lcm(result, len(cycle))
        return result

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cycle = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cycle.append(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()})"


class PermGroup:
    """Permutation group with a deterministic stabilizer chain."""

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise InvalidInputError("degree required for an empty generator list")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise DimensionError("generators act on different point counts")
        self.degree = degree
        self.generators = tuple(g for g in gens if not g.is_identity())

        self._base: list[int] = []
        self._sgs: list[RawPerm] = []
        self._sgs_level: list[int] = []
        self._transversals: list[dict[int, RawPerm]] = []
        for g in self.generators:
            residue, level = self._sift_raw(g.images, 0)
            if _is_identity(residue):
                continue
            added_at = self._append_strong_gen(residue)
            self._schreier_sims_from(added_at)
        self._order = 1
        for t in self._transversals:
            self._order *= len(t)

    # -- chain construction -------------------------------------------------

    def _append_strong_gen(self, p: RawPerm) -> int:
        level = 0
        while level < len(self._base) and p[self._base[level]] == self._base[level]:
            level += 1
        if level == len(self._base):
            moved = next(i for i, j in enumerate(p) if i != j)
            self._base.append(moved)
            self._transversals.append({moved: tuple(range(self.degree))})
        self._sgs.append(p)
        self._sgs_level.append(level)
        return level

    def _level_gens(self, level: int) -> list[RawPerm]:
        return [g for g, l in zip(self._sgs, self._sgs_level) if l >= level]

    def _rebuild_transversal(self, level: int) -> None:
        b = self._base[level]
        gens = self._level_gens(level)
        identity = tuple(range(self.degree))
        trans = {b: identity}
        queue = deque([b])
        while queue:
            x = queue.popleft()
            ux = trans[x]
            for g in gens:
                y = g[x]
                if y not in trans:
                    trans[y] = _mul(ux, g)
                    queue.append(y)
        self._transversals[level] = trans

    def _sift_raw(self, p: RawPerm, start: int) -> tuple[RawPerm, int]:
        for level in range(start, len(self._base)):
            x = p[self._base[level]]
            t = self._transversals[level].get(x)
            if t is None:
                return p, level
            p = _mul(p, _inv(t))
        return p, len(self._base)

    def _schreier_sims_from(self, start: int) -> None:
        i = start
        while i >= 0:
            self._rebuild_transversal(i)
            pending = self._check_level(i)
            if pending is None:
                i -= 1
            else:
                i = pending

    def _check_level(self, i: int) -> int | None:
        """Sift this level's Schreier generators; report where a new one landed."""
        trans = self._transversals[i]
        gens = self._level_gens(i)
        inverses = {x: _inv(t) for x, t in trans.items()}
        for x in trans:
            ux = trans[x]
            for g in gens:
                y = g[x]
                sg = _mul(ux, g)
                uy = trans[y]
                if sg == uy:
                    continue
                residue, _ = self._sift_raw(_mul(sg, inverses[y]), i + 1)
                if not _is_identity(residue):
                    return self._append_strong_gen(residue)
        return None

    # -- queries ------------------------------------------------------------

    def order(self) -> int:
        return self._order

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(self._base)

    def strong_generators(self) -> list[Permutation]:
        return [Permutation(g) for g in self._sgs]

    def sift(self, p: Permutation) -> Permutation:
        """Residue of p after stripping through the chain; identity iff member."""
        if p.degree != self.degree:
            raise DimensionError("degree mismatch")
        residue, _ = self._sift_raw(p.images, 0)
        return Permutation(residue)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DimensionError("degree mismatch")
        residue, _ = self._sift_raw(p.images, 0)
        return _is_identity(residue)

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def orbits(self) -> list[tuple[int, ...]]:
        """Orbit partition of {0..n-1}, each orbit sorted, ordered by minimum."""
        parent = list(range(self.degree))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for x, y in enumerate(g.images):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
        groups: dict[int, list[int]] = {}
        for x in range(self.degree):
            groups.setdefault(find(x), []).append(x)
        return [tuple(groups[r]) for r in sorted(groups)]

    def orbit_of(self, x: int) -> tuple[int, ...]:
        for orb in self.orbits():
            if x in orb:
                return orb
        raise InvalidInputError("point out of range")

    def is_transitive(self, points: Iterable[int] | None = None) -> bool:
        """Transitive on the given points (default: the full domain)."""
        domain = set(range(self.degree)) if points is None else set(points)
        if not domain:
            return True
        start = min(domain)
        orbit = set(self.orbit_of(start))
        return domain <= orbit

    def minimal_block_partition(self, alpha: int, beta: int) -> list[tuple[int, ...]]:
        """Finest block system of the orbit of alpha merging alpha with beta."""
        domain = self.orbit_of(alpha)
        if beta not in domain:
            raise InvalidInputError("points lie in different orbits")
        parent = {x: x for x in domain}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        pending = [(alpha, beta)]
        gen_images = [g.images for g in self.generators]
        while pending:
            x, y = pending.pop()
            rx, ry = find(x), find(y)
            if rx == ry:
                continue
            parent[max(rx, ry)] = min(rx, ry)
            for img in gen_images:
                pending.append((img[x], img[y]))
        blocks: dict[int, list[int]] = {}
        for x in domain:
            blocks.setdefault(find(x), []).append(x)
        return [tuple(sorted(b)) for b in sorted(blocks.values())]

    def nontrivial_minimal_blocks(
        self, points: Iterable[int] | None = None
    ) -> list[list[tuple[int, ...]]]:
        """Distinct nontrivial minimal block systems on the given orbit."""
        domain = sorted(set(range(self.degree)) if points is None else set(points))
        if not self.is_transitive(domain):
            raise InvalidInputError("block systems require a transitive action")
        alpha = domain[0]
        seen = set()
        systems = []
        for beta in domain[1:]:
            partition = self.minimal_block_partition(alpha, beta)
            if len(partition) in (1, len(domain)):
                continue
            key = tuple(partition)
            if key not in seen:
                seen.add(key)
                systems.append(partition)
        return systems

    def is_primitive(self, points: Iterable[int] | None = None) -> bool:
        domain = sorted(set(range(self.degree)) if points is None else set(points))
        if not self.is_transitive(domain):
            raise InvalidInputError("primitivity requires a transitive action")
        if len(domain) <= 2:
            return True
        alpha = domain[0]
        for beta in domain[1:]:
            if len(self.minimal_block_partition(alpha, beta)) != 1:
                return False
        return True

    def contains_alternating(self, n: int | None = None) -> bool:
        """Numeric test |G| in {n!/2, n!} for the alternating/symmetric group."""
        if n is None:
            n = self.degree
        full = math.factorial(n)
        return self._order in (full // 2, full)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self._order})"
