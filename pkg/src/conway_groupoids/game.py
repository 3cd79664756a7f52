"""Interactive counter-sliding sessions on a supersimple design.

A session tracks the hole position, the visited points, and the accumulated
permutation, which always equals the move sequence over (start :: history).
A session is closed when the hole is back at the start; its permutation then
lies in the hole stabilizer by construction, and the sift-based membership
test double-checks that.
"""

from __future__ import annotations

import os
import random
import uuid

from . import groupoid
from .design import Design, require_valid
from .errors import InvalidInputError
from .perm import Permutation


def seed_from_env() -> int | None:
    """CG_SEED as an unsigned 64-bit decimal, if set."""
    raw = os.environ.get("CG_SEED")
    if raw is None or raw == "":
        return None
    value = int(raw)
    if not (0 <= value < 2**64):
        raise InvalidInputError("CG_SEED must be an unsigned 64-bit decimal")
    return value


class GameSession:
    def __init__(self, design: Design, start: int = 0, seed: int | None = None):
        require_valid(design)
        if not (0 <= start < design.n):
            raise InvalidInputError("start point out of range")
        self.id = uuid.uuid4().hex
        self.design = design
        self.start = start
        self.history: list[int] = []
        self.perm = Permutation.identity(design.n)
        self._rng = random.Random(seed)

    @property
    def hole(self) -> int:
        return self.history[-1] if self.history else self.start

    @property
    def closed(self) -> bool:
        return self.hole == self.start

    def move(self, to: int) -> None:
        if not (0 <= to < self.design.n):
            raise InvalidInputError("destination out of range")
        if to == self.hole:
            raise InvalidInputError("destination is the current hole")
        self.perm = self.perm * groupoid.elementary_move(self.design, self.hole, to)
        self.history.append(to)
        if __debug__:
            assert self.perm == groupoid.move_sequence(
                self.design, [self.start] + self.history
            )

    def undo(self) -> None:
        if not self.history:
            raise InvalidInputError("nothing to undo")
        self.history.pop()
        self.perm = groupoid.move_sequence(self.design, [self.start] + self.history)

    def reset(self) -> None:
        self.history.clear()
        self.perm = Permutation.identity(self.design.n)

    def scramble(self, steps: int) -> None:
        if steps < 0:
            raise InvalidInputError("steps must be nonnegative")
        for _ in range(steps):
            choices = [x for x in range(self.design.n) if x != self.hole]
            self.move(self._rng.choice(choices))

    @property
    def displaced(self) -> int:
        return sum(1 for i, j in enumerate(self.perm.images) if i != j)

    def in_hole_stabilizer(self) -> bool | None:
        """Sift the accumulated permutation when the walk is closed."""
        if not self.closed:
            return None
        return groupoid.hole_stabilizer(self.design, self.start).contains(self.perm)

    def state(self) -> dict:
        return {
            "hole": self.hole,
            "start": self.start,
            "closed": self.closed,
            "is_identity": self.perm.is_identity(),
            "permutation": list(self.perm.images),
            "history": list(self.history),
            "displaced": self.displaced,
            "in_hole_stabilizer": self.in_hole_stabilizer(),
        }
