"""Cantor sets in [0, 1] built from a removal schedule.

A Cantor set is stored as the list of level lengths ``lengths[k]``: every
level-k interval has length ``lengths[k]`` and each parent interval keeps
its two endpoints, losing an open middle piece.  Intervals are addressed by
binary words read left to right, ``"0"`` for the left child and ``"1"`` for
the right child; the empty word is the root ``[0, 1]``.

Points at a finite depth are represented by interval midpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotInSetError, ParameterError, RangeError

Address = str

_BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class RemovalSchedule:
    """How much is removed from each interval at each generation.

    ``kind`` is one of ``"middle"`` (a fixed middle ratio ``alpha`` of each
    interval is removed), ``"fat"`` (an absolute length ``4**-k`` is removed
    at step k, leaving a set of Lebesgue measure 1/2) or ``"lean"``
    (``lengths[k] = 2**-(2**k)``, a set of dimension zero).
    """

    kind: str
    alpha: float | None = None

    def __post_init__(self):
        if self.kind == "middle":
            if self.alpha is None or not (0.0 < self.alpha < 1.0):
                raise ParameterError(f"middle ratio must lie in (0, 1), got {self.alpha!r}")
        elif self.kind in ("fat", "lean"):
            if self.alpha is not None:
                raise ParameterError(f"schedule {self.kind!r} takes no ratio")
        else:
            raise ParameterError(f"unknown schedule kind {self.kind!r}")

    @classmethod
    def middle(cls, alpha: float = 1.0 / 3.0) -> RemovalSchedule:
        return cls("middle", float(alpha))

    @classmethod
    def fat(cls) -> RemovalSchedule:
        return cls("fat")

    @classmethod
    def lean(cls) -> RemovalSchedule:
        return cls("lean")

    @classmethod
    def parse(cls, text: str) -> RemovalSchedule:
        """Parse ``middle:<ratio>``, ``middle`` (thirds), ``fat`` or ``lean``."""
        text = text.strip()
        name, _, arg = text.partition(":")
        if name == "middle":
            try:
                return cls.middle(float(arg) if arg else 1.0 / 3.0)
            except ValueError as exc:
                raise ParameterError(f"bad middle ratio in {text!r}") from exc
        if name in ("fat", "lean") and not arg:
            return cls(name)
        raise ParameterError(f"unrecognised schedule {text!r}")

    @property
    def name(self) -> str:
        if self.kind == "middle":
            return f"middle:{self.alpha!r}"
        return self.kind

    def lengths(self, depth: int) -> tuple[float, ...]:
        """Level lengths ``l_0 = 1, l_1, ..., l_depth``."""
        out = [1.0]
        for k in range(1, depth + 1):
            prev = out[-1]
            if self.kind == "middle":
                out.append(prev * (1.0 - self.alpha) / 2.0)
            elif self.kind == "fat":
                out.append((prev - 4.0 ** -k) / 2.0)
            else:
                out.append(2.0 ** -(2 ** k) if 2 ** k < 1100 else 0.0)
        return tuple(out)


@dataclass(frozen=True)
class CantorSet:
    schedule: RemovalSchedule
    depth: int
    lengths: tuple[float, ...] = field(init=False, repr=False)
    # offset of the right child's left endpoint from the parent's, per level
    shifts: tuple[float, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if int(self.depth) != self.depth or self.depth < 1:
            raise ParameterError(f"depth must be a positive integer, got {self.depth!r}")
        lengths = self.schedule.lengths(self.depth)
        shifts = (0.0,) + tuple(lengths[k - 1] - lengths[k] for k in range(1, self.depth + 1))
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "shifts", shifts)

    def _check_level(self, k: int):
        if not (0 <= k <= self.depth):
            raise RangeError(f"level {k} outside 0..{self.depth}")

    def lefts(self, k: int) -> np.ndarray:
        """Left endpoints of the 2**k level-k intervals in address order."""
        self._check_level(k)
        lefts = np.zeros(1)
        for level in range(1, k + 1):
            nxt = np.empty(2 * lefts.size)
            nxt[0::2] = lefts
            nxt[1::2] = lefts + self.shifts[level]
            lefts = nxt
        return lefts

    def midpoints(self, k: int) -> np.ndarray:
        """Midpoints of the level-k intervals; bit-identical to :func:`address_to_point`."""
        return self.lefts(k) + self.lengths[k] / 2.0

    def level_intervals(self, k: int) -> list[tuple[float, float]]:
        length = self.lengths[k] if 0 <= k <= self.depth else None
        return [(float(a), length) for a in self.lefts(k)]

    def total_length(self, k: int) -> float:
        self._check_level(k)
        return 2 ** k * self.lengths[k]


def build_cantor(schedule: RemovalSchedule, depth: int) -> CantorSet:
    return CantorSet(schedule, depth)


def level_intervals(C: CantorSet, k: int) -> list[tuple[float, float]]:
    return C.level_intervals(k)


def _check_address(addr: Address):
    if any(ch not in "01" for ch in addr):
        raise ParameterError(f"address must be a binary word, got {addr!r}")


def address_to_index(addr: Address) -> int:
    _check_address(addr)
    return int(addr, 2) if addr else 0


def index_to_address(index: int, length: int) -> Address:
    return format(index, f"0{length}b") if length else ""


def all_addresses(length: int) -> list[Address]:
    return [index_to_address(i, length) for i in range(2 ** length)]


def address_to_point(C: CantorSet, addr: Address) -> float:
    """Midpoint of the interval selected by ``addr``."""
    _check_address(addr)
    if len(addr) > C.depth:
        raise RangeError(f"address of length {len(addr)} exceeds depth {C.depth}")
    left = 0.0
    for level, bit in enumerate(addr, start=1):
        if bit == "1":
            left = left + C.shifts[level]
    return left + C.lengths[len(addr)] / 2.0


def point_to_address(C: CantorSet, x: float, depth: int) -> Address:
    """Address of the level-``depth`` interval containing ``x``.

    Raises NotInSetError when ``x`` falls in a removed gap.
    """
    if not (0 <= depth <= C.depth):
        raise RangeError(f"depth {depth} outside 0..{C.depth}")
    if not (-_BOUNDARY_TOL <= x <= 1.0 + _BOUNDARY_TOL):
        raise NotInSetError(f"{x!r} lies outside [0, 1]")
    bits = []
    left = 0.0
    for level in range(1, depth + 1):
        length = C.lengths[level]
        right_left = left + C.shifts[level]
        if x <= left + length + _BOUNDARY_TOL:
            bits.append("0")
        elif x >= right_left - _BOUNDARY_TOL:
            bits.append("1")
            left = right_left
        else:
            raise NotInSetError(f"{x!r} lies in a gap removed at level {level}")
    return "".join(bits)


def similarity_dimension(alpha: float) -> float:
    """Dimension ``log 2 / log(2 / (1 - alpha))`` of the middle-alpha set."""
    return math.log(2.0) / math.log(2.0 / (1.0 - alpha))
