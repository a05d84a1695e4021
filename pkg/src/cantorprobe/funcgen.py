"""Continuous functions on code space.

Three families cover everything the experiments need:

* :class:`CoordSeries` -- ``c0 + sum_k c_k (2 w_k - 1)``, a random "arbitrary" f;
* :class:`Embedding` -- the coding map of a Cantor set (address -> midpoint);
* :class:`AffineCombo` -- ``alpha * f + beta * g``, used to form ``f + lam * phi``.

Every function can be evaluated at a single address or, vectorised, at all
``2**d`` addresses of length ``d`` in lexicographic order.  Both paths perform
the same floating point operations in the same order, so they agree bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .cantor import Address, CantorSet, address_to_point, _check_address
from .errors import ParameterError, RangeError
from .rng import SplitMix64


@dataclass(frozen=True)
class CoordSeries:
    coeffs: tuple[float, ...]
    offset: float = 0.0

    @property
    def max_depth(self) -> int:
        return len(self.coeffs)

    def _check(self, length: int):
        if length > self.max_depth:
            raise RangeError(f"series has {self.max_depth} coordinates, address has {length}")

    def evaluate(self, addr: Address) -> float:
        _check_address(addr)
        self._check(len(addr))
        value = self.offset
        for c, bit in zip(self.coeffs, addr):
            value = value + c if bit == "1" else value - c
        return value

    def values(self, d: int) -> np.ndarray:
        self._check(d)
        vals = np.array([self.offset])
        for c in self.coeffs[:d]:
            nxt = np.empty(2 * vals.size)
            nxt[0::2] = vals - c
            nxt[1::2] = vals + c
            vals = nxt
        return vals

    def modulus_bound(self, j: int) -> float:
        return 2.0 * sum(abs(c) for c in self.coeffs[j:])


@dataclass(frozen=True)
class Embedding:
    cantor: CantorSet

    @property
    def max_depth(self) -> int:
        return self.cantor.depth

    def evaluate(self, addr: Address) -> float:
        return address_to_point(self.cantor, addr)

    def values(self, d: int) -> np.ndarray:
        if d > self.max_depth:
            raise RangeError(f"embedding built to depth {self.max_depth}, asked for {d}")
        return self.cantor.midpoints(d)

    def modulus_bound(self, j: int) -> float:
        if j > self.cantor.depth:
            return 0.0
        return self.cantor.lengths[j]


@dataclass(frozen=True)
class AffineCombo:
    """``alpha * f + beta * g``."""

    f: "CodeFunction"
    g: "CodeFunction"
    alpha: float = 1.0
    beta: float = 1.0

    @property
    def max_depth(self) -> int:
        return min(self.f.max_depth, self.g.max_depth)

    def evaluate(self, addr: Address) -> float:
        return self.alpha * self.f.evaluate(addr) + self.beta * self.g.evaluate(addr)

    def values(self, d: int) -> np.ndarray:
        return self.alpha * self.f.values(d) + self.beta * self.g.values(d)

    def modulus_bound(self, j: int) -> float:
        return abs(self.alpha) * self.f.modulus_bound(j) + abs(self.beta) * self.g.modulus_bound(j)


CodeFunction = Union[CoordSeries, Embedding, AffineCombo]


def geometric_decay(m: int, ratio: float = 0.5) -> list[float]:
    """Scales ``ratio**k`` for k = 1..m."""
    return [ratio ** k for k in range(1, m + 1)]


def coord_series_random(seed: int, m: int, decay: float | Sequence[float] = 0.5) -> CoordSeries:
    """Random coordinate series with ``c_k = sigma_k * u_k``, ``u_k ~ U[-1, 1)``.

    ``decay`` is either a geometric ratio or the explicit scales ``sigma_1..sigma_m``.
    The offset is zero; the uniforms come from SplitMix64 seeded with ``seed``.
    """
    if m < 1:
        raise ParameterError(f"series length must be >= 1, got {m}")
    if isinstance(decay, (int, float)):
        scales = geometric_decay(m, float(decay))
    else:
        scales = [float(s) for s in decay]
        if len(scales) != m:
            raise ParameterError(f"expected {m} scales, got {len(scales)}")
    if any(s < 0 for s in scales):
        raise ParameterError("decay scales must be nonnegative")
    uniforms = SplitMix64(seed).symmetric(m)
    return CoordSeries(tuple(s * u for s, u in zip(scales, uniforms)))


def zero_function(m: int = 64) -> CoordSeries:
    return CoordSeries((0.0,) * m)


def combo(f: CodeFunction, g: CodeFunction, alpha: float = 1.0, beta: float = 1.0) -> AffineCombo:
    return AffineCombo(f, g, float(alpha), float(beta))


def probe_member(f: CodeFunction, phi: CodeFunction, lam: float) -> AffineCombo:
    """The function ``f + lam * phi`` on the probe line through ``f``."""
    return AffineCombo(f, phi, 1.0, float(lam))


def evaluate(g: CodeFunction, addr: Address) -> float:
    return g.evaluate(addr)


def modulus_bound(g: CodeFunction, j: int) -> float:
    if j < 0:
        raise ParameterError(f"j must be >= 0, got {j}")
    return g.modulus_bound(j)
