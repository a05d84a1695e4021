"""Finite atomic measures on code space and on the real line."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .cantor import CantorSet, address_to_index, index_to_address, point_to_address
from .errors import NotInSetError, ParameterError

MASS_TOL = 1e-12
MIDPOINT_TOL = 1e-12


def _check_mass(weights: np.ndarray):
    if weights.size == 0:
        raise ParameterError("a probability measure needs at least one atom")
    if not np.all(weights > 0):
        raise ParameterError("atom weights must be strictly positive")
    total = math.fsum(weights.tolist())
    if abs(total - 1.0) > MASS_TOL:
        raise ParameterError(f"weights sum to {total!r}, not 1")


@dataclass(frozen=True, eq=False)
class CodedMeasure:
    """Probability measure on the addresses of one fixed length ``depth``.

    Addresses are stored by integer index (most significant bit first).
    """

    depth: int
    indices: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        indices = np.asarray(self.indices, dtype=np.int64)
        weights = np.asarray(self.weights, dtype=float)
        if indices.shape != weights.shape or indices.ndim != 1:
            raise ParameterError("indices and weights must be 1-D arrays of equal length")
        if np.any(indices < 0) or np.any(indices >= 2 ** self.depth):
            raise ParameterError(f"address index outside 0..2**{self.depth} - 1")
        if np.unique(indices).size != indices.size:
            raise ParameterError("duplicate addresses")
        _check_mass(weights)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_atoms(cls, atoms: dict[str, float]) -> CodedMeasure:
        lengths = {len(a) for a in atoms}
        if len(lengths) != 1:
            raise ParameterError("all addresses must share one length")
        (depth,) = lengths
        keys = list(atoms)
        return cls(depth, [address_to_index(a) for a in keys], [atoms[a] for a in keys])

    @property
    def atoms(self) -> dict[str, float]:
        return {
            index_to_address(int(i), self.depth): float(w)
            for i, w in zip(self.indices, self.weights)
        }

    def __len__(self):
        return self.indices.size


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Probability measure with finitely many atoms on the real line.

    Locations may repeat; :meth:`canonical` merges bit-identical ones.
    """

    locations: np.ndarray
    weights: np.ndarray
    merged: int = field(default=0)

    def __post_init__(self):
        locations = np.asarray(self.locations, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if locations.shape != weights.shape or locations.ndim != 1:
            raise ParameterError("locations and weights must be 1-D arrays of equal length")
        if not np.all(np.isfinite(locations)):
            raise ParameterError("atom locations must be finite")
        _check_mass(weights)
        object.__setattr__(self, "locations", locations)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.locations.size

    @property
    def is_canonical(self) -> bool:
        return np.unique(self.locations).size == self.locations.size

    def canonical(self) -> DiscreteMeasure:
        """Sorted, with bit-identical locations merged and their weights summed."""
        uniq, inverse = np.unique(self.locations, return_inverse=True)
        weights = np.bincount(inverse, weights=self.weights, minlength=uniq.size)
        return DiscreteMeasure(uniq, weights, merged=self.merged + self.locations.size - uniq.size)

    def atoms(self) -> list[tuple[float, float]]:
        return [(float(x), float(w)) for x, w in zip(self.locations, self.weights)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["location", "weight"])
        for x, w in self.atoms():
            writer.writerow([repr(x), repr(w)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> DiscreteMeasure:
        rows = list(csv.DictReader(io.StringIO(text)))
        return cls([float(r["location"]) for r in rows], [float(r["weight"]) for r in rows])


def uniform_coding_measure(d: int) -> CodedMeasure:
    if d < 1:
        raise ParameterError(f"depth must be >= 1, got {d}")
    n = 2 ** d
    return CodedMeasure(d, np.arange(n), np.full(n, 1.0 / n))


def pushforward(nu: CodedMeasure, g, merge: bool = True) -> DiscreteMeasure:
    """Image of ``nu`` under the code function ``g``.

    Bit-identical values merge unless ``merge`` is false, in which case the
    atoms stay in address order, one per atom of ``nu``.
    """
    values = g.values(nu.depth)[nu.indices]
    image = DiscreteMeasure(values, nu.weights)
    return image.canonical() if merge else image


def pullback(mu: DiscreteMeasure, C: CantorSet, d: int) -> CodedMeasure:
    """Transport ``mu`` back to code space through the depth-``d`` coding of ``C``.

    Every atom must sit on a level-``d`` midpoint of ``C``.
    """
    mids = C.midpoints(d)
    indices = []
    for x in mu.locations:
        addr = point_to_address(C, float(x), d)
        idx = address_to_index(addr)
        if abs(mids[idx] - x) > MIDPOINT_TOL:
            raise NotInSetError(f"{x!r} is not a level-{d} midpoint")
        indices.append(idx)
    return CodedMeasure(d, indices, mu.weights)
