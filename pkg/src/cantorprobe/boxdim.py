"""Box-counting dimension of finite point sets in R and R^2.

Grids are anchored at 0 with half-open cells ``[j eps, (j+1) eps)``.  A point
whose scaled coordinate lies within a relative 1e-9 of an integer is snapped
onto that grid line, so that exactly representable grid points (triadic or
dyadic endpoints) and their floating point images land in the same cell.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .cantor import CantorSet
from .errors import InsufficientScalesError, ParameterError, ResourceCapError

SATURATION = 0.9
SNAP = 1e-9
PRODUCT_CAP = 1 << 22


def _cells(coords: np.ndarray, eps: float) -> np.ndarray:
    r = np.asarray(coords, dtype=float) / eps
    nearest = np.rint(r)
    snap = np.abs(r - nearest) <= SNAP * np.maximum(1.0, np.abs(r))
    return np.where(snap, nearest, np.floor(r)).astype(np.int64)


def box_count_1d(points, eps: float) -> int:
    if not eps > 0:
        raise ParameterError(f"eps must be positive, got {eps}")
    pts = np.asarray(points, dtype=float).ravel()
    if pts.size == 0:
        return 0
    return int(np.unique(_cells(pts, eps)).size)


def box_count_2d(points, eps: float) -> int:
    if not eps > 0:
        raise ParameterError(f"eps must be positive, got {eps}")
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if pts.shape[0] == 0:
        return 0
    cx = _cells(pts[:, 0], eps)
    cy = _cells(pts[:, 1], eps)
    cx -= cx.min()
    cy -= cy.min()
    span = int(cy.max()) + 1
    if (int(cx.max()) + 1) * span < 2 ** 62:
        return int(np.unique(cx * span + cy).size)
    return int(np.unique(np.stack([cx, cy], axis=1), axis=0).shape[0])


def box_count(points, eps: float) -> int:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 2 and pts.shape[1] == 2:
        return box_count_2d(pts, eps)
    return box_count_1d(pts, eps)


@dataclass(frozen=True)
class BoxDimEstimate:
    slope: float
    intercept: float
    r_squared: float
    scales_used: list[tuple[float, int]]
    window_rule_applied: str
    scales_all: list[tuple[float, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["scales_used"] = [list(p) for p in self.scales_used]
        d["scales_all"] = [list(p) for p in self.scales_all]
        return d

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["epsilon", "count"])
        for eps, count in self.scales_all or self.scales_used:
            writer.writerow([repr(eps), count])
        return buf.getvalue()


def _fit(xs: np.ndarray, ys: np.ndarray) -> tuple[float, float, float]:
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), min(max(r2, 0.0), 1.0)


def box_dim(points, base: float = 2.0, j_min: int = 1, j_max: int = 11) -> BoxDimEstimate:
    """Least-squares slope of ``log N(eps)`` against ``log(1/eps)`` at ``eps = base**-j``.

    Scales with ``N(eps) >= 0.9 * (number of distinct points)`` are dropped as
    saturated.  A set with a single distinct point has slope 0 at every scale.
    """
    if not base > 1:
        raise ParameterError(f"base must exceed 1, got {base}")
    if not (j_max > j_min >= 0):
        raise ParameterError(f"need j_max > j_min >= 0, got {j_min}, {j_max}")
    pts = np.asarray(points, dtype=float)
    two_d = pts.ndim == 2 and pts.shape[1] == 2
    distinct = np.unique(pts, axis=0).shape[0] if two_d else np.unique(pts).size
    scales = [(float(base) ** -j, box_count(pts, float(base) ** -j)) for j in range(j_min, j_max + 1)]

    if distinct == 1:
        return BoxDimEstimate(
            0.0, 0.0, 1.0, scales, "single distinct point: slope 0 at every scale", scales
        )
    cap = SATURATION * distinct
    used = [(e, c) for e, c in scales if c < cap]
    rule = f"dropped scales with N >= {SATURATION} * {distinct} distinct points ({len(scales) - len(used)} dropped)"
    if len(used) < 3:
        raise InsufficientScalesError(f"only {len(used)} admissible scales; {rule}")
    xs = np.array([-math.log(e) for e, _ in used])
    ys = np.array([math.log(c) for _, c in used])
    slope, intercept, r2 = _fit(xs, ys)
    return BoxDimEstimate(slope, intercept, r2, used, rule, scales)


def graph_points(C_x: CantorSet, f, d: int) -> np.ndarray:
    """Points ``(x(w), f(w))`` over all addresses of length ``d``, shape (2**d, 2)."""
    return np.column_stack([C_x.midpoints(d), f.values(d)])


def product_points(xs, ys, cap: int = PRODUCT_CAP) -> np.ndarray:
    xs = np.asarray(xs, dtype=float).ravel()
    ys = np.asarray(ys, dtype=float).ravel()
    if xs.size == 0 or ys.size == 0:
        raise ParameterError("both factors must be nonempty")
    if xs.size * ys.size > cap:
        raise ResourceCapError(f"product of {xs.size} x {ys.size} points exceeds cap {cap}")
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    return np.column_stack([gx.ravel(), gy.ravel()])
