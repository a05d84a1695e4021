"""Cantor sets, coding measures, Riesz energies and probe-line experiments
for the dimension of images ``(f + lam * phi)(X)``."""

__version__ = "0.1.0"

from .boxdim import BoxDimEstimate, box_count_1d, box_count_2d, box_dim, graph_points, product_points
from .cantor import (
    CantorSet,
    RemovalSchedule,
    address_to_point,
    build_cantor,
    level_intervals,
    point_to_address,
)
from .energy import (
    EnergyValue,
    FubiniReport,
    classify_bounded,
    energy_profile,
    fubini_check,
    pair_lambda_integral,
    s_energy,
)
from .funcgen import (
    AffineCombo,
    CoordSeries,
    Embedding,
    coord_series_random,
    evaluate,
    modulus_bound,
    probe_member,
    zero_function,
)
from .measure import CodedMeasure, DiscreteMeasure, pullback, pushforward, uniform_coding_measure
