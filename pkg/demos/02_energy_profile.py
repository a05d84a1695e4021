"""
Riesz energies of the uniform coding measure
============================================

Finite s-energy of a measure certifies Hausdorff dimension at least s.  We push
the uniform measure on addresses onto a Cantor set and watch the discrete
energy as the depth grows: it settles below the dimension and blows up above it.
"""

import math

from cantorprobe import RemovalSchedule, classify_bounded, energy_profile

depths = list(range(4, 13))
thirds = RemovalSchedule.middle(1 / 3)
fat = RemovalSchedule.fat()
dim_thirds = math.log(2) / math.log(3)

for sch, s in [(thirds, 0.5), (thirds, 0.9), (fat, 0.5), (fat, 0.9)]:
    values = energy_profile(sch, depths, s)
    row = "  ".join(f"{v.value:8.3f}" for v in values)
    print(f"{sch.name:>24} s={s}:  {row}   -> {classify_bounded(values)}")

print(f"\nmiddle-thirds dimension is {dim_thirds:.4f}; the fat set has dimension 1.")

# The fat set at s = 0.9 converges, but slowly: successive ratios drop toward 1
# at a geometric rate, so short depth windows still read as growth.
values = energy_profile(fat, list(range(4, 15)), 0.9)
ratios = [b.value / a.value for a, b in zip(values, values[1:])]
print("fat s=0.9 successive ratios:", " ".join(f"{r:.4f}" for r in ratios))
