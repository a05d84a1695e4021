"""
Three Cantor sets and their binary coding
=========================================

Every point of a Cantor set built by repeated removal has a binary address:
0 for the left child, 1 for the right.  Here we build the three schedules the
package knows about and walk a few addresses back and forth.
"""

import numpy as np

from cantorprobe import RemovalSchedule, address_to_point, build_cantor, point_to_address
from cantorprobe.cantor import similarity_dimension

schedules = [RemovalSchedule.middle(1 / 3), RemovalSchedule.fat(), RemovalSchedule.lean()]

# interval length and total length per level
for sch in schedules:
    C = build_cantor(sch, 8)
    print(f"{sch.name:>24}  l_8 = {C.lengths[8]:.3e}   total length at level 8 = {C.total_length(8):.6f}")

# The fat set keeps half of [0, 1] in the limit, the thirds set keeps nothing.
fat = build_cantor(RemovalSchedule.fat(), 20)
print("\nfat total length at level 20:", fat.total_length(20))

# Addresses are strings; points are the midpoints of the addressed intervals.
thirds = build_cantor(RemovalSchedule.middle(1 / 3), 6)
for addr in ("000000", "010101", "111111"):
    x = address_to_point(thirds, addr)
    print(f"{addr} -> {x:.10f} -> {point_to_address(thirds, x, 6)}")

# Level-d midpoints are strictly increasing in address order, which makes the
# coding an order-preserving homeomorphism at every finite depth.
mids = thirds.midpoints(6)
print("\nmidpoints increasing:", bool(np.all(np.diff(mids) > 0)))
print("similarity dimension of middle thirds:", similarity_dimension(1 / 3))

# The lean schedule shrinks like 2**(-2**k).  Past level 6 the interval
# widths fall below double resolution next to their left endpoints.
lean = build_cantor(RemovalSchedule.lean(), 10)
for k in range(4, 11):
    print(f"lean level {k}: {np.unique(lean.midpoints(k)).size:5d} distinct midpoints of {2 ** k}")
