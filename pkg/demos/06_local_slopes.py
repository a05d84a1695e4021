"""
How far out is the limit?
=========================

A box-count slope over a fixed window of scales is only a snapshot.  Local
slopes log2(N(2^-(j+1)) / N(2^-j)) for the image of a random f show the
estimate still climbing at the finest scales a desk-scale run can reach.
"""

import math

import numpy as np

from cantorprobe import box_count_1d, coord_series_random

for d in (14, 18):
    f = coord_series_random(1, d)
    vals = f.values(d)
    distinct = np.unique(vals).size
    counts = [box_count_1d(vals, 2.0 ** -j) for j in range(0, d + 1)]
    local = [math.log2(b / a) for a, b in zip(counts, counts[1:])]
    print(f"depth {d} ({distinct} distinct values)")
    for j, (c, s) in enumerate(zip(counts[1:], local), start=1):
        flag = "  saturated" if c >= 0.9 * distinct else ""
        print(f"  j={j:2d}  N={c:7d}  local slope {s:.3f}{flag}")
