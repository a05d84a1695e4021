"""
Graphs and products at desk scale
=================================

Box-count slopes for X, f(X), the graph of f over X and the product X x f(X),
for three choices of X.  These are finite-scale estimates; the printed window
metadata says which scales entered each fit.
"""

from cantorprobe.cantor import RemovalSchedule
from cantorprobe.harness import ExperimentConfig, FunctionSpec, run_graph

cases = [
    ("fat, random f", ExperimentConfig(cantor=RemovalSchedule.fat(), depth=12, seeds=(1,))),
    ("lean, random f", ExperimentConfig(cantor=RemovalSchedule.lean(), depth=12, seeds=(1,))),
    ("thirds, f = 0", ExperimentConfig(cantor=RemovalSchedule.middle(1 / 3), depth=12, f=FunctionSpec("zero"))),
]
for label, cfg in cases:
    (run,) = run_graph(cfg).runs
    slopes = {k: run[k]["slope"] for k in ("est_X", "est_fX", "est_graph", "est_product")}
    print(f"{label:>15}: " + "  ".join(f"{k[4:]}={v:.3f}" for k, v in slopes.items()), run["checks"])
    print(f"{'':>17}{run['est_graph']['window_rule_applied']}")
