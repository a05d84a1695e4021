"""
Sweeping the probe line
=======================

For each lam on a grid we push the uniform coding measure through
f + lam * phi, estimate the box dimension of the image and flag collisions.
The adversarial choice f = -phi collapses the image to one point at lam = 1.
"""

from cantorprobe.harness import ExperimentConfig, FunctionSpec, run_prevalence

cfg = ExperimentConfig(depth=12, energy_depth=8, lambda_samples=9, n=2.0, seeds=(1,))
report = run_prevalence(cfg)
print("random f, fat phi")
for r in report.runs[0].records:
    print(f"  lam={r.lam:+.2f}  slope={r.estimate.slope:.3f}  energy={r.energy.value:9.3f}  collapse={r.collapse}")
print("  summary:", report.summary)

adversary = ExperimentConfig(depth=12, energy_depth=8, lambda_samples=5, n=2.0,
                             f=FunctionSpec("scaled-phi", scale=-1.0))
print("\nf = -phi")
for r in run_prevalence(adversary).runs[0].records:
    print(f"  lam={r.lam:+.2f}  slope={r.estimate.slope:.3f}  energy={r.energy.value}  collapse={r.collapse}")
