"""
Averaging the energy over a probe line
======================================

For f + lam * phi with lam uniform on [-n, n], the integral over lam of the
t-energy of the image measure has a closed form pair by pair.  fubini_check
computes it exactly and compares it against two upper bounds.
"""

from cantorprobe import (
    Embedding,
    RemovalSchedule,
    build_cantor,
    coord_series_random,
    fubini_check,
    pair_lambda_integral,
    uniform_coding_measure,
    zero_function,
)

d = 8
phi = Embedding(build_cantor(RemovalSchedule.fat(), d))
nu = uniform_coding_measure(d)

# One pair integral, with the singular point -a/b inside the range.
print("int_{-1}^{1} |0.3 + lam|^-0.5 dlam =", pair_lambda_integral(0.3, 1.0, 1.0, 0.5))

print(f"\n{'f':>6} {'t':>4} {'n':>3} {'lhs':>12} {'rhs_tight':>12} {'rhs_paper':>12} {'ratio':>8}")
for name, f in [("seed1", coord_series_random(1, d)), ("zero", zero_function(d))]:
    for t in (0.3, 0.9):
        for n in (1.0, 4.0):
            r = fubini_check(f, phi, nu, t, n)
            print(f"{name:>6} {t:4} {n:3g} {r.lhs:12.5f} {r.rhs_tight:12.5f} {r.rhs_paper:12.5f} {r.ratio_tight:8.5f}")

# With f = 0 every pair integrand is |lam|^-t |dphi|^-t, so lhs meets the tight
# bound with equality.  A random f can only lower it.
