"""Integration identities on the unitary group, checked numerically.

The Weyl integration formula with the gaussian, the exponential orbital
integral (Haar Monte Carlo against the signed sum over permutations), the
limit formula for the discriminant operator, and the Fourier transform of
pi times a gaussian.
"""

from lie_airy.cartan import (
    gaussian_pi_ft_check,
    hciz_check,
    limit_formula_check,
    pi_norm_squared,
    weyl_integration_check,
)

print("(pi, pi) for n = 1..6:", [pi_norm_squared(n) for n in range(1, 7)])

for n in (2, 3):
    rep = weyl_integration_check(n)
    print(f"Weyl integration n={n}: {rep.lhs:.10f} vs {rep.rhs}  rel_err={rep.rel_err:.1e}")

rep = hciz_check(2, [1.0, -1.0], [1.0, -1.0], samples=200_000, seed=0)
print(f"orbital integral n=2: MC {rep.lhs:.5f} +- {rep.stderr_estimate:.5f}, exact {rep.rhs:.5f}")
rep = hciz_check(3, [1.0, 0.0, -1.0], [0.5, -0.2, 0.3], samples=200_000, seed=1)
print(f"orbital integral n=3: MC {rep.lhs:.5f} +- {rep.stderr_estimate:.5f}, exact {rep.rhs:.5f}")

for h in (4e-3, 2e-3, 1e-3):
    rep = limit_formula_check(2, h)
    print(f"limit formula h={h:.0e}: {rep.lhs:.9f}  (error shrinks 4x per halving)")

rep = gaussian_pi_ft_check(2)
print(f"FT(pi E) vs (-i)^r pi E: sup error {rep.rel_err:.1e}, stencil error {rep.extra['stencil_err']:.1e}")
