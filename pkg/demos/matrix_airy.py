"""Matrix Airy integral over hermitian matrices, reduced to eigenvalues.

For X with eigenvalues y the integral of exp(i tr(Y^3)/3 - i tr(XY)) is a
determinant of one-variable Airy derivatives divided by the Vandermonde of y.
Near-equal eigenvalues switch to the confluent (divided difference) form,
and the result satisfies the second-order PDE  Laplacian A + tr(X) A = 0.
"""

import numpy as np

from lie_airy import MatrixAiryConfig, kontsevich_pde_residual, matrix_airy_diag, matrix_airy_hermitian
from lie_airy.spectral import matrix_airy_details

cfg = MatrixAiryConfig(n=2)

print("generic vs confluent near a double eigenvalue at 0.5:")
for gap in (1e-1, 1e-2, 1e-3, 0.0):
    res = matrix_airy_details(cfg, [0.5 - gap / 2, 0.5 + gap / 2])
    tag = "confluent" if res.confluent_clusters else "generic"
    print(f"  gap={gap:7.0e}  {res.value.real: .12f}{res.value.imag:+.12f}i  ({tag})")

# a hermitian matrix goes through the eigenvalue solver first
H = np.array([[0.5, 0.5j], [-0.5j, 0.5]])
print(f"\nA(H) for H with spectrum (0, 1): {matrix_airy_hermitian(cfg, H):.12f}")
print(f"A(diag(0, 1)):                   {matrix_airy_diag(cfg, [0.0, 1.0]):.12f}")

print("\nPDE residual with a centred stencil, h = 1e-2:")
for y in [(0.5, -0.7), (-2.0, 1.5), (-3.0, 0.2)]:
    print(f"  y={y}  residual={kontsevich_pde_residual(cfg, y, 1e-2):.2e}")
