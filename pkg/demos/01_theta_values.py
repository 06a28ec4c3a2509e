"""Evaluating genus-2 theta functions with certified truncation.

Run with ``python demos/01_theta_values.py``.
"""

import numpy as np

from genus2theta import Characteristic, PeriodMatrix, enumerate_characteristics, theta, thetanull
from genus2theta.theta import check_parity, check_product, theta_jet

# %% A period matrix is a complex symmetric matrix with positive definite imaginary part.
omega = PeriodMatrix([[1j, 0.1 + 0.2j], [0.1 + 0.2j, 2j]])
print("Omega =\n", omega.matrix)

# %% The sixteen characteristics split into 10 even and 6 odd ones.
chars = enumerate_characteristics(2)
for delta in chars:
    res = thetanull(delta, omega)
    print(f"{str(delta):>22}  {delta.parity().value:>4}  |theta(0)| = {abs(res.value):.3e}")

# %% Every value comes with a bound on the part of the lattice sum that was left out.
delta = Characteristic((1, 1), (1, 1))
z = np.array([0.3 + 0.1j, -0.2 + 0.4j])
for target in (1e-4, 1e-8, 1e-12):
    res = theta(delta, omega, z, target_err=target)
    print(f"target {target:.0e}: radius {res.radius_used}, bound {res.truncation_bound:.2e}, value {res.value:.15f}")

# %% Even functions stay even and odd ones stay odd.
for d in (Characteristic((0, 0), (0, 0)), Characteristic((1, 0), (1, 0))):
    residual, tol = check_parity(d, omega, z)
    print(f"{d}: parity residual {residual:.1e} (tolerance {tol:.1e})")

# %% On a block-diagonal matrix the function factors into two Jacobi thetas.
r = check_product(delta, PeriodMatrix([[1j]]), PeriodMatrix([[2j]]), z)
print("product formula residual:", r)

# %% Derivatives in z come from the same lattice sum; derivatives in Omega follow from them.
jet = theta_jet(delta, omega, z)
print("grad_z:", jet.grad_z)
print("d/dOmega (11, 12, 22):", jet.omega_gradient())
