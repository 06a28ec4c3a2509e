"""Independent high-precision values of theta, used to freeze the regression constants.

Plain mpmath summation over the box |m_j| <= 30; shares no code with the package.
Run with ``python tools/theta_oracle.py``.
"""

import itertools

import mpmath as mp

mp.mp.dps = 40
RADIUS = 30


def theta(dp, dpp, omega, z):
    g = len(dp)
    a = [mp.mpf(x) / 2 for x in dp]
    b = [mp.mpf(x) / 2 for x in dpp]
    total = mp.mpc(0)
    for m in itertools.product(range(-RADIUS, RADIUS + 1), repeat=g):
        n = [m[i] + a[i] for i in range(g)]
        quad = sum(n[i] * omega[i][j] * n[j] for i in range(g) for j in range(g))
        lin = 2 * sum(n[i] * (z[i] + b[i]) for i in range(g))
        total += mp.exp(mp.pi * 1j * (quad + lin))
    return total


if __name__ == "__main__":
    print("theta_0(i, 0)         =", theta([0], [0], [[mp.mpc(0, 1)]], [0]))
    print("jtheta3 cross-check   =", mp.jtheta(3, 0, mp.exp(-mp.pi)))
    omega = [[mp.mpc(0, 1), mp.mpc(0.1, 0.2)], [mp.mpc(0.1, 0.2), mp.mpc(0, 2)]]
    z = [mp.mpc(0.1, 0.05), mp.mpc(-0.2, 0.1)]
    print("theta_[00,00](Omega,z) =", theta([0, 0], [0, 0], omega, z))
    print("theta_[10,01](Omega,z) =", theta([1, 0], [0, 1], omega, z))
