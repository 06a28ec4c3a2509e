"""How Sp4(Z) moves period matrices and permutes characteristics.

Run with ``python demos/02_symplectic_action.py`` (takes a few seconds).
"""

import numpy as np

from genus2theta import PeriodMatrix, act_on_siegel, enumerate_characteristics, reduce_mod_lattice
from genus2theta.siegel import is_block_reducible, random_symplectic, sp4_generators
from genus2theta.theta import characteristic_map, heat_residual

omega = PeriodMatrix([[0.1 + 1.1j, 0.2 + 0.3j], [0.2 + 0.3j, -0.2 + 1.4j]])
gens = sp4_generators()

# %% The action is a group action, up to rounding.
rng = np.random.default_rng(1)
M1, M2 = random_symplectic(2, rng), random_symplectic(2, rng)
gap = np.abs(act_on_siegel(M1 @ M2, omega).matrix - act_on_siegel(M1, act_on_siegel(M2, omega)).matrix).max()
print("composition mismatch:", gap)

# %% A product of elliptic curves need not look block diagonal after a change of frame.
prod = PeriodMatrix.diagonal(1j, 2j)
moved = act_on_siegel(gens["J"] @ gens["T12"], prod)
print("block diagonal before/after:", is_block_reducible(prod), is_block_reducible(moved))

# %% Points of C^2 reduce into the fundamental parallelotope.
pt = reduce_mod_lattice(prod, [2.25, 0.5 + 2j])
print("reduced:", pt.z, "lattice offsets:", [m.tolist() for m in pt.lattice_coords])

# %% Each generator induces a parity-preserving permutation of the 16 characteristics.
chars = enumerate_characteristics(2)
for name, M in gens.items():
    mapping = characteristic_map(M, omega)
    perm = [chars.index(mapping[d]) for d in chars]
    print(f"{name:>8}: {perm}")

# %% The heat equation ties Omega-derivatives to second z-derivatives.
print("heat residual:", heat_residual(chars[15], omega, np.array([0.2 + 0.1j, -0.1 + 0.3j])))
