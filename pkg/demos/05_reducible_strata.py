"""Finite models of the reducible locus and what they say about homology.

Run with ``python demos/05_reducible_strata.py``.
"""

from genus2theta.strata import build_nerve, compute_hc, e1_page, gysin_vanishing, kernel_rank, triangle_count

# %% Components D_{beta,j}(m, n) meet in pairs and never in triples.
for n_beta, radius in [(1, 0), (2, 1), (3, 2)]:
    nerve = build_nerve(n_beta, radius)
    print(nerve.to_json(), "triangles:", triangle_count(nerve))

# %% The Mayer-Vietoris spectral sequence has only two nonzero entries and degenerates.
nerve = build_nerve(3, 2)
print("E1:", e1_page(nerve))
hc = compute_hc(nerve)
print("H_c ranks:", hc.to_json())

# %% Exactness in the long sequence forces the homology of the complement to vanish from degree 4 on.
print("forced zero degrees:", sorted(gysin_vanishing(hc, open_part_vanishing_from=3, ambient_real_dim=8)))

# %% One kernel class per splitting: the rank grows without bound as the truncation grows.
print("kernel ranks:", [kernel_rank(n) for n in range(0, 11)])
