"""Truncated combinatorial models of the reducible locus in the universal cover.

Components are the lifts D_{beta,j}(m, n) for ``beta`` in a finite set of
splitting indices, ``j`` in {1, 2} and ``|m|, |n| <= radius``.  Two components
meet exactly when they share ``beta`` and differ in ``j``; there are no triple
intersections.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import lattice
from .errors import ResourceError

MAX_NBETA = 50
MAX_RADIUS = 10

# A component of the top stratum is a 6-cell, a pairwise intersection a 4-cell;
# a d-cell has compactly supported cohomology Z in degree d only.
COMPONENT_CELL_DIM = 6
PAIR_CELL_DIM = 4


@dataclass(frozen=True, order=True)
class ComponentId:
    beta: int
    kind: int
    m: int
    n: int


@dataclass(frozen=True, eq=False)
class Nerve:
    """Components in lexicographic order and intersecting pairs as index pairs.

    ``pair_index[p] = (i, j)`` with ``i < j`` refers to ``components[i]`` and
    ``components[j]``.
    """

    components: tuple[ComponentId, ...]
    pair_index: np.ndarray
    n_beta: int = 0
    radius: int = 0

    @property
    def pairs(self) -> list[tuple[ComponentId, ComponentId]]:
        return [(self.components[i], self.components[j]) for i, j in self.pair_index]

    @property
    def n_pairs(self) -> int:
        return int(self.pair_index.shape[0])

    def to_json(self) -> dict:
        return {
            "n_beta": self.n_beta,
            "radius": self.radius,
            "n_components": len(self.components),
            "n_pairs": self.n_pairs,
        }


@dataclass(frozen=True)
class GradedRanks:
    ranks: dict = field(default_factory=dict)

    def __getitem__(self, degree: int) -> int:
        return self.ranks.get(degree, 0)

    def support(self) -> set[int]:
        return {d for d, r in self.ranks.items() if r}

    def to_json(self) -> dict:
        return {str(d): r for d, r in sorted(self.ranks.items()) if r}


def intersects(c1: ComponentId, c2: ComponentId) -> bool:
    return c1.beta == c2.beta and c1.kind != c2.kind


def build_nerve(n_beta: int, radius: int) -> Nerve:
    if n_beta > MAX_NBETA or radius > MAX_RADIUS:
        raise ResourceError("nerve exceeds desk-scale limits", n_beta=n_beta, radius=radius,
                            max_n_beta=MAX_NBETA, max_radius=MAX_RADIUS)
    empty = np.zeros((0, 2), dtype=np.int64)
    if n_beta <= 0:
        return Nerve((), empty, max(n_beta, 0), radius)
    span = range(-radius, radius + 1)
    components = tuple(
        ComponentId(beta, kind, m, n)
        for beta in range(n_beta) for kind in (1, 2) for m in span for n in span
    )
    block = (2 * radius + 1) ** 2  # components per (beta, kind)
    ones = np.arange(block)
    firsts, seconds = np.meshgrid(ones, ones + block, indexing="ij")
    local = np.stack([firsts.ravel(), seconds.ravel()], axis=1)
    pair_index = np.concatenate([local + 2 * block * beta for beta in range(n_beta)]) if n_beta else empty
    return Nerve(components, pair_index, n_beta, radius)


def check_nerve(nerve: Nerve) -> bool:
    """Pairs are exactly the intersecting couples, each listed once in order."""
    comps = nerve.components
    listed = {(int(i), int(j)) for i, j in nerve.pair_index}
    if len(listed) != nerve.n_pairs or any(i >= j for i, j in listed):
        return False
    expected = {
        (i, j)
        for i in range(len(comps)) for j in range(i + 1, len(comps))
        if intersects(comps[i], comps[j])
    }
    return listed == expected


def triangle_count(nerve: Nerve) -> int:
    """Number of triples of pairwise-intersecting components."""
    nbrs: dict[int, set[int]] = {}
    for i, j in nerve.pair_index:
        nbrs.setdefault(int(i), set()).add(int(j))
        nbrs.setdefault(int(j), set()).add(int(i))
    count = 0
    for i, j in nerve.pair_index:
        count += sum(1 for k in nbrs[int(i)] & nbrs[int(j)] if k > j)
    return count


def e1_page(nerve: Nerve) -> dict[tuple[int, int], int]:
    """Nonzero entries E_1^{s,t} = H_c^t(Y_s)."""
    page = {}
    if nerve.components:
        page[(0, COMPONENT_CELL_DIM)] = len(nerve.components)
    if nerve.n_pairs:
        page[(1, PAIR_CELL_DIM)] = nerve.n_pairs
    return page


def compute_hc(nerve: Nerve) -> GradedRanks:
    """Compactly supported cohomology ranks of the union.

    d_r maps E_r^{s,t} to E_r^{s+r, t-r+1}; the populated entries (0, 6) and
    (1, 4) are never joined by such a map, so the sequence degenerates at E_1.
    """
    page = e1_page(nerve)
    for (s, t) in page:
        for (s2, t2) in page:
            r = s2 - s
            if r >= 1 and t2 == t - r + 1:
                raise AssertionError("unexpected nonzero differential target")
    ranks: dict[int, int] = {}
    for (s, t), r in page.items():
        ranks[s + t] = ranks.get(s + t, 0) + r
    return GradedRanks(ranks)


def gysin_vanishing(hc: GradedRanks, open_part_vanishing_from: int = 3,
                    ambient_real_dim: int = 8) -> set[int]:
    """Degrees k forced to satisfy H_k(X) = 0.

    Uses H_k(X - Y) -> H_k(X) -> H_c^{m-k}(Y): if the outer terms vanish, so
    does the middle.
    """
    m = ambient_real_dim
    return {
        k for k in range(0, m + 1)
        if k >= open_part_vanishing_from and hc[m - k] == 0
    }


def section_difference_matrix(n_beta: int) -> list[list[int]]:
    """Rows s_{beta,1} - s_{beta,2} in the basis (s_{0,1}, s_{0,2}, s_{1,1}, ...)."""
    rows = []
    for beta in range(n_beta):
        row = [0] * (2 * n_beta)
        row[2 * beta] = 1
        row[2 * beta + 1] = -1
        rows.append(row)
    return rows


def projection_matrix(n_beta: int) -> list[list[int]]:
    """Image of each section s_{beta,j} on the disc basis: both go to Delta_beta."""
    return [[int(col // 2 == beta) for beta in range(n_beta)] for col in range(2 * n_beta)]


def kernel_rank(n_beta: int) -> int:
    """Rank of the kernel of the projection on the truncated section lattice.

    Computed as an integer rank; the difference vectors span this kernel.
    """
    if n_beta <= 0:
        return 0
    proj = projection_matrix(n_beta)
    # kernel of x -> x P (row vectors) is the integer kernel of P^T
    kernel = lattice.integer_kernel([list(col) for col in zip(*proj)])
    diffs = section_difference_matrix(n_beta)
    if lattice.hermite_rows(kernel) != lattice.hermite_rows(diffs):
        raise AssertionError("section differences do not span the kernel")
    return lattice.rank(diffs)
