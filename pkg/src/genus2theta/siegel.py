"""Siegel upper half-space, integral symplectic matrices and the torus C^g / Lambda(Omega).

Conventions: ``z`` is a row vector; the lattice is Z^g + Z^g Omega, i.e. integer
combinations of the unit vectors and of the rows of Omega.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, NumericInstabilityError

SYMMETRY_TOL = 1e-12
COND_LIMIT = 1e12


def _check_period(matrix: np.ndarray) -> None:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
        raise DomainError("period matrix must be square", shape=list(matrix.shape))
    if not np.all(np.isfinite(matrix)):
        raise DomainError("period matrix has non-finite entries")
    asym = float(np.max(np.abs(matrix - matrix.T)))
    if asym > SYMMETRY_TOL:
        raise DomainError("period matrix is not symmetric", asymmetry=asym)
    imag = (matrix.imag + matrix.imag.T) / 2
    try:
        np.linalg.cholesky(imag)
    except np.linalg.LinAlgError:
        raise DomainError("imaginary part is not positive definite") from None


@dataclass(frozen=True, eq=False)
class PeriodMatrix:
    """A point of h_g."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        _check_period(m)
        m = (m + m.T) / 2
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def g(self) -> int:
        return self.matrix.shape[0]

    @property
    def real(self) -> np.ndarray:
        return self.matrix.real

    @property
    def imag(self) -> np.ndarray:
        return self.matrix.imag

    def __getitem__(self, idx):
        return self.matrix[idx]

    def __eq__(self, other):
        return isinstance(other, PeriodMatrix) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def to_json(self) -> list:
        return [[[float(x.real), float(x.imag)] for x in row] for row in self.matrix]

    @classmethod
    def from_json(cls, data) -> "PeriodMatrix":
        return cls(complex_array_from_json(data))

    @classmethod
    def diagonal(cls, *taus) -> "PeriodMatrix":
        return cls(np.diag(np.asarray(taus, dtype=complex)))


def complex_array_from_json(data) -> np.ndarray:
    """Accept nested lists whose leaves are ``[re, im]`` pairs or plain numbers."""
    def conv(x):
        if isinstance(x, (list, tuple)):
            if len(x) == 2 and all(isinstance(v, (int, float)) for v in x):
                return complex(x[0], x[1])
            return [conv(v) for v in x]
        if isinstance(x, str):
            return complex(x.replace(" ", ""))
        return complex(x)

    return np.array(conv(data), dtype=complex)


def complex_array_to_json(arr) -> list:
    arr = np.asarray(arr, dtype=complex)
    if arr.ndim == 0:
        return [float(arr.real), float(arr.imag)]
    return [complex_array_to_json(x) for x in arr]


def standard_form(g: int) -> np.ndarray:
    """The block matrix J = (0 I; -I 0)."""
    eye = np.eye(g, dtype=np.int64)
    zero = np.zeros((g, g), dtype=np.int64)
    return np.block([[zero, eye], [-eye, zero]])


@dataclass(frozen=True, eq=False)
class SymplecticIntMatrix:
    matrix: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.matrix)
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1] or raw.shape[0] % 2:
            raise DomainError("symplectic matrix must be 2g x 2g", shape=list(raw.shape))
        if np.issubdtype(raw.dtype, np.floating) and not np.array_equal(raw, np.round(raw)):
            raise DomainError("symplectic matrix must have integer entries")
        m = raw.astype(np.int64)
        g = m.shape[0] // 2
        J = standard_form(g)
        if not np.array_equal(m.T @ J @ m, J):
            raise DomainError("matrix does not preserve the standard symplectic form")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def g(self) -> int:
        return self.matrix.shape[0] // 2

    @property
    def blocks(self):
        g = self.g
        m = self.matrix
        return m[:g, :g], m[:g, g:], m[g:, :g], m[g:, g:]

    def __matmul__(self, other: "SymplecticIntMatrix") -> "SymplecticIntMatrix":
        return SymplecticIntMatrix(self.matrix @ other.matrix)

    def __eq__(self, other):
        return isinstance(other, SymplecticIntMatrix) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    @classmethod
    def from_blocks(cls, A, B, C, D) -> "SymplecticIntMatrix":
        return cls(np.block([[np.asarray(A), np.asarray(B)], [np.asarray(C), np.asarray(D)]]))

    @classmethod
    def identity(cls, g: int) -> "SymplecticIntMatrix":
        return cls(np.eye(2 * g, dtype=np.int64))

    def to_json(self) -> list:
        return self.matrix.tolist()


def translation(S) -> SymplecticIntMatrix:
    """(I S; 0 I) for an integral symmetric S."""
    S = np.asarray(S, dtype=np.int64)
    g = S.shape[0]
    eye = np.eye(g, dtype=np.int64)
    return SymplecticIntMatrix.from_blocks(eye, S, np.zeros_like(S), eye)


def base_change(U) -> SymplecticIntMatrix:
    """(U 0; 0 U^{-T}) for U in GL_g(Z); acts by Omega -> U Omega U^T."""
    U = np.asarray(U, dtype=np.int64)
    Uinv = np.round(np.linalg.inv(U)).astype(np.int64)
    if not np.array_equal(U @ Uinv, np.eye(U.shape[0], dtype=np.int64)):
        raise DomainError("U is not unimodular", U=U.tolist())
    zero = np.zeros_like(U)
    return SymplecticIntMatrix.from_blocks(U, zero, zero, Uinv.T)


def inversion(g: int) -> SymplecticIntMatrix:
    """(0 -I; I 0), acting by Omega -> -Omega^{-1}."""
    eye = np.eye(g, dtype=np.int64)
    zero = np.zeros((g, g), dtype=np.int64)
    return SymplecticIntMatrix.from_blocks(zero, -eye, eye, zero)


def sp4_generators() -> dict[str, SymplecticIntMatrix]:
    """A fixed generating set of Sp_4(Z).

    Translations by the elementary symmetric matrices, the inversion, and the
    base changes for the two standard generators of GL_2(Z).
    """
    return {
        "T11": translation([[1, 0], [0, 0]]),
        "T22": translation([[0, 0], [0, 1]]),
        "T12": translation([[0, 1], [1, 0]]),
        "J": inversion(2),
        "U_shear": base_change([[1, 1], [0, 1]]),
        "U_swap": base_change([[0, 1], [1, 0]]),
    }


def random_symplectic(g: int, rng: np.random.Generator, n_factors: int = 4) -> SymplecticIntMatrix:
    """Product of a few random generators (kept small-entried on purpose)."""
    gens = []
    for j in range(g):
        E = np.zeros((g, g), dtype=np.int64)
        E[j, j] = 1
        gens += [translation(E), translation(-E)]
    for j in range(g):
        for k in range(j + 1, g):
            E = np.zeros((g, g), dtype=np.int64)
            E[j, k] = E[k, j] = 1
            gens.append(translation(E))
    gens.append(inversion(g))
    if g > 1:
        U = np.eye(g, dtype=np.int64)
        U[0, 1] = 1
        gens.append(base_change(U))
    M = SymplecticIntMatrix.identity(g)
    for idx in rng.integers(0, len(gens), size=n_factors):
        M = M @ gens[int(idx)]
    return M


def _automorphy(M: SymplecticIntMatrix, omega: PeriodMatrix) -> np.ndarray:
    if M.g != omega.g:
        raise DomainError("size mismatch between M and Omega", M_g=M.g, omega_g=omega.g)
    _, _, C, D = M.blocks
    factor = C @ omega.matrix + D
    cond = float(np.linalg.cond(factor))
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise NumericInstabilityError("C Omega + D is numerically singular", cond=cond)
    return factor


def act_on_siegel(M: SymplecticIntMatrix, omega: PeriodMatrix) -> PeriodMatrix:
    A, B, _, _ = M.blocks
    factor = _automorphy(M, omega)
    num = A @ omega.matrix + B
    new = np.linalg.solve(factor.T, num.T).T  # num @ factor^{-1}
    return PeriodMatrix((new + new.T) / 2)


def act_on_pair(M: SymplecticIntMatrix, omega: PeriodMatrix, z) -> tuple[PeriodMatrix, np.ndarray]:
    factor = _automorphy(M, omega)
    z = np.asarray(z, dtype=complex)
    new_z = np.linalg.solve(factor.T, z.T).T  # z @ factor^{-1}
    return act_on_siegel(M, omega), new_z


def direct_sum_period(first: PeriodMatrix, second: PeriodMatrix) -> PeriodMatrix:
    g1, g2 = first.g, second.g
    out = np.zeros((g1 + g2, g1 + g2), dtype=complex)
    out[:g1, :g1] = first.matrix
    out[g1:, g1:] = second.matrix
    return PeriodMatrix(out)


def split_period(omega: PeriodMatrix, g1: int) -> tuple[PeriodMatrix, PeriodMatrix]:
    return PeriodMatrix(omega.matrix[:g1, :g1]), PeriodMatrix(omega.matrix[g1:, g1:])


def is_block_reducible(omega: PeriodMatrix, tol: float = 1e-10) -> bool:
    """Membership in the standard component h_1 x h_1 only (Omega_12 = 0)."""
    if omega.g != 2:
        raise DomainError("block reducibility is implemented for g = 2", g=omega.g)
    return bool(abs(omega.matrix[0, 1]) <= tol)


@dataclass(frozen=True, eq=False)
class TorusPoint:
    z: np.ndarray
    lattice_coords: Optional[tuple[np.ndarray, np.ndarray]] = None


def lattice_coordinates(omega: PeriodMatrix, z) -> tuple[np.ndarray, np.ndarray]:
    """Real (s, u) with z = s + u Omega."""
    z = np.asarray(z, dtype=complex)
    Y = omega.imag
    u = np.linalg.solve(Y.T, z.imag.T).T
    s = z.real - u @ omega.real
    return s, u


def lattice_point(omega: PeriodMatrix, m1, m2) -> np.ndarray:
    return np.asarray(m1, dtype=float) + np.asarray(m2, dtype=float) @ omega.matrix


def _floor_snapped(x: np.ndarray, snap: float = 1e-10) -> np.ndarray:
    nearest = np.round(x)
    return np.where(np.abs(x - nearest) <= snap, nearest, np.floor(x)).astype(np.int64)


def reduce_mod_lattice(omega: PeriodMatrix, z) -> TorusPoint:
    s, u = lattice_coordinates(omega, z)
    m1 = _floor_snapped(s)
    m2 = _floor_snapped(u)
    reduced = np.asarray(z, dtype=complex) - lattice_point(omega, m1, m2)
    return TorusPoint(reduced, (m1, m2))


def torus_distance(omega: PeriodMatrix, z, w) -> float:
    """Euclidean distance in C^g from z to the lattice coset of w."""
    diff = np.asarray(z, dtype=complex) - np.asarray(w, dtype=complex)
    s, u = lattice_coordinates(omega, diff)
    s0, u0 = np.round(s), np.round(u)
    g = omega.g
    best = np.inf
    # nearest-in-coordinates is not always nearest in C^g for skewed lattices
    offsets = np.array(np.meshgrid(*([[-1, 0, 1]] * (2 * g)), indexing="ij")).reshape(2 * g, -1).T
    for off in offsets:
        m1 = s0 + off[:g]
        m2 = u0 + off[g:]
        best = min(best, float(np.linalg.norm(diff - lattice_point(omega, m1, m2))))
    return best
