"""Riemann theta functions with characteristics, evaluated by certified truncation.

The series

    theta_delta(Omega, z) = sum_m exp(pi i (n Omega n^T + 2 n (z + b)^T)),  n = m + a,

with ``a = delta'/2`` and ``b = delta''/2``, is truncated to the box
``max_j |m_j| <= R``.  Completing the square gives the term modulus

    exp(pi y Y^{-1} y^T) * exp(-pi |n + Y^{-1} y|_Y^2),

so with ``lam`` the least eigenvalue of Y and ``s = |a| + |Y^{-1} y|`` the tail
beyond shell R is at most

    exp(pi y Y^{-1} y^T) * sum_{k>R} c k^(g-1) w(k) exp(-pi lam max(0, k - s)^2),

``c = 2g 3^(g-1)`` counting the lattice points on shell k and ``w(k)`` the
polynomial weight of the derivative being bounded (1 for values).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .characteristics import Characteristic, Parity, enumerate_characteristics, split
from .errors import AmbiguityError, DomainError, ResampleError, UnattainableAccuracyError
from .siegel import PeriodMatrix, SymplecticIntMatrix, act_on_pair, lattice_point

DEFAULT_TARGET_ERR = 1e-12
RADIUS_CAP = 200
TWO_PI_I = 2j * np.pi


@dataclass(frozen=True)
class ThetaResult:
    value: complex
    truncation_bound: float
    radius_used: int


@dataclass(frozen=True, eq=False)
class ThetaJet:
    value: complex
    grad_z: np.ndarray
    hess_z: np.ndarray
    truncation_bound: float
    radius_used: int

    def omega_derivative(self, j: int, k: int) -> complex:
        """d theta / d Omega_jk in the symmetric coordinate, via the heat equation."""
        return self.hess_z[j, k] / (TWO_PI_I * (2.0 if j == k else 1.0))

    def omega_gradient(self) -> np.ndarray:
        g = self.hess_z.shape[0]
        return np.array([self.omega_derivative(j, k) for j in range(g) for k in range(j, g)])

    def full_gradient(self) -> np.ndarray:
        """Gradient in all coordinates (Omega_jk for j <= k, then z_j)."""
        return np.concatenate([self.omega_gradient(), self.grad_z])


@lru_cache(maxsize=64)
def lattice_box(g: int, radius: int) -> np.ndarray:
    """Integer points with max-norm <= radius, by shell then lexicographic."""
    axis = np.arange(-radius, radius + 1)
    pts = np.array(np.meshgrid(*([axis] * g), indexing="ij")).reshape(g, -1).T
    shell = np.max(np.abs(pts), axis=1)
    order = np.lexsort(tuple(pts[:, j] for j in reversed(range(g))) + (shell,))
    out = pts[order]
    out.setflags(write=False)
    return out


def _as_omega(omega) -> PeriodMatrix:
    return omega if isinstance(omega, PeriodMatrix) else PeriodMatrix(omega)


def _as_points(z, g: int) -> tuple[np.ndarray, bool]:
    arr = np.asarray(z, dtype=complex)
    single = arr.ndim == 1
    arr = np.atleast_2d(arr)
    if arr.shape[-1] != g:
        raise DomainError("z has the wrong length", expected=g, shape=list(arr.shape))
    return arr, single


def _check_dims(delta: Characteristic, omega: PeriodMatrix) -> None:
    if delta.genus != omega.g:
        raise DomainError("characteristic genus does not match Omega", g=delta.genus, omega_g=omega.g)


def tail_bounds(delta: Characteristic, omega: PeriodMatrix, zs: np.ndarray, order: int = 0):
    """Tail bound per point as a function of the radius.

    Returns ``(ks, tails)`` where ``tails[i, r]`` bounds the omitted part of the
    sum for point ``i`` when truncating at radius ``ks[r]``.
    """
    g = omega.g
    Y = omega.imag
    lam = float(np.linalg.eigvalsh(Y)[0])
    y = zs.imag
    c_shift = np.linalg.solve(Y, y.T).T  # Y^{-1} y (Y symmetric)
    prefactor_log = np.pi * np.einsum("ij,ij->i", y, c_shift)
    shift = float(np.linalg.norm(delta.eps_prime)) + np.linalg.norm(c_shift, axis=1)
    count = 2 * g * 3 ** (g - 1)
    k_top = int(np.ceil(shift.max() + np.sqrt(800.0 / (np.pi * lam)))) + 2
    k_top = max(k_top, RADIUS_CAP + 2)
    ks = np.arange(1, k_top + 1, dtype=float)
    gap = np.maximum(0.0, ks[None, :] - shift[:, None])
    log_terms = np.log(count) + (g - 1) * np.log(ks)[None, :] - np.pi * lam * gap**2
    if order:
        log_terms = log_terms + order * np.log(np.maximum(1.0, 2 * np.pi * (ks + 0.5)))[None, :]
    log_terms = log_terms + prefactor_log[:, None]
    terms = np.exp(np.minimum(log_terms, 700.0))
    # tails[:, R] = sum_{k > R} terms, for R = 0 .. k_top - 1
    tails = np.cumsum(terms[:, ::-1], axis=1)[:, ::-1]
    return np.arange(0, k_top), tails


def choose_radius(delta, omega, zs, target_err, order=0) -> tuple[int, np.ndarray]:
    if not target_err > 0:
        raise DomainError("target_err must be positive", target_err=target_err)
    radii, tails = tail_bounds(delta, omega, zs, order)
    worst = tails.max(axis=0)
    ok = np.nonzero(worst <= target_err)[0]
    if ok.size == 0 or radii[ok[0]] > RADIUS_CAP:
        achievable = float(worst[RADIUS_CAP])
        raise UnattainableAccuracyError(
            "requested accuracy needs a radius beyond the cap",
            target_err=target_err, radius_cap=RADIUS_CAP, achievable_bound=achievable,
        )
    R = int(radii[ok[0]])
    return R, tails[:, R]


def _bounds_at(delta, omega, zs, radius, order=0) -> np.ndarray:
    radii, tails = tail_bounds(delta, omega, zs, order)
    if radius >= tails.shape[1]:
        return np.zeros(zs.shape[0])
    return tails[:, radius]


def _terms(delta: Characteristic, omega: PeriodMatrix, zs: np.ndarray, radius: int):
    n = lattice_box(omega.g, radius) + delta.eps_prime[None, :]
    quad = np.einsum("ij,jk,ik->i", n, omega.matrix, n)
    lin = n @ (zs + delta.eps_dprime[None, :]).T
    return n, np.exp(np.pi * 1j * quad[:, None] + TWO_PI_I * lin)


def theta_values(delta: Characteristic, omega, zs, target_err: float = DEFAULT_TARGET_ERR,
                 radius: int | None = None):
    """Vectorised evaluation at many points.

    Returns ``(values, bounds, radius)``; ``bounds[i]`` bounds the truncation
    error at ``zs[i]``.
    """
    omega = _as_omega(omega)
    _check_dims(delta, omega)
    pts, _ = _as_points(zs, omega.g)
    if radius is None:
        radius, bounds = choose_radius(delta, omega, pts, target_err)
    else:
        bounds = _bounds_at(delta, omega, pts, radius)
    _, terms = _terms(delta, omega, pts, radius)
    return terms.sum(axis=0), bounds, radius


def theta(delta: Characteristic, omega, z, target_err: float = DEFAULT_TARGET_ERR,
          radius: int | None = None) -> ThetaResult:
    values, bounds, R = theta_values(delta, omega, np.atleast_2d(np.asarray(z, dtype=complex)),
                                     target_err, radius)
    return ThetaResult(complex(values[0]), float(bounds[0]), R)


def jet_values(delta: Characteristic, omega, zs, target_err: float = DEFAULT_TARGET_ERR):
    """Values, z-gradients and z-Hessians at many points with a common radius."""
    omega = _as_omega(omega)
    _check_dims(delta, omega)
    pts, _ = _as_points(zs, omega.g)
    R, bounds = choose_radius(delta, omega, pts, target_err, order=2)
    n, terms = _terms(delta, omega, pts, R)
    values = terms.sum(axis=0)
    grads = TWO_PI_I * (n.T @ terms).T
    hess = TWO_PI_I**2 * np.einsum("lj,lk,lp->pjk", n, n, terms)
    return values, grads, hess, bounds, R


def theta_jet(delta: Characteristic, omega, z, target_err: float = DEFAULT_TARGET_ERR) -> ThetaJet:
    values, grads, hess, bounds, R = jet_values(delta, omega, np.atleast_2d(np.asarray(z, dtype=complex)),
                                                target_err)
    h = hess[0]
    return ThetaJet(complex(values[0]), grads[0], (h + h.T) / 2, float(bounds[0]), R)


def thetanull(delta: Characteristic, omega, target_err: float = DEFAULT_TARGET_ERR) -> ThetaResult:
    omega = _as_omega(omega)
    return theta(delta, omega, np.zeros(omega.g, dtype=complex), target_err)


def check_parity(delta: Characteristic, omega, z, target_err: float = DEFAULT_TARGET_ERR):
    """|theta(-z) - sigma theta(z)| and the tolerance it should respect."""
    z = np.asarray(z, dtype=complex)
    vals, bounds, _ = theta_values(delta, omega, np.stack([z, -z]), target_err)
    sigma = 1.0 if delta.parity() is Parity.EVEN else -1.0
    residual = float(abs(vals[1] - sigma * vals[0]))
    return residual, float(2 * bounds.max() + 1e-10)


def check_product(delta: Characteristic, omega1, omega2, z, target_err: float = DEFAULT_TARGET_ERR) -> float:
    """Relative residual of the product formula for a 1 + 1 block split."""
    from .siegel import direct_sum_period

    omega1, omega2 = _as_omega(omega1), _as_omega(omega2)
    z = np.asarray(z, dtype=complex)
    g1 = omega1.g
    d1, d2 = split(delta, g1)
    whole = theta(delta, direct_sum_period(omega1, omega2), z, target_err).value
    prod = theta(d1, omega1, z[:g1], target_err).value * theta(d2, omega2, z[g1:], target_err).value
    return float(abs(whole - prod) / max(1.0, abs(prod)))


def reference_shift(delta: Characteristic, omega) -> np.ndarray:
    """The translate b + a Omega carrying theta_0 onto theta_delta."""
    omega = _as_omega(omega)
    return delta.eps_dprime + delta.eps_prime @ omega.matrix


def exponential_factor(delta: Characteristic, omega, z) -> complex:
    """exp(pi i a Omega a^T + 2 pi i a (z + b)^T)."""
    omega = _as_omega(omega)
    a, b = delta.eps_prime, delta.eps_dprime
    z = np.asarray(z, dtype=complex)
    return complex(np.exp(np.pi * 1j * (a @ omega.matrix @ a) + TWO_PI_I * (a @ (z + b))))


def check_shift_reference(delta: Characteristic, omega, z, target_err: float = DEFAULT_TARGET_ERR,
                          use_half_period: bool = False) -> complex:
    """Ratio theta_delta(Omega, z) / theta_0(Omega, z + shift).

    By default the shift is ``b + a Omega``.  ``use_half_period=True`` shifts by
    ``a + b Omega`` instead (the other ordering of the two halves).
    """
    from .characteristics import half_period

    omega = _as_omega(omega)
    z = np.asarray(z, dtype=complex)
    shift = half_period(delta, omega) if use_half_period else reference_shift(delta, omega)
    zero = Characteristic.zero(omega.g)
    den = theta(zero, omega, z + shift, target_err).value
    if abs(den) <= 1e-8:
        raise ResampleError("reference theta is too close to zero at this sample", value=abs(den))
    return theta(delta, omega, z, target_err).value / den


def quasi_period_modulus(omega, z, m2) -> float:
    """Predicted |theta(z + m1 + m2 Omega)| / |theta(z)|."""
    omega = _as_omega(omega)
    m2 = np.asarray(m2, dtype=float)
    y = np.asarray(z, dtype=complex).imag
    return float(np.exp(np.pi * (m2 @ omega.imag @ m2) + 2 * np.pi * (m2 @ y)))


def heat_residual(delta: Characteristic, omega, z, step: float = 1e-4,
                  target_err: float = DEFAULT_TARGET_ERR) -> float:
    """Relative mismatch between heat-equation and finite-difference Omega-gradients."""
    omega = _as_omega(omega)
    jet = theta_jet(delta, omega, z, target_err)
    g = omega.g
    fd = []
    for j in range(g):
        for k in range(j, g):
            E = np.zeros((g, g), dtype=complex)
            E[j, k] = E[k, j] = 1.0
            plus = theta(delta, PeriodMatrix(omega.matrix + step * E), z, target_err).value
            minus = theta(delta, PeriodMatrix(omega.matrix - step * E), z, target_err).value
            fd.append((plus - minus) / (2 * step))
    analytic = jet.omega_gradient()
    return float(np.linalg.norm(np.array(fd) - analytic) / np.linalg.norm(analytic))


# --- transformation law -------------------------------------------------------

def cell_grid(omega: PeriodMatrix, per_axis: int = 5, offset: float = 0.1234567) -> np.ndarray:
    """Points s + u Omega on a uniform grid of the real unit cube, shifted off the lattice."""
    g = omega.g
    ticks = (np.arange(per_axis) + offset) / per_axis
    coords = np.array(np.meshgrid(*([ticks] * (2 * g)), indexing="ij")).reshape(2 * g, -1).T
    return np.array([lattice_point(omega, c[:g], c[g:]) for c in coords])


def _candidate_scores(M: SymplecticIntMatrix, delta: Characteristic, omega: PeriodMatrix,
                      grid: np.ndarray, den_cache: dict, target_err: float) -> dict:
    _, _, C, D = M.blocks
    factor = C @ omega.matrix + D
    Q = np.linalg.solve(factor, C.astype(complex))
    Q = (Q + Q.T) / 2
    new_omega, new_z = act_on_pair(M, omega, grid)
    num, _, _ = theta_values(delta, new_omega, new_z, target_err)
    automorphy = np.exp(np.pi * 1j * np.einsum("ij,jk,ik->i", grid, Q, grid))
    scores = {}
    for cand, den in den_cache.items():
        scale = np.median(np.abs(den))
        keep = (np.abs(den) > 1e-6 * scale) & (np.abs(num) > 1e-6 * np.median(np.abs(num)))
        ratio = num[keep] / den[keep]
        normalised = ratio / automorphy[keep]
        ref = normalised[0]
        spread = float(np.max(np.abs(normalised / ref - 1.0)))
        log_abs = np.log(np.abs(ratio))
        scores[cand] = {
            "spread": spread,
            "ratio_min": float(np.exp(log_abs.min())),
            "ratio_max": float(np.exp(log_abs.max())),
            "n_points": int(keep.sum()),
        }
    return scores


def transformed_characteristic(M: SymplecticIntMatrix, delta: Characteristic, omega,
                               target_err: float = DEFAULT_TARGET_ERR, per_axis: int = 5,
                               tol: float = 1e-6, _den_cache: dict | None = None) -> Characteristic:
    """The characteristic whose theta function has the zero set of the transformed one.

    Every candidate is scored on a ``per_axis^(2g)`` grid of the fundamental
    cell.  The ratio of two theta functions with the same divisor is nowhere
    zero and, once the automorphy factor exp(pi i z (C Omega + D)^{-1} C z^T) is
    divided out, constant; a candidate passes when that normalised ratio is
    constant to relative ``tol``.  Exactly one candidate must pass.
    """
    omega = _as_omega(omega)
    _check_dims(delta, omega)
    if _den_cache is None:
        _den_cache = characteristic_table(omega, per_axis, target_err)
    grid = _den_cache["grid"]
    dens = {c: v for c, v in _den_cache.items() if c != "grid"}
    scores = _candidate_scores(M, delta, omega, grid, dens, target_err)
    passing = [c for c, s in scores.items() if s["spread"] <= tol]
    if len(passing) != 1:
        raise AmbiguityError(
            "transformation law did not single out one characteristic",
            delta=delta.to_json(), n_passing=len(passing),
            best_spreads=sorted(s["spread"] for s in scores.values())[:3],
        )
    return passing[0]


def characteristic_table(omega: PeriodMatrix, per_axis: int = 5,
                         target_err: float = DEFAULT_TARGET_ERR) -> dict:
    """theta_c(Omega, .) on the cell grid for every characteristic c."""
    grid = cell_grid(omega, per_axis)
    table = {"grid": grid}
    for cand in enumerate_characteristics(omega.g):
        table[cand], _, _ = theta_values(cand, omega, grid, target_err)
    return table


def characteristic_map(M: SymplecticIntMatrix, omega, target_err: float = DEFAULT_TARGET_ERR,
                       per_axis: int = 5) -> dict:
    """delta -> transformed characteristic, for every delta of the genus."""
    omega = _as_omega(omega)
    table = characteristic_table(omega, per_axis, target_err)
    return {
        delta: transformed_characteristic(M, delta, omega, target_err, per_axis, _den_cache=table)
        for delta in enumerate_characteristics(omega.g)
    }
