"""Zero loci of theta functions on abelian varieties, explored one complex line at a time.

A slice is the affine line ``t -> base + t * direction``.  Zeros of the
restricted function are located inside a parameter parallelogram by recursive
subdivision driven by the argument principle, polished by Newton's method, and
given multiplicities by winding numbers on small circles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .characteristics import Characteristic, Parity, split
from .errors import (
    DomainError,
    IllConditionedSliceError,
    NumericInstabilityError,
    ResampleError,
    UnresolvedClassificationError,
)
from .siegel import PeriodMatrix, direct_sum_period, reduce_mod_lattice, torus_distance
from .theta import DEFAULT_TARGET_ERR, jet_values, theta_jet, theta_values

ZERO_TOL = 1e-8
NEWTON_MAX_ITER = 50
NEWTON_VALUE_TOL = 1e-12
NEWTON_STEP_TOL = 1e-14
# lower-left corner of the parameter cell, in units of the two periods;
# kept away from 0 and 1/2 so lattice points and half periods sit inside
CELL_ORIGIN = (-0.4629, -0.4871)


@dataclass(frozen=True, eq=False)
class Slice:
    base: np.ndarray
    direction: np.ndarray
    periods: tuple[complex, complex] = (1.0, 1j)
    origin: tuple[float, float] = CELL_ORIGIN

    def point(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=complex)
        return self.base[None, :] + t.reshape(-1, 1) * self.direction[None, :]

    def cell_corner(self) -> complex:
        return self.origin[0] * self.periods[0] + self.origin[1] * self.periods[1]

    def shifted(self, ds: float, du: float) -> "Slice":
        return Slice(self.base, self.direction, self.periods,
                     (self.origin[0] + ds, self.origin[1] + du))


def coordinate_slice(omega: PeriodMatrix, j: int, value: complex | None = None) -> Slice:
    """The line on which only z_j varies; the other coordinate(s) are ``value``.

    The parameter cell is spanned by 1 and Omega_jj.
    """
    g = omega.g
    base = np.zeros(g, dtype=complex)
    if value is not None:
        for k in range(g):
            if k != j:
                base[k] = value
    direction = np.zeros(g, dtype=complex)
    direction[j] = 1.0
    return Slice(base, direction, (1.0 + 0j, complex(omega.matrix[j, j])))


@dataclass(frozen=True, eq=False)
class SlicedZero:
    slice: Slice
    local_coord: complex
    multiplicity: int
    z: np.ndarray
    residual: float = 0.0

    def to_json(self) -> dict:
        return {
            "t": [self.local_coord.real, self.local_coord.imag],
            "z": [[float(x.real), float(x.imag)] for x in self.z],
            "multiplicity": self.multiplicity,
            "residual": self.residual,
        }


class PointKind(str, Enum):
    SMOOTH = "smooth"
    NODE = "node"


@dataclass(frozen=True)
class PointClass:
    kind: PointKind
    grad_norm: float
    hess_det: complex
    full_grad_norm: float

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "grad_norm": self.grad_norm,
            "hess_det": [self.hess_det.real, self.hess_det.imag],
            "full_grad_norm": self.full_grad_norm,
        }


class _SliceFunction:
    def __init__(self, delta, omega, slc, target_err):
        self.delta, self.omega, self.slc, self.target_err = delta, omega, slc, target_err

    def __call__(self, ts) -> np.ndarray:
        vals, _, _ = theta_values(self.delta, self.omega, self.slc.point(ts), self.target_err)
        return vals

    def with_derivative(self, t: complex) -> tuple[complex, complex]:
        vals, grads, _, _, _ = jet_values(self.delta, self.omega, self.slc.point([t]), self.target_err)
        return complex(vals[0]), complex(grads[0] @ self.slc.direction)


# --- argument principle -------------------------------------------------------

def winding_number(f, vertices, min_per_edge: int = 24, max_points: int = 20000,
                   max_step: float = np.pi / 4) -> float:
    """(1/2 pi) x total change of arg f around a closed polygon.

    Each edge is refined until consecutive phase increments stay below
    ``max_step``.  Raises ResampleError when the contour passes too close to a
    zero.
    """
    verts = list(vertices)
    total = 0.0
    for a, b in zip(verts, verts[1:] + verts[:1]):
        s = np.linspace(0.0, 1.0, min_per_edge + 1)
        vals = f(a + s * (b - a))
        while True:
            mags = np.abs(vals)
            if mags.min() <= 1e-9 * max(1.0, float(np.median(mags))):
                raise ResampleError("contour passes through a zero", min_modulus=float(mags.min()))
            steps = np.angle(vals[1:] / vals[:-1])
            bad = np.nonzero(np.abs(steps) > max_step)[0]
            if bad.size == 0:
                break
            if s.size + bad.size > max_points:
                raise IllConditionedSliceError("phase refinement did not settle", points=int(s.size))
            mids = (s[bad] + s[bad + 1]) / 2
            mid_vals = f(a + mids * (b - a))
            s = np.insert(s, bad + 1, mids)
            vals = np.insert(vals, bad + 1, mid_vals)
        total += float(np.sum(steps))
    return total / (2 * np.pi)


def _parallelogram(corner: complex, e1: complex, e2: complex) -> list[complex]:
    return [corner, corner + e1, corner + e1 + e2, corner + e2]


def _count(f, corner, e1, e2) -> int:
    w = winding_number(f, _parallelogram(corner, e1, e2))
    k = round(w)
    if abs(w - k) > 0.1:
        raise IllConditionedSliceError("winding integral is not near an integer", winding=w)
    return int(k)


def _in_parallelogram(t, corner, e1, e2, slack=1e-9) -> bool:
    basis = np.array([[e1.real, e2.real], [e1.imag, e2.imag]])
    d = t - corner
    a, b = np.linalg.solve(basis, [d.real, d.imag])
    return -slack <= a < 1 + slack and -slack <= b < 1 + slack


def newton(fun: _SliceFunction, t0: complex) -> tuple[complex, float, bool]:
    t = complex(t0)
    val, der = fun.with_derivative(t)
    for _ in range(NEWTON_MAX_ITER):
        if abs(val) <= NEWTON_VALUE_TOL:
            return t, abs(val), True
        if der == 0:
            return t, abs(val), False
        step = val / der
        t -= step
        val, der = fun.with_derivative(t)
        if abs(step) <= NEWTON_STEP_TOL:
            break
        if abs(t - t0) > 10:
            return t, abs(val), False
    return t, abs(val), abs(val) <= ZERO_TOL


def local_multiplicity(f, t0: complex, radius: float, refinements: int = 3) -> int:
    """Winding number of f around a circle centred at t0, shrinking if needed."""
    r = radius
    last = None
    for _ in range(refinements + 1):
        circle = list(t0 + r * np.exp(2j * np.pi * np.arange(32) / 32))
        try:
            w = winding_number(f, circle, min_per_edge=4)
        except ResampleError:
            r *= 0.5
            continue
        k = round(w)
        if abs(w - k) <= 0.1 and k >= 1:
            return int(k)
        last = w
        r *= 0.5
    raise IllConditionedSliceError("multiplicity did not resolve to an integer", winding=last, t=str(t0))


def _locate(fun, corner, e1, e2, count, depth, out):
    if count == 0:
        return
    size = max(abs(e1), abs(e2))
    centre = corner + (e1 + e2) / 2
    if count == 1 or size < 1e-4 or depth > 24:
        t, _, ok = newton(fun, centre)
        if ok and _in_parallelogram(t, corner, e1, e2, slack=1e-6):
            out.append((t, count))
            return
        if size < 1e-6 or depth > 30:
            raise IllConditionedSliceError("could not isolate a zero", depth=depth, count=count)
    h1, h2 = e1 / 2, e2 / 2
    subs = [corner, corner + h1, corner + h2, corner + h1 + h2]
    counts = []
    for sub in subs:
        counts.append(_count(fun, sub, h1, h2))
    if sum(counts) != count:
        raise IllConditionedSliceError("zero count is not additive over a subdivision",
                                       parent=count, children=counts)
    for sub, c in zip(subs, counts):
        _locate(fun, sub, h1, h2, c, depth + 1, out)


def _not_identically_zero(fun, slc) -> bool:
    p1, p2 = slc.periods
    grid = [slc.cell_corner() + (a + 0.37) / 4 * p1 + (b + 0.61) / 4 * p2 for a in range(4) for b in range(4)]
    return float(np.max(np.abs(fun(np.array(grid))))) > 1e-10


def slice_zeros(delta: Characteristic, omega, slc: Slice,
                target_err: float = DEFAULT_TARGET_ERR) -> list[SlicedZero]:
    """Zeros of t -> theta(base + t direction) in the parameter cell, with multiplicities."""
    omega = omega if isinstance(omega, PeriodMatrix) else PeriodMatrix(omega)
    fun = _SliceFunction(delta, omega, slc, target_err)
    if not _not_identically_zero(fun, slc):
        raise ResampleError("theta vanishes identically on this slice")
    p1, p2 = slc.periods
    nudges = [(0.0, 0.0), (0.0173, 0.0291), (-0.0219, 0.0137), (0.0311, -0.0247), (-0.0089, -0.0333)]
    for ds, du in nudges:
        cur = slc.shifted(ds, du)
        corner = cur.cell_corner()
        try:
            total = _count(fun, corner, p1, p2)
            found: list[tuple[complex, int]] = []
            _locate(fun, corner, p1, p2, total, 0, found)
        except ResampleError:
            continue
        break
    else:
        raise IllConditionedSliceError("every nudge of the cell hit a zero on its boundary")

    # merge duplicates produced by multiple zeros split across sub-cells
    merged: list[complex] = []
    for t, _ in found:
        if all(abs(t - u) > 1e-7 for u in merged):
            merged.append(t)
    zeros = []
    for t in merged:
        others = [abs(t - u) for u in merged if u is not t]
        radius = min([0.05] + [0.3 * d for d in others])
        mult = local_multiplicity(fun, t, radius)
        z = slc.point([t])[0]
        residual = float(abs(fun(np.array([t]))[0]))
        if residual > ZERO_TOL:
            raise IllConditionedSliceError("Newton refinement left a large residual", residual=residual)
        zeros.append(SlicedZero(slc, t, mult, z, residual))
    if sum(zr.multiplicity for zr in zeros) != total:
        raise IllConditionedSliceError("multiplicities do not add up to the cell count",
                                       total=total, found=[zr.multiplicity for zr in zeros])
    zeros.sort(key=lambda zr: (zr.local_coord.real, zr.local_coord.imag))
    return zeros


# --- tracing ------------------------------------------------------------------

def slice_values(omega: PeriodMatrix, j: int, n_slices: int) -> list[complex]:
    """Values of the fixed coordinate on a uniform grid of its period cell."""
    if n_slices <= 0:
        return []
    other = 1 - j
    tau = complex(omega.matrix[other, other])
    k = int(np.ceil(np.sqrt(n_slices)))
    vals = [((a + 0.3183) / k) + ((b + 0.2718) / k) * tau for a in range(k) for b in range(k)]
    return vals[:n_slices]


def trace_zero_curve(delta: Characteristic, omega, n_slices: int, direction: int = 0,
                     target_err: float = DEFAULT_TARGET_ERR) -> list[SlicedZero]:
    """Zeros on ``n_slices`` parallel coordinate slices (genus 2).

    ``direction`` selects which coordinate moves along each slice; the other is
    held at a grid value.  Slices on which theta vanishes identically are
    skipped.  Output is sorted by (slice index, real part, imaginary part).
    """
    omega = omega if isinstance(omega, PeriodMatrix) else PeriodMatrix(omega)
    if omega.g != 2:
        raise DomainError("tracing is implemented for genus 2", g=omega.g)
    cloud: list[SlicedZero] = []
    for w in slice_values(omega, direction, n_slices):
        slc = coordinate_slice(omega, direction, w)
        try:
            cloud.extend(slice_zeros(delta, omega, slc, target_err))
        except ResampleError:
            continue
    return cloud


def cloud_components(omega: PeriodMatrix, points: np.ndarray, link: float) -> int:
    """Connected components of the graph joining points closer than ``link`` on the torus."""
    points = np.asarray(points, dtype=complex)
    n = len(points)
    if n == 0:
        return 0
    g = omega.g
    diffs = points[:, None, :] - points[None, :, :]
    flat = diffs.reshape(-1, g)
    Y, X = omega.imag, omega.real
    u = np.linalg.solve(Y, flat.imag.T).T
    s = flat.real - u @ X
    s0, u0 = np.round(s), np.round(u)
    offsets = np.array(np.meshgrid(*([[-1, 0, 1]] * (2 * g)), indexing="ij")).reshape(2 * g, -1).T
    best = np.full(flat.shape[0], np.inf)
    for off in offsets:
        lat = (s0 + off[:g]) + (u0 + off[g:]) @ omega.matrix
        best = np.minimum(best, np.linalg.norm(flat - lat, axis=1))
    adj = best.reshape(n, n) <= link
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in zip(*np.nonzero(np.triu(adj, 1))):
        parent[find(int(i))] = find(int(j))
    return len({find(i) for i in range(n)})


# --- classification -----------------------------------------------------------

def classify_point(delta: Characteristic, omega, z0, smooth_tol: float = 1e-6,
                   node_tol: float = 1e-8, hess_tol: float = 1e-8,
                   target_err: float = DEFAULT_TARGET_ERR) -> PointClass:
    omega = omega if isinstance(omega, PeriodMatrix) else PeriodMatrix(omega)
    jet = theta_jet(delta, omega, z0, target_err)
    if abs(jet.value) > ZERO_TOL:
        raise DomainError("point is not on the zero locus", modulus=abs(jet.value))
    grad_norm = float(np.linalg.norm(jet.grad_z))
    hess_det = complex(np.linalg.det(jet.hess_z))
    full = float(np.linalg.norm(jet.full_gradient()))
    if full <= 1e-8:
        raise NumericInstabilityError("full gradient vanishes: zero locus singular in (Omega, z)",
                                      full_grad_norm=full)
    if grad_norm > smooth_tol:
        return PointClass(PointKind.SMOOTH, grad_norm, hess_det, full)
    if grad_norm <= node_tol and abs(hess_det) > hess_tol:
        return PointClass(PointKind.NODE, grad_norm, hess_det, full)
    raise UnresolvedClassificationError("gradient norm falls between the node and smooth thresholds",
                                        grad_norm=grad_norm, hess_det=abs(hess_det))


# --- reducible fibres ---------------------------------------------------------

@dataclass
class ReducibleReport:
    branch_residual: float
    node_count: int
    node_order: int
    node_location: list = field(default_factory=list)
    branch_multiplicities: tuple = ()
    branch_points: tuple = ()
    n_traced: int = 0

    def to_json(self) -> dict:
        return {
            "branch_residual": self.branch_residual,
            "node_count": self.node_count,
            "node_order": self.node_order,
            "node_location": [[[float(x.real), float(x.imag)] for x in p] for p in self.node_location],
            "branch_multiplicities": list(self.branch_multiplicities),
            "n_traced": self.n_traced,
        }


def _elliptic_zero(delta: Characteristic, tau: PeriodMatrix, target_err: float) -> complex:
    zeros = slice_zeros(delta, tau, coordinate_slice(tau, 0), target_err)
    if len(zeros) != 1 or zeros[0].multiplicity != 1:
        raise IllConditionedSliceError("expected one simple zero per elliptic cell",
                                       found=[zr.multiplicity for zr in zeros])
    return complex(zeros[0].z[0])


def verify_reducible_structure(delta: Characteristic, omega1, omega2, n_slices: int = 16,
                               target_err: float = DEFAULT_TARGET_ERR,
                               line_direction=(1.0, 0.7 + 0.3j)) -> ReducibleReport:
    """Check that the divisor on E1 x E2 is two elliptic curves crossing once."""
    omega1 = omega1 if isinstance(omega1, PeriodMatrix) else PeriodMatrix(omega1)
    omega2 = omega2 if isinstance(omega2, PeriodMatrix) else PeriodMatrix(omega2)
    if omega1.g != 1 or omega2.g != 1:
        raise DomainError("both blocks must be genus 1")
    d1, d2 = split(delta, 1)
    if d1.parity() is not Parity.ODD or d2.parity() is not Parity.ODD:
        raise DomainError("both blocks of the characteristic must be odd", delta=delta.to_json())
    omega = direct_sum_period(omega1, omega2)

    # the two branches {z1 = p1} and {z2 = p2}, from the elliptic factors alone
    p1 = _elliptic_zero(d1, omega1, target_err)
    p2 = _elliptic_zero(d2, omega2, target_err)

    along_z1 = trace_zero_curve(delta, omega, n_slices, direction=0, target_err=target_err)
    along_z2 = trace_zero_curve(delta, omega, n_slices, direction=1, target_err=target_err)
    residual = 0.0
    for zr in along_z1 + along_z2:
        d_first = torus_distance(omega1, [zr.z[0]], [p1])
        d_second = torus_distance(omega2, [zr.z[1]], [p2])
        residual = max(residual, min(d_first, d_second))

    # branch 1 is seen by slices moving z1, branch 2 by slices moving z2
    candidates: list[np.ndarray] = []
    for za in along_z1:
        for zb in along_z2:
            cand = reduce_mod_lattice(omega, [za.z[0], zb.z[1]]).z
            if all(torus_distance(omega, cand, c) > 1e-6 for c in candidates):
                candidates.append(cand)
    nodes = []
    for cand in candidates:
        try:
            cls = classify_point(delta, omega, cand, target_err=target_err)
        except (DomainError, UnresolvedClassificationError):
            continue
        if cls.kind is PointKind.NODE:
            nodes.append(cand)

    order = 0
    branch_mults: tuple = ()
    if len(nodes) == 1:
        node = nodes[0]
        direction = np.asarray(line_direction, dtype=complex)
        direction = direction / np.linalg.norm(direction)
        line = Slice(node, direction)
        order = local_multiplicity(_SliceFunction(delta, omega, line, target_err), 0.0, 0.05)
        # each branch crosses a transversal coordinate line once
        eta = 0.1 + 0.05j
        m1 = local_multiplicity(
            _SliceFunction(delta, omega, Slice(node + np.array([0, eta]), np.array([1, 0], dtype=complex)),
                           target_err), 0.0, 0.05)
        m2 = local_multiplicity(
            _SliceFunction(delta, omega, Slice(node + np.array([eta, 0]), np.array([0, 1], dtype=complex)),
                           target_err), 0.0, 0.05)
        branch_mults = (m1, m2)
    return ReducibleReport(
        branch_residual=float(residual),
        node_count=len(nodes),
        node_order=order,
        node_location=nodes,
        branch_multiplicities=branch_mults,
        branch_points=(p1, p2),
        n_traced=len(along_z1) + len(along_z2),
    )
