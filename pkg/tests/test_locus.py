import numpy as np
import pytest

from genus2theta.characteristics import Characteristic
from genus2theta.errors import (
    DomainError,
    IllConditionedSliceError,
    ResampleError,
    UnresolvedClassificationError,
)
from genus2theta.locus import (
    PointKind,
    Slice,
    classify_point,
    cloud_components,
    coordinate_slice,
    local_multiplicity,
    slice_values,
    slice_zeros,
    trace_zero_curve,
    verify_reducible_structure,
    winding_number,
)
from genus2theta.siegel import PeriodMatrix, torus_distance
from genus2theta.theta import theta, theta_jet

HALF = Characteristic((1,), (1,))
DELTA = Characteristic((1, 1), (1, 1))
TAU_I = PeriodMatrix([[1j]])
DIAG = PeriodMatrix.diagonal(1j, 2j)
GENERIC = PeriodMatrix([[1j, 0.1 + 0.2j], [0.1 + 0.2j, 2j]])


def test_winding_number_of_polynomials():
    square = [-1 - 1j, 1 - 1j, 1 + 1j, -1 + 1j]
    assert winding_number(lambda t: t**3, square) == pytest.approx(3)
    assert winding_number(lambda t: (t - 0.2) * (t + 0.5j), square) == pytest.approx(2)
    assert winding_number(lambda t: t - 5, square) == pytest.approx(0, abs=1e-12)


def test_winding_through_a_zero_asks_to_resample():
    with pytest.raises(ResampleError):
        winding_number(lambda t: t - 1, [-1 - 1j, 1 - 1j, 1 + 1j, -1 + 1j], min_per_edge=4)


def test_non_integer_winding_is_ill_conditioned():
    with pytest.raises(IllConditionedSliceError):
        local_multiplicity(np.sqrt, 0.0, 0.1)


def test_local_multiplicity_counts_order():
    assert local_multiplicity(lambda t: (t - 0.01) ** 2 * np.exp(t), 0.01, 0.2) == 2


def test_jacobi_theta_has_one_simple_zero_per_cell():
    zeros = slice_zeros(HALF, TAU_I, coordinate_slice(TAU_I, 0))
    assert len(zeros) == 1 and zeros[0].multiplicity == 1
    assert torus_distance(TAU_I, zeros[0].z, [0]) < 1e-10


def test_generic_slice_zeros_are_simple():
    zeros = slice_zeros(DELTA, GENERIC, coordinate_slice(GENERIC, 0, 0.37 + 0.52j))
    assert zeros and all(zr.multiplicity == 1 for zr in zeros)
    for zr in zeros:
        assert abs(theta(DELTA, GENERIC, zr.z).value) <= 1e-8


def test_reducible_slice_zeros_sit_on_the_branch():
    for w in (0.3 + 0.4j, 0.71 + 1.3j):
        zeros = slice_zeros(DELTA, DIAG, coordinate_slice(DIAG, 0, w))
        assert len(zeros) == 1
        assert torus_distance(TAU_I, zeros[0].z[:1], [0]) <= 1e-8


def test_identically_zero_slice_is_flagged():
    # z2 = 0 lies inside the branch {z2 = 0}
    with pytest.raises(ResampleError):
        slice_zeros(DELTA, DIAG, coordinate_slice(DIAG, 0, 0))


def test_slice_degree_constant_on_generic_slices():
    totals = set()
    for w in slice_values(GENERIC, 0, 10):
        zeros = slice_zeros(DELTA, GENERIC, coordinate_slice(GENERIC, 0, w))
        totals.add(sum(zr.multiplicity for zr in zeros))
    assert totals == {1}


def test_trace_empty_and_residuals():
    assert trace_zero_curve(DELTA, GENERIC, 0) == []
    cloud = trace_zero_curve(DELTA, GENERIC, 12)
    assert len(cloud) >= 12
    for zr in cloud:
        assert abs(theta(DELTA, GENERIC, zr.z).value) <= 1e-8
        assert zr.multiplicity >= 1


def test_trace_output_is_sorted_within_slices():
    cloud = trace_zero_curve(DELTA, GENERIC, 9)
    keys = [(slice_values(GENERIC, 0, 9).index(complex(zr.z[1])), zr.local_coord.real, zr.local_coord.imag)
            for zr in cloud]
    assert keys == sorted(keys)


def test_reducible_cloud_hugs_the_two_elliptic_curves():
    for direction in (0, 1):
        for zr in trace_zero_curve(DELTA, DIAG, 9, direction=direction):
            d1 = torus_distance(TAU_I, zr.z[:1], [0])
            d2 = torus_distance(PeriodMatrix([[2j]]), zr.z[1:], [0])
            assert min(d1, d2) <= 1e-6


@pytest.mark.slow
def test_generic_cloud_is_connected():
    # slices on a 20 x 20 grid of the cell (spacing 0.05 in each real coordinate), both directions
    points = [zr.z for d in (0, 1) for zr in trace_zero_curve(DELTA, GENERIC, 400, direction=d)]
    assert len(points) >= 800
    assert cloud_components(GENERIC, np.array(points), link=0.15) == 1


def test_cloud_components_counts_separate_clusters():
    pts = np.array([[0.1, 0.1], [0.12, 0.1], [0.5 + 0.5j, 0.4j], [0.52 + 0.5j, 0.4j]])
    assert cloud_components(DIAG, pts, 0.05) == 2
    # points one period apart are the same torus point
    assert cloud_components(DIAG, np.array([[0.1, 0.1], [1.1, 0.1 + 2j]]), 1e-9) == 1
    assert cloud_components(DIAG, np.zeros((0, 2)), 0.1) == 0


def test_classify_node_and_branch():
    node = classify_point(DELTA, DIAG, [0, 0])
    assert node.kind is PointKind.NODE
    assert abs(node.hess_det) > 1e-8 and node.full_grad_norm > 1e-8
    branch = classify_point(DELTA, DIAG, [0, 0.3 + 0.4j])
    assert branch.kind is PointKind.SMOOTH


def test_classify_generic_traced_points_are_smooth():
    for zr in trace_zero_curve(DELTA, GENERIC, 16):
        cls = classify_point(DELTA, GENERIC, zr.z)
        assert cls.kind is PointKind.SMOOTH
        assert cls.full_grad_norm > 1e-8
        assert np.linalg.norm(theta_jet(DELTA, GENERIC, zr.z).full_gradient()) == pytest.approx(cls.full_grad_norm)


def test_classify_errors():
    with pytest.raises(DomainError):
        classify_point(DELTA, GENERIC, [0.3, 0.3])
    # on the branch z2 = 0 but so close to the node that the gradient is in the gap
    with pytest.raises(UnresolvedClassificationError):
        classify_point(DELTA, DIAG, [1e-7, 0])


def test_verify_reducible_structure():
    report = verify_reducible_structure(DELTA, TAU_I, PeriodMatrix([[2j]]))
    assert report.branch_residual <= 1e-6
    assert report.node_count == 1 and report.node_order == 2
    assert tuple(report.branch_multiplicities) == (1, 1)
    assert report.to_json()["node_count"] == 1


def test_verify_reducible_square_lattice():
    report = verify_reducible_structure(DELTA, TAU_I, TAU_I)
    assert (report.node_count, report.node_order) == (1, 2)
    assert report.branch_residual <= 1e-6


def test_node_location_at_origin():
    o1, o2 = PeriodMatrix([[2j]]), PeriodMatrix([[3j]])
    report = verify_reducible_structure(DELTA, o1, o2)
    assert report.node_count == 1
    assert torus_distance(PeriodMatrix.diagonal(2j, 3j), report.node_location[0], [0, 0]) <= 1e-8


def test_verify_reducible_requires_odd_blocks():
    with pytest.raises(DomainError):
        verify_reducible_structure(Characteristic.zero(2), TAU_I, TAU_I)


def test_line_through_node_sees_order_two():
    line = Slice(np.zeros(2, dtype=complex), np.array([1, 0.6 - 0.2j]) / np.linalg.norm([1, 0.6 - 0.2j]))

    def f(ts):
        return np.array([theta(DELTA, DIAG, p).value for p in line.point(ts)])

    assert local_multiplicity(f, 0.0, 0.05) == 2
