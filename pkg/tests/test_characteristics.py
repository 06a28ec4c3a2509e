import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from genus2theta.characteristics import (
    Characteristic,
    Parity,
    direct_sum,
    enumerate_characteristics,
    half_period,
    parity,
    split,
)
from genus2theta.errors import DomainError
from genus2theta.siegel import PeriodMatrix, lattice_coordinates

HALF = Characteristic((1,), (1,))
OMEGA = PeriodMatrix.diagonal(1j, 2j)

bits = st.integers(0, 1)


@st.composite
def characteristics(draw, g=None):
    g = draw(st.integers(1, 3)) if g is None else g
    return Characteristic(tuple(draw(bits) for _ in range(g)), tuple(draw(bits) for _ in range(g)))


def test_parity_examples():
    assert parity(Characteristic((0, 0), (0, 0))) is Parity.EVEN
    assert parity(Characteristic((1, 1), (1, 1))) is Parity.EVEN
    assert parity(HALF) is Parity.ODD


def test_direct_sum_examples():
    assert direct_sum(HALF, HALF) == Characteristic((1, 1), (1, 1))
    assert direct_sum(Characteristic.zero(1), Characteristic.zero(1)) == Characteristic.zero(2)
    assert direct_sum(Characteristic((1,), (0,)), Characteristic((0,), (1,))) == Characteristic((1, 0), (0, 1))


def test_split_examples():
    assert split(Characteristic((1, 1), (1, 1)), 1) == (HALF, HALF)
    assert split(Characteristic.zero(2), 1) == (Characteristic.zero(1), Characteristic.zero(1))
    for delta in enumerate_characteristics(2):
        assert direct_sum(*split(delta, 1)) == delta


@pytest.mark.parametrize("g1", [0, 2, -1])
def test_split_out_of_range(g1):
    with pytest.raises(DomainError):
        split(Characteristic.zero(2), g1)


def test_enumerate_counts():
    assert len(enumerate_characteristics(1)) == 4
    chars = enumerate_characteristics(2)
    assert len(chars) == 16 and len(set(chars)) == 16
    assert sum(c.parity() is Parity.EVEN for c in chars) == 10
    assert sum(c.parity() is Parity.ODD for c in chars) == 6


def test_enumerate_is_lexicographic():
    chars = enumerate_characteristics(2)
    keys = [c.dp + c.dpp for c in chars]
    assert keys == sorted(keys) == list(itertools.product((0, 1), repeat=4))


def test_half_period_examples():
    assert np.allclose(half_period(Characteristic.zero(2), OMEGA), 0)
    tau = PeriodMatrix([[0.3 + 1.7j]])
    assert np.allclose(half_period(Characteristic((1,), (0,)), tau), [0.5])
    hp = half_period(Characteristic((1, 1), (1, 1)), OMEGA)
    assert np.allclose(hp, [0.5 + 0.5j, 0.5 + 1.0j], atol=1e-15)


def test_half_period_genus_mismatch():
    with pytest.raises(DomainError):
        half_period(HALF, OMEGA)


def test_bits_are_validated():
    with pytest.raises((DomainError, ValueError)):
        Characteristic((2,), (0,))
    with pytest.raises((DomainError, ValueError)):
        Characteristic((1, 0), (0,))


def test_json_round_trip():
    for delta in enumerate_characteristics(2):
        data = delta.to_json()
        assert set(data) == {"g", "dp", "dpp"}
        assert Characteristic.from_json(data) == delta


@given(characteristics(g=1), characteristics(g=1))
def test_parity_additive_over_blocks(d1, d2):
    odd = (d1.parity() is Parity.ODD) ^ (d2.parity() is Parity.ODD)
    assert (direct_sum(d1, d2).parity() is Parity.ODD) == odd


@given(characteristics(), characteristics())
def test_split_inverts_direct_sum(d1, d2):
    assert split(direct_sum(d1, d2), d1.genus) == (d1, d2)


@given(characteristics(g=2))
def test_doubled_half_period_is_a_lattice_vector(delta):
    omega = PeriodMatrix([[0.2 + 1.1j, -0.3 + 0.4j], [-0.3 + 0.4j, 0.1 + 1.9j]])
    s, u = lattice_coordinates(omega, 2 * half_period(delta, omega))
    assert np.allclose(s, np.round(s), atol=1e-12)
    assert np.allclose(u, np.round(u), atol=1e-12)
