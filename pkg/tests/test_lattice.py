from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conifold_dt.lattice import (
    ChargeIndex,
    euler_pairing,
    filtration_level,
    normalize_phase_index,
    seidel_thomas,
    seidel_thomas_index,
    to_class,
    to_index,
)
from conifold_dt.series import Series, Window, substitute_z

ints = st.integers(-20, 20)
charges = st.builds(ChargeIndex, ints, ints, ints)


def test_euler_pairing_examples():
    assert euler_pairing(ChargeIndex(1, 0, 0), ChargeIndex(0, 0, 1)) == 1
    assert euler_pairing(ChargeIndex(2, 5, 3), ChargeIndex(1, 7, 4)) == 2 * 4 - 1 * 3 == 5


@given(charges, charges, charges, ints)
def test_euler_pairing_bilinear_antisymmetric(u, v, w, k):
    assert euler_pairing(v, v) == 0
    assert euler_pairing(u, v) == -euler_pairing(v, u)
    assert euler_pairing(u + v, w) == euler_pairing(u, w) + euler_pairing(v, w)
    assert euler_pairing(u.scale(k), w) == k * euler_pairing(u, w)


def test_seidel_thomas_examples():
    assert seidel_thomas(ChargeIndex(1, 0, 0), 1) == ChargeIndex(1, 0, 0)
    assert seidel_thomas(ChargeIndex(0, 1, 5), 1) == ChargeIndex(-5, 1, 5)
    v = ChargeIndex(3, 2, 1)
    assert seidel_thomas(seidel_thomas(v, -1), 1) == v


@given(charges, charges, st.integers(-3, 3))
def test_seidel_thomas_preserves_pairing_and_filtration(v, w, steps):
    tv, tw = seidel_thomas(v, steps), seidel_thomas(w, steps)
    assert (tv.beta, tv.n) == (v.beta, v.n)
    assert filtration_level(tv) == filtration_level(v)
    assert euler_pairing(tv, tw) == euler_pairing(v, w)


@given(charges)
def test_index_pushforward_is_z_to_xz(v):
    # on index triples the twist is (r, b, n) -> (r + n, b, n) ...
    assert seidel_thomas_index(v) == ChargeIndex(v.r + v.n, v.beta, v.n)
    # ... which on series is z -> x z
    w = Window(-60, 60, 20, -20, 20)
    s = Series.monomial(w, (v.r, abs(v.beta), v.n))
    moved = substitute_z(s, lambda n: Series.monomial(w, (n, 0, 0)))
    u = seidel_thomas_index(ChargeIndex(v.r, abs(v.beta), v.n))
    assert moved == Series.monomial(w, u.astuple())


def test_class_index_conversion():
    v = ChargeIndex(2, 3, 4)
    assert to_class(v) == ChargeIndex(2, -3, -4)
    assert to_index(to_class(v)) == v


def test_filtration_level():
    assert filtration_level(ChargeIndex(5, 0, 0)) == 0
    assert filtration_level(ChargeIndex(0, 0, 1)) == 1


@pytest.mark.parametrize(
    "v, phi, expected",
    [
        (ChargeIndex(1, 1, 1), Fraction(3, 4), (ChargeIndex(1, 1, 1), Fraction(3, 4))),
        (ChargeIndex(1, 1, 1), Fraction(7, 4), (ChargeIndex(-1, -1, -1), Fraction(3, 4))),
        (ChargeIndex(2, 0, 3), Fraction(-1, 4), (ChargeIndex(-2, 0, -3), Fraction(3, 4))),
        (ChargeIndex(2, 0, 3), Fraction(1), (ChargeIndex(2, 0, 3), Fraction(1))),
        (ChargeIndex(2, 0, 3), Fraction(2), (ChargeIndex(-2, 0, -3), Fraction(1))),
    ],
)
def test_normalize_phase_index(v, phi, expected):
    assert normalize_phase_index(v, phi) == expected


@given(charges, st.fractions(min_value=-5, max_value=5))
def test_normalize_idempotent(v, phi):
    w, phi0 = normalize_phase_index(v, phi)
    assert 0 < phi0 <= 1
    assert normalize_phase_index(w, phi0) == (w, phi0)
