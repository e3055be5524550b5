"""Deformation arithmetic: exponent keys, q-numbers, normalization series."""
import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from baxq.qnum import ExpKey, QContext, f_series, q_number

CTX = QContext(q=0.7)

fractions = st.fractions(
    min_value=-20, max_value=20, max_denominator=12,
)


@given(fractions, st.lists(fractions, max_size=4))
def test_expkey_json_roundtrip(const, taus):
    key = ExpKey.of(const, taus)
    assert ExpKey.from_json(key.to_json()) == key


@given(fractions, st.lists(fractions, max_size=4),
       fractions, st.lists(fractions, max_size=4))
def test_expkey_addition_commutes(c1, t1, c2, t2):
    a, b = ExpKey.of(c1, t1), ExpKey.of(c2, t2)
    assert a + b == b + a
    assert (a + b) - b == a


def test_expkey_trailing_zeros_trimmed():
    assert ExpKey.of(1, [2, 0, 0]) == ExpKey.of(1, [2])
    assert ExpKey.of(0, [0, 0]).is_constant()


def test_expkey_value_uses_twist():
    ctx = QContext(q=0.7, tau=(1.5, -0.5))
    key = ExpKey.of(Fraction(1, 2), [2, 3])
    assert key.value(ctx) == pytest.approx(0.5 + 2 * 1.5 + 3 * (-0.5))


def test_expkey_value_rejects_short_twist():
    with pytest.raises(ValueError):
        ExpKey.of(0, [1, 1, 1]).value(QContext(q=0.7, tau=(1.0,)))


def test_qpow_exact_for_real_q():
    assert CTX.qpow(2) == pytest.approx(0.49)
    assert CTX.qpow(-1) == pytest.approx(1.0 / 0.7)


def test_q_number_values():
    # [1] = 1, [2] = q + 1/q, [-nu] = -[nu]
    assert q_number(1, CTX) == pytest.approx(1.0)
    assert q_number(2, CTX) == pytest.approx(0.7 + 1.0 / 0.7)
    assert q_number(-3, CTX) == pytest.approx(-q_number(3, CTX))


@given(st.integers(min_value=2, max_value=4),
       st.floats(min_value=0.05, max_value=0.8),
       st.floats(min_value=0.0, max_value=2 * math.pi))
def test_f_series_telescopes_to_log(rank_plus_one, radius, angle):
    """sum_{j=1}^{L} F(q^{L-2j+1} z) = -log(1 - z) needs |q^{L-2j+1} z| < 1;
    q^{1-L} r < 1 bounds the admissible radius."""
    z = radius * complex(math.cos(angle), math.sin(angle))
    if abs(z) * CTX.qpow(1 - rank_plus_one) >= 0.95:
        return
    total = sum(
        f_series(rank_plus_one, CTX.qpow(rank_plus_one - 2 * j + 1) * z, CTX)
        for j in range(1, rank_plus_one + 1)
    )
    assert total == pytest.approx(-cmath.log(1 - z), abs=1e-9)


def test_f_series_diverges_outside_disk():
    with pytest.raises(ValueError):
        f_series(2, 1.2, CTX)
