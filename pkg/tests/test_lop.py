"""Lax matrices: closed form vs factored oracle, rotated family."""
import random

import pytest

from baxq.borelhoms import TwistConfig
from baxq.lop import (GradingConfig, build_L, build_L_a,
                      build_L_factored_oracle, max_entry_difference)
from baxq.qnum import QContext


def _ctx(l):
    return QContext(q=0.7, tau=TwistConfig.default(l).tau)


@pytest.mark.parametrize("l", [1, 2, 3])
def test_closed_form_matches_factored_oracle(l):
    rng = random.Random(7 + l)
    grading = GradingConfig.principal(l)
    ctx = _ctx(l)
    for _ in range(2):
        zeta = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        a = build_L(zeta, grading, ctx)
        b = build_L_factored_oracle(zeta, grading, ctx)
        assert max_entry_difference(a, b, ctx) < 1e-12


def test_rotated_family_closes():
    """a = l+1 gives back the basic matrix; all a are well-defined."""
    l, zeta = 2, 0.4 + 0.1j
    grading = GradingConfig.principal(l)
    ctx = _ctx(l)
    basic = build_L(zeta, grading, ctx)
    again = build_L_a(l + 1, zeta, grading, ctx)
    assert max_entry_difference(basic, again, ctx) == 0.0
    for a in range(1, l + 1):
        rot = build_L_a(a, zeta, grading, ctx)
        assert max_entry_difference(basic, rot, ctx) > 0.1


def test_rotation_out_of_range_raises():
    grading = GradingConfig.principal(2)
    with pytest.raises(ValueError):
        build_L_a(0, 0.3, grading, _ctx(2))


def test_grading_partial_sums():
    g = GradingConfig((2, 1, 3))
    assert g.l == 2
    assert g.total == 6
    assert g.partial(1, 3) == 4  # s_1 + s_2
    assert g.rotate().s == (1, 3, 2)


def test_entry_indexing_is_one_based():
    l = 1
    grading = GradingConfig.principal(l)
    ctx = _ctx(l)
    lop = build_L(0.5, grading, ctx)
    # Top-left entry of the basic matrix is the bare Cartan power q^{N_1}.
    ((key, coeff),) = lop.entry(1, 1).terms
    assert coeff == pytest.approx(1.0)


def test_zeta_dependence_is_polynomial():
    """Entries at zeta and -zeta differ only in odd-grade terms (s = 1)."""
    l = 1
    grading = GradingConfig.principal(l)
    ctx = _ctx(l)
    plus = build_L(0.5, grading, ctx)
    minus = build_L(-0.5, grading, ctx)
    # Off-diagonal entries carry a single power of zeta and flip sign.
    diff = plus.entry(2, 1) - minus.entry(2, 1).scale(-1.0)
    assert diff.prune(ctx).max_abs() == 0.0
