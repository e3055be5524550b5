"""Baxter operators: sector structure, commutativity, persistence."""
import numpy as np
import pytest

from baxq.qop import (QFamily, SectorLabel, basis_states, dressing_exponent,
                      load_matrix, op_det, save_matrix, sector_of, sectors,
                      state_index)

from conftest import make_setup


def test_state_indexing_row_major():
    assert state_index((1, 1), 2) == 0
    assert state_index((1, 2), 2) == 1
    assert state_index((3, 3), 2) == 8
    assert basis_states(1, 2) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_sectors_partition_basis():
    secs = sectors(2, 2)
    total = sorted(i for idxs in secs.values() for i in idxs)
    assert total == list(range(9))
    assert all(label.n == 2 for label in secs)
    assert sector_of((1, 3), 2) == SectorLabel((1, 0, 1))


def test_operator_is_sector_block_diagonal():
    twist, grading, ctx, fam = make_setup(2, 2)
    mat = fam.q_op(1, 0.37)
    secs = sectors(2, 2)
    mask = np.zeros((9, 9), dtype=bool)
    for idxs in secs.values():
        for r in idxs:
            for c in idxs:
                mask[r, c] = True
    assert np.max(np.abs(mat[~mask])) == 0.0


def test_q_operators_commute():
    twist, grading, ctx, fam = make_setup(1, 2)
    a = fam.q_op(1, 0.41)
    b = fam.q_op(2, 0.78)
    assert np.max(np.abs(a @ b - b @ a)) < 1e-10


def test_dressing_exponent_telescopes():
    """Summing D over a = 1..l+1 at fixed sector gives zero: the product of
    all dressings is zeta-power free."""
    twist, grading, ctx, fam = make_setup(2, 1)
    for label in sectors(2, 1):
        total = sum(dressing_exponent(a, label, twist, grading)
                    for a in range(1, 4))
        assert total == pytest.approx(0.0, abs=1e-12)


def test_generalized_q_reduces_to_single():
    twist, grading, ctx, fam = make_setup(1, 1)
    single = fam.generalized_q((1,), 0.53)
    assert np.max(np.abs(single - fam.q_op(1, 0.53))) == 0.0
    empty = fam.generalized_q((), 0.53)
    assert np.max(np.abs(empty - np.eye(fam.dim))) == 0.0


def test_op_det_matches_scalar_determinant():
    rng = np.random.default_rng(3)
    vals = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    blocks = [[vals[i, j] * np.eye(2, dtype=complex) for j in range(3)]
              for i in range(3)]
    det = op_det(blocks)
    assert det[0, 0] == pytest.approx(np.linalg.det(vals))
    assert det[0, 1] == 0.0


def test_matrix_persistence_roundtrip(tmp_path):
    rng = np.random.default_rng(5)
    mat = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    path = str(tmp_path / "q.bin")
    save_matrix(path, mat, {"l": 1, "n": 2, "zeta": [0.5, 0.0]})
    back, meta = load_matrix(path)
    assert np.array_equal(back, mat)
    assert meta["l"] == 1 and meta["shape"] == [4, 4]


def test_persistence_rejects_unknown_version(tmp_path):
    import json

    mat = np.eye(2, dtype=complex)
    path = str(tmp_path / "q.bin")
    save_matrix(path, mat, {})
    with open(path + ".json") as f:
        meta = json.load(f)
    meta["format_version"] = 99
    with open(path + ".json", "w") as f:
        json.dump(meta, f)
    with pytest.raises(ValueError):
        load_matrix(path)


def test_family_rejects_rank_mismatch():
    from baxq.borelhoms import TwistConfig
    from baxq.lop import GradingConfig
    from baxq.qnum import QContext

    with pytest.raises(ValueError):
        QFamily(1, TwistConfig.default(1), GradingConfig.principal(2),
                QContext(q=0.7))
