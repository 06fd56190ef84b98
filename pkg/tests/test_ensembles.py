"""Ensemble families: determinism, constructed-class membership, validation."""

import numpy as np
import pytest

from ineqlab.ensembles import (
    FAMILIES,
    EnsembleConfig,
    draw,
    sample,
    trial_stream,
)
from ineqlab.errors import InvalidInput
from ineqlab.linalg import is_positive_contraction


def test_config_validation():
    with pytest.raises(InvalidInput):
        EnsembleConfig(family="laplace", dim=4, master_seed=0, trials=10)
    with pytest.raises(InvalidInput):
        EnsembleConfig(family="ginibre", dim=0, master_seed=0, trials=10)
    with pytest.raises(InvalidInput):
        EnsembleConfig(family="ginibre", dim=65, master_seed=0, trials=10)
    with pytest.raises(InvalidInput):
        EnsembleConfig(family="ginibre", dim=4, master_seed=0, trials=0)


def test_trial_index_range_enforced():
    cfg = EnsembleConfig(family="ginibre", dim=3, master_seed=1, trials=5)
    with pytest.raises(InvalidInput):
        sample(cfg, 5)
    with pytest.raises(InvalidInput):
        sample(cfg, -1)


def test_bitwise_reproducibility():
    cfg = EnsembleConfig(family="hermitian", dim=6, master_seed=123456, trials=10)
    for t in (0, 3, 9):
        assert np.array_equal(sample(cfg, t), sample(cfg, t))


def test_trials_are_order_independent():
    cfg = EnsembleConfig(family="ginibre", dim=4, master_seed=7, trials=10)
    direct = sample(cfg, 7)
    # Drawing other trials first must not affect trial 7.
    for t in (2, 9, 0):
        sample(cfg, t)
    assert np.array_equal(direct, sample(cfg, 7))


def test_different_trials_and_seeds_differ():
    cfg = EnsembleConfig(family="ginibre", dim=4, master_seed=7, trials=10)
    other = EnsembleConfig(family="ginibre", dim=4, master_seed=8, trials=10)
    assert not np.array_equal(sample(cfg, 0), sample(cfg, 1))
    assert not np.array_equal(sample(cfg, 0), sample(other, 0))


def test_family_membership_properties():
    for dim in (1, 2, 5, 16):
        cfg_seed = 1000 + dim
        for t in range(8):
            stream = trial_stream(
                EnsembleConfig(family="ginibre", dim=dim, master_seed=cfg_seed, trials=8), t
            )
            herm = draw("hermitian", stream, dim)
            assert np.max(np.abs(herm - herm.conj().T)) < 1e-14

            psd = draw("psd", stream, dim)
            vals = np.linalg.eigvalsh(psd)
            assert vals[0] >= -1e-12
            assert 0.0 < vals[-1] <= 2.0 + 1e-12

            contraction = draw("positive_contraction", stream, dim)
            assert is_positive_contraction(contraction, tol=1e-10)

            proj = draw("projection", stream, dim)
            assert np.max(np.abs(proj @ proj - proj)) < 1e-10
            assert np.max(np.abs(proj - proj.conj().T)) < 1e-10

            unitary = draw("unitary", stream, dim)
            assert np.max(np.abs(unitary.conj().T @ unitary - np.eye(dim))) < 1e-10

            vec = draw("unit_vector", stream, dim)
            assert vec.shape == (dim,)
            assert np.linalg.norm(vec) == pytest.approx(1.0, abs=1e-12)


def test_ginibre_moments():
    cfg = EnsembleConfig(family="ginibre", dim=16, master_seed=55, trials=60)
    entries = np.concatenate([sample(cfg, t).ravel() for t in range(cfg.trials)])
    assert abs(entries.mean()) < 0.02
    assert abs(np.mean(np.abs(entries) ** 2) - 1.0) < 0.02


def test_projection_hits_both_ranks_eventually():
    cfg = EnsembleConfig(family="projection", dim=4, master_seed=3, trials=64)
    ranks = {int(round(np.real(np.trace(sample(cfg, t))))) for t in range(cfg.trials)}
    assert len(ranks) >= 3


def test_draw_rejects_unknown_family():
    cfg = EnsembleConfig(family="ginibre", dim=2, master_seed=0, trials=1)
    stream = trial_stream(cfg, 0)
    with pytest.raises(InvalidInput):
        draw("cauchy", stream, 2)
    assert set(FAMILIES) == {
        "ginibre",
        "hermitian",
        "psd",
        "positive_contraction",
        "projection",
        "unitary",
        "unit_vector",
    }
