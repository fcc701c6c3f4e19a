import numpy as np
import pytest

from conftest import random_bloch_in_ball
from qslip import (
    BlochVector,
    ModelParams,
    SlippageChannel,
    apply_slippage,
    choi_matrix,
    compose_actions,
    eigenvalues_closed_form,
    identity_action,
    is_completely_positive,
    kraus_apply,
    kraus_operators,
    semigroup_action,
    slippage_action,
    symmetric_projector,
)
from qslip import qmat


def test_channel_validation():
    SlippageChannel(0.0)
    SlippageChannel(1.0)
    for bad in (-0.01, 1.01, np.nan):
        with pytest.raises(ValueError):
            SlippageChannel(bad)


def test_apply_slippage_examples():
    r = BlochVector(1.0, 0.0, 0.0)
    assert apply_slippage(SlippageChannel(1.0), r) == r
    assert apply_slippage(SlippageChannel(0.0), r) == BlochVector(0.0, 0.0, 0.0)
    assert apply_slippage(SlippageChannel(0.25), r) == BlochVector(0.25, 0.0, 0.0)


def test_kraus_completeness():
    for mu in np.linspace(0.0, 1.0, 21):
        ops = kraus_operators(SlippageChannel(mu))
        total = sum(qmat.dagger(g) @ g for g in ops)
        assert np.abs(total - np.eye(2)).max() <= 1e-14


def test_kraus_fixed_points():
    rho = 0.5 * (qmat.IDENTITY_2 + qmat.PAULI_3)
    assert np.abs(kraus_apply(SlippageChannel(1.0), rho) - rho).max() <= 1e-15
    out = kraus_apply(SlippageChannel(0.0), rho)
    assert np.abs(out - np.eye(2) / 2.0).max() <= 1e-15


def test_kraus_agrees_with_bloch_contraction():
    rng = np.random.default_rng(23)
    for _ in range(100):
        r = BlochVector(*random_bloch_in_ball(rng))
        mu = rng.uniform(0.0, 1.0)
        channel = SlippageChannel(mu)
        via_kraus = kraus_apply(channel, r.to_density_matrix())
        via_bloch = apply_slippage(channel, r).to_density_matrix()
        assert np.abs(via_kraus - via_bloch).max() <= 1e-12
        assert abs(np.trace(via_kraus) - 1.0) <= 1e-14


def test_kraus_apply_rejects_non_states():
    channel = SlippageChannel(0.5)
    with pytest.raises(ValueError):
        kraus_apply(channel, np.array([[1.0, 1.0], [0.0, 0.0]]))  # not Hermitian
    with pytest.raises(ValueError):
        kraus_apply(channel, np.eye(2))  # trace 2
    with pytest.raises(ValueError):
        kraus_apply(channel, BlochVector(1.2, 0.0, 0.0).to_density_matrix())  # outside ball


def test_choi_of_identity_is_entangled_projector():
    choi = choi_matrix(identity_action())
    assert np.abs(choi - symmetric_projector()).max() <= 1e-15
    w = qmat.hermitian_eigenvalues(choi)
    assert np.abs(w - np.array([1.0, 0.0, 0.0, 0.0])).max() <= 1e-12


def test_choi_spectrum_of_slippage_channel():
    p = ModelParams(0.1, 0.9)
    rng = np.random.default_rng(29)
    for mu in rng.uniform(0.0, 1.0, size=10):
        w = qmat.hermitian_eigenvalues(choi_matrix(slippage_action(SlippageChannel(mu))))
        expected = np.array([(1.0 + 3.0 * mu) / 4.0] + [(1.0 - mu) / 4.0] * 3)
        assert np.abs(w - expected).max() <= 1e-10
        # Same spectrum as the closed-form eigenvalues frozen at t = 0.
        closed = np.sort(eigenvalues_closed_form(p, mu, 0.0))[::-1]
        assert np.abs(w - closed).max() <= 1e-10


def test_semigroup_choi_detects_non_cp():
    family = semigroup_action(ModelParams(0.1, 0.9))
    w = qmat.hermitian_eigenvalues(choi_matrix(family(0.5)))
    assert w[-1] < -0.1


def test_cp_scan_completely_positive_branch():
    family = semigroup_action(0.5, 0.0, 1.0)  # b = 0
    report = is_completely_positive(family, np.arange(0.0, 5.0001, 0.01))
    assert report.is_cp
    assert report.min_eigenvalue >= -1e-12


def test_cp_scan_positive_not_cp_branch():
    family = semigroup_action(1.0, 0.5, 2.0)
    report = is_completely_positive(family, np.arange(0.0, 5.0001, 0.01))
    assert not report.is_cp
    assert report.min_eigenvalue < -1e-8


def test_cp_scan_slipped_family():
    p = ModelParams(0.1, 0.9)
    gamma = semigroup_action(p)
    slip = slippage_action(SlippageChannel(0.25))  # just inside 1/R4 ~ 0.2528
    family = lambda t: compose_actions(gamma(t), slip)
    report = is_completely_positive(family, np.linspace(0.0, 5.0, 201))
    assert report.is_cp


def test_cp_scan_validation():
    family = semigroup_action(0.5, 0.0, 1.0)
    with pytest.raises(ValueError):
        is_completely_positive(family, [])
    with pytest.raises(ValueError):
        is_completely_positive(family, [-1.0, 0.0])


def test_min_choi_eigenvalue_monotone_in_contraction():
    p = ModelParams(0.1, 0.9)
    gamma = semigroup_action(p)
    for t in (0.3, 1.0, 2.5):
        minima = []
        for mu in np.linspace(1.0, 0.0, 11):
            action = compose_actions(gamma(t), slippage_action(SlippageChannel(mu)))
            minima.append(qmat.hermitian_eigenvalues(choi_matrix(action))[-1])
        diffs = np.diff(minima)
        assert (diffs >= -1e-12).all()


def test_choi_of_slipped_semigroup_is_evolved_isotropic():
    # (gamma_t . S_mu) (x) id applied to the projector must reproduce the
    # explicit evolved isotropic matrix: three modules, one identity.
    from qslip import evolve_isotropic

    rng = np.random.default_rng(43)
    for _ in range(10):
        p = ModelParams(rng.uniform(0.0, 1.0), rng.uniform(0.1, 0.9))
        mu = rng.uniform(0.0, 1.0)
        t = rng.uniform(0.0, 4.0)
        action = compose_actions(
            semigroup_action(p)(t), slippage_action(SlippageChannel(mu))
        )
        assert np.abs(choi_matrix(action) - evolve_isotropic(p, mu, t)).max() <= 1e-12


def test_compose_scales_pauli_images():
    p = ModelParams(0.3, 0.8)
    gamma = semigroup_action(p)
    mu = 0.4
    composed = compose_actions(gamma(0.7), slippage_action(SlippageChannel(mu)))
    direct = gamma(0.7)
    assert np.abs(composed[0] - direct[0]).max() <= 1e-14
    for k in (1, 2, 3):
        assert np.abs(composed[k] - mu * direct[k]).max() <= 1e-14
