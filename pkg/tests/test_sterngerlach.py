import math

import numpy as np
import pytest

from qdnsim.errors import DomainError, OverlapError
from qdnsim.localops import apply_local, check_semiunitary
from qdnsim.oracle import dense_embed
from qdnsim.questions import subset_distribution
from qdnsim.register import basis_state, from_amplitudes, make_void, random_labstate
from qdnsim.sterngerlach import SGCoefficients, sg_rotation, wigner_coefficients

h = math.sqrt(2) / 2


@pytest.mark.parametrize("theta,expected", [
    (0.0, (1, 0, 0, 1)),
    (math.pi, (0, 1, -1, 0)),
    (math.pi / 2, (h, h, -h, h)),
])
def test_wigner_coefficients(theta, expected):
    c = wigner_coefficients(theta)
    got = (c.alpha, c.beta, c.gamma, c.delta)
    assert np.allclose(got, expected, atol=1e-15, rtol=0)


@pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
def test_wigner_non_finite(bad):
    with pytest.raises(DomainError):
        wigner_coefficients(bad)


def test_coefficients_validated():
    with pytest.raises(DomainError):
        SGCoefficients(1, 1, 0, 1)
    with pytest.raises(DomainError):
        SGCoefficients(1, 0, 1, 0)  # columns not orthogonal


def test_identity_rotation():
    op = sg_rotation((1, 2), SGCoefficients.identity())
    assert np.array_equal(op.matrix, np.eye(4))


def test_same_detector_rejected():
    with pytest.raises(OverlapError):
        sg_rotation((2, 2), SGCoefficients.identity())


def test_void_and_double_fire_invariant(rng):
    for _ in range(20):
        op = sg_rotation((1, 2), SGCoefficients.random(rng))
        assert apply_local(op, make_void(3)).allclose(make_void(3))
        both = from_amplitudes(3, np.eye(8)[3] * (0.6 - 0.8j))
        assert apply_local(op, both).allclose(both)


def test_one_signal_mixing():
    c = SGCoefficients.from_block(np.array([[0.6, -0.8j], [0.8, 0.6j]]))
    op = sg_rotation((1, 2), c)
    out = apply_local(op, basis_state(2, 1))
    assert np.allclose(out.amplitudes, [0, c.alpha, c.beta, 0], atol=1e-15)
    out = apply_local(op, basis_state(2, 2))
    assert np.allclose(out.amplitudes, [0, c.gamma, c.delta, 0], atol=1e-15)


def test_semiunitary_over_sampled_angles(rng):
    for theta in rng.uniform(-10, 10, 1000):
        ok, r = check_semiunitary(sg_rotation((1, 2), wigner_coefficients(theta)), 1e-12)
        assert ok, r


def test_angle_composition(rng):
    for _ in range(50):
        t1, t2 = rng.uniform(-2 * math.pi, 2 * math.pi, 2)
        psi = from_amplitudes(2, [0, *(lambda v: v / np.linalg.norm(v))(
            rng.standard_normal(2) + 1j * rng.standard_normal(2)), 0])
        seq = apply_local(sg_rotation((1, 2), wigner_coefficients(t2)),
                          apply_local(sg_rotation((1, 2), wigner_coefficients(t1)), psi))
        assert seq.allclose(apply_local(sg_rotation((1, 2), wigner_coefficients(t1 + t2)), psi))


def test_dense_embedding_theta_pi():
    # wigner(pi) gives alpha = delta = 0, beta = 1, gamma = -1: |1) -> |2), |2) -> -|1)
    m = dense_embed(sg_rotation((1, 2), wigner_coefficients(math.pi)), 2).matrix
    expected = np.array([[1, 0, 0, 0], [0, 0, -1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    assert np.allclose(m, expected, atol=1e-15)


def test_remote_distribution_unchanged(rng):
    psi = random_labstate(6, rng)
    before = subset_distribution(psi, [3, 4, 5, 6])
    after = subset_distribution(apply_local(sg_rotation((1, 2), SGCoefficients.random(rng)), psi),
                                [3, 4, 5, 6])
    assert max(abs(before[k] - after[k]) for k in before) <= 1e-12
