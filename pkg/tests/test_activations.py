import numpy as np
import pytest

from evonas.activations import (
    KNOWN_ACTIVATIONS,
    SELU_LAMBDA,
    activate,
    activation_derivative,
    softmax_backward,
    softmax_jacobian,
)

ELEMENTWISE = [k for k in KNOWN_ACTIVATIONS if k != "softmax"]


def test_closed_form_values():
    assert activate("sigmoid", np.array([0.0]))[0] == pytest.approx(0.5)
    assert activate("relu", np.array([-3.2]))[0] == 0.0
    assert activate("softsign", np.array([1.0]))[0] == pytest.approx(0.5)
    assert activate("tanh", np.array([0.0]))[0] == 0.0
    assert activate("softplus", np.array([0.0]))[0] == pytest.approx(np.log(2.0))
    assert activate("elu", np.array([-1.0]))[0] == pytest.approx(np.expm1(-1.0))
    assert activate("elu", np.array([2.5]))[0] == 2.5
    assert activate("selu", np.array([1.0]))[0] == pytest.approx(SELU_LAMBDA)


def test_softmax_symmetry():
    out = activate("softmax", np.array([1.0, 1.0, 1.0, 1.0]))
    assert np.allclose(out, 0.25, atol=1e-15)


def test_softmax_sums_to_one(rng):
    z = rng.normal(scale=50.0, size=(6, 32))
    out = activate("softmax", z)
    assert np.all(np.abs(out.sum(axis=0) - 1.0) < 1e-12)


def test_softmax_stable_at_extremes():
    out = activate("softmax", np.array([1000.0, -1000.0, 0.0]))
    assert np.isfinite(out).all()
    assert out.sum() == pytest.approx(1.0)


def test_derivative_closed_forms():
    z = np.array([0.0])
    assert activation_derivative("sigmoid", z, activate("sigmoid", z))[0] == pytest.approx(0.25)
    assert activation_derivative("tanh", z, activate("tanh", z))[0] == pytest.approx(1.0)


@pytest.mark.parametrize("kind", ELEMENTWISE)
def test_derivative_matches_finite_difference(kind, rng):
    z = rng.normal(scale=2.0, size=200)
    # relu is non-differentiable at 0; keep samples away from the kink
    z = z[np.abs(z) > 1e-3]
    a = activate(kind, z)
    analytic = activation_derivative(kind, z, a)
    h = 1e-6
    fd = (activate(kind, z + h) - activate(kind, z - h)) / (2 * h)
    assert np.allclose(analytic, fd, rtol=1e-6, atol=1e-9)


def test_relu_derivative_zero_at_origin():
    z = np.array([0.0])
    assert activation_derivative("relu", z, activate("relu", z))[0] == 0.0


def test_softmax_jacobian_structure(rng):
    a = activate("softmax", rng.normal(size=5))
    jac = softmax_jacobian(a)
    assert np.allclose(jac, jac.T, atol=1e-15)
    assert np.allclose(jac.sum(axis=0), 0.0, atol=1e-14)


def test_softmax_backward_matches_finite_difference(rng):
    z = rng.normal(size=(5, 3))
    g = rng.normal(size=(5, 3))
    a = activate("softmax", z)
    analytic = softmax_backward(a, g)
    h = 1e-6
    fd = np.empty_like(z)
    for i in range(z.shape[0]):
        for j in range(z.shape[1]):
            zp, zm = z.copy(), z.copy()
            zp[i, j] += h
            zm[i, j] -= h
            fd[i, j] = np.sum((activate("softmax", zp) - activate("softmax", zm)) * g) / (2 * h)
    assert np.allclose(analytic, fd, rtol=1e-5, atol=1e-8)


def test_unknown_activation_rejected():
    with pytest.raises(ValueError, match="unknown activation"):
        activate("exponential", np.array([1.0]))
    with pytest.raises(ValueError, match="Jacobian"):
        activation_derivative("softmax", np.array([1.0]), np.array([1.0]))
