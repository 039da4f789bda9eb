import numpy as np
import pytest

from evonas.optimizers import OPTIMIZER_CLASSES, SGD, Adam, make_optimizer


def test_sgd_direct_substitution():
    w = np.array([1.0])
    SGD(lr=0.1).step(w, np.array([0.5]))
    assert w[0] == 0.95


def test_momentum_first_step():
    opt = SGD(lr=0.1, momentum=0.9)
    w = np.array([1.0])
    opt.step(w, np.array([1.0]))
    assert opt.v[0] == pytest.approx(0.1, abs=1e-15)
    assert w[0] == pytest.approx(1.0 - 0.1 * 0.1, abs=1e-15)


def test_momentum_two_step_trace_machine_precision():
    # hand trace of V = b*V + (1-b)*g ; W = W - lr*V
    beta, lr = 0.9, 0.1
    g1, g2 = 0.5, 0.3
    v1 = beta * 0.0 + (1 - beta) * g1
    w1 = 1.0 - lr * v1
    v2 = beta * v1 + (1 - beta) * g2
    w2 = w1 - lr * v2

    opt = SGD(lr=lr, momentum=beta)
    w = np.array([1.0])
    opt.step(w, np.array([g1]))
    assert opt.v[0] == v1
    assert w[0] == w1
    opt.step(w, np.array([g2]))
    assert opt.v[0] == v2
    assert w[0] == w2
    # and the hand-arithmetic decimal values
    assert v1 == pytest.approx(0.05, abs=1e-15)
    assert w1 == pytest.approx(0.995, abs=1e-15)
    assert v2 == pytest.approx(0.075, abs=1e-15)
    assert w2 == pytest.approx(0.9875, abs=1e-15)


def test_adam_converges_on_quadratic():
    # minimizes f(w) = w^2 from w=1 with default hyperparameters
    w = np.array([1.0])
    opt = Adam()
    for _ in range(2500):
        opt.step(w, 2.0 * w)
    assert abs(w[0]) < 1e-2


@pytest.mark.parametrize("name", sorted(OPTIMIZER_CLASSES))
def test_every_optimizer_descends_quadratic(name):
    w = np.array([1.0])
    opt = make_optimizer(name)
    for _ in range(1000):
        opt.step(w, 2.0 * w)
    assert np.isfinite(w[0])
    assert abs(w[0]) < 0.999, f"{name} did not move towards the minimum"


@pytest.mark.parametrize("name", sorted(OPTIMIZER_CLASSES))
def test_optimizers_are_deterministic(name):
    grads = np.linspace(-1.0, 1.0, 10)

    def run():
        w = np.full(10, 0.5)
        opt = make_optimizer(name)
        for _ in range(50):
            opt.step(w, grads * w)
        return w

    assert np.array_equal(run(), run())


def test_state_matches_parameter_shape():
    w = np.zeros(7)
    opt = Adam()
    opt.step(w, np.ones(7))
    assert opt.m.shape == w.shape
    assert opt.v.shape == w.shape


def test_make_optimizer_rejects_unknown():
    with pytest.raises(ValueError, match="unknown optimizer"):
        make_optimizer("adamw")


def test_make_optimizer_is_case_insensitive():
    assert isinstance(make_optimizer("RMSProp"), OPTIMIZER_CLASSES["rmsprop"])
