"""Gradient-descent update rules for the optimizer gene set.

Every optimizer updates one flat float64 parameter vector in place, which
keeps the per-step cost independent of how many layers the network has.
State slots are allocated lazily on the first step. Default
hyperparameters follow the common library defaults and are frozen here so
evolved results are reproducible.
"""

from __future__ import annotations

import numpy as np


class Optimizer:
    def __init__(self, lr: float):
        self.lr = lr

    def step(self, params: np.ndarray, grads: np.ndarray) -> None:
        raise NotImplementedError


class SGD(Optimizer):
    """Plain gradient descent; with momentum > 0 it smooths steps with an
    exponentially weighted average of the gradients:

        V = momentum * V + (1 - momentum) * g
        W = W - lr * V
    """

    def __init__(self, lr=0.01, momentum=0.0):
        super().__init__(lr)
        self.momentum = momentum
        self.v = None

    def step(self, params, grads):
        if self.momentum == 0.0:
            params -= self.lr * grads
            return
        if self.v is None:
            self.v = np.zeros_like(params)
        self.v *= self.momentum
        self.v += (1.0 - self.momentum) * grads
        params -= self.lr * self.v


class RMSProp(Optimizer):
    """Divides the step by a decaying average of squared gradients."""

    def __init__(self, lr=0.001, rho=0.9, eps=1e-7):
        super().__init__(lr)
        self.rho = rho
        self.eps = eps
        self.v = None

    def step(self, params, grads):
        if self.v is None:
            self.v = np.zeros_like(params)
        self.v *= self.rho
        self.v += (1.0 - self.rho) * grads * grads
        params -= self.lr * grads / (np.sqrt(self.v) + self.eps)


class Adam(Optimizer):
    def __init__(self, lr=0.001, beta1=0.9, beta2=0.999, eps=1e-7):
        super().__init__(lr)
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.m = None
        self.v = None
        self.t = 0

    def step(self, params, grads):
        if self.m is None:
            self.m = np.zeros_like(params)
            self.v = np.zeros_like(params)
        self.t += 1
        self.m *= self.beta1
        self.m += (1.0 - self.beta1) * grads
        self.v *= self.beta2
        self.v += (1.0 - self.beta2) * grads * grads
        m_hat = self.m / (1.0 - self.beta1**self.t)
        v_hat = self.v / (1.0 - self.beta2**self.t)
        params -= self.lr * m_hat / (np.sqrt(v_hat) + self.eps)


class Adamax(Optimizer):
    """Adam variant using the infinity norm for the second moment."""

    def __init__(self, lr=0.001, beta1=0.9, beta2=0.999, eps=1e-7):
        super().__init__(lr)
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.m = None
        self.u = None
        self.t = 0

    def step(self, params, grads):
        if self.m is None:
            self.m = np.zeros_like(params)
            self.u = np.zeros_like(params)
        self.t += 1
        self.m *= self.beta1
        self.m += (1.0 - self.beta1) * grads
        np.maximum(self.beta2 * self.u, np.abs(grads), out=self.u)
        params -= (self.lr / (1.0 - self.beta1**self.t)) * self.m / (self.u + self.eps)


class Nadam(Optimizer):
    """Adam with Nesterov momentum applied to the first-moment estimate."""

    def __init__(self, lr=0.001, beta1=0.9, beta2=0.999, eps=1e-7):
        super().__init__(lr)
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.m = None
        self.v = None
        self.t = 0

    def step(self, params, grads):
        if self.m is None:
            self.m = np.zeros_like(params)
            self.v = np.zeros_like(params)
        self.t += 1
        self.m *= self.beta1
        self.m += (1.0 - self.beta1) * grads
        self.v *= self.beta2
        self.v += (1.0 - self.beta2) * grads * grads
        m_hat = self.m / (1.0 - self.beta1 ** (self.t + 1))
        v_hat = self.v / (1.0 - self.beta2**self.t)
        lookahead = self.beta1 * m_hat + ((1.0 - self.beta1) / (1.0 - self.beta1**self.t)) * grads
        params -= self.lr * lookahead / (np.sqrt(v_hat) + self.eps)


class Adagrad(Optimizer):
    def __init__(self, lr=0.001, eps=1e-7, initial_accumulator=0.1):
        super().__init__(lr)
        self.eps = eps
        self.initial_accumulator = initial_accumulator
        self.acc = None

    def step(self, params, grads):
        if self.acc is None:
            self.acc = np.full_like(params, self.initial_accumulator)
        self.acc += grads * grads
        params -= self.lr * grads / (np.sqrt(self.acc) + self.eps)


class Adadelta(Optimizer):
    """Scales steps by the ratio of running update and gradient magnitudes."""

    def __init__(self, lr=0.001, rho=0.95, eps=1e-7):
        super().__init__(lr)
        self.rho = rho
        self.eps = eps
        self.acc_grad = None
        self.acc_delta = None

    def step(self, params, grads):
        if self.acc_grad is None:
            self.acc_grad = np.zeros_like(params)
            self.acc_delta = np.zeros_like(params)
        self.acc_grad *= self.rho
        self.acc_grad += (1.0 - self.rho) * grads * grads
        delta = grads * np.sqrt(self.acc_delta + self.eps) / np.sqrt(self.acc_grad + self.eps)
        self.acc_delta *= self.rho
        self.acc_delta += (1.0 - self.rho) * delta * delta
        params -= self.lr * delta


class Ftrl(Optimizer):
    """Follow-the-regularized-leader (proximal), per-coordinate schedule."""

    def __init__(self, lr=0.001, lr_power=-0.5, l1=0.0, l2=0.0, beta=0.0, initial_accumulator=0.1):
        super().__init__(lr)
        self.lr_power = lr_power
        self.l1 = l1
        self.l2 = l2
        self.beta = beta
        self.initial_accumulator = initial_accumulator
        self.n = None
        self.z = None

    def step(self, params, grads):
        if self.n is None:
            self.n = np.full_like(params, self.initial_accumulator)
            self.z = np.zeros_like(params)
        n_new = self.n + grads * grads
        sigma = (n_new**-self.lr_power - self.n**-self.lr_power) / self.lr
        self.z += grads - sigma * params
        self.n = n_new
        denom = (self.beta + n_new**-self.lr_power) / self.lr + 2.0 * self.l2
        update = (np.sign(self.z) * self.l1 - self.z) / denom
        np.copyto(params, np.where(np.abs(self.z) > self.l1, update, 0.0))


OPTIMIZER_CLASSES = {
    "adadelta": Adadelta,
    "adagrad": Adagrad,
    "adam": Adam,
    "adamax": Adamax,
    "ftrl": Ftrl,
    "nadam": Nadam,
    "rmsprop": RMSProp,
    "sgd": SGD,
}


def make_optimizer(name: str, **overrides) -> Optimizer:
    try:
        cls = OPTIMIZER_CLASSES[name.lower()]
    except KeyError:
        raise ValueError(
            f"unknown optimizer {name!r}; valid: {', '.join(sorted(OPTIMIZER_CLASSES))}"
        ) from None
    return cls(**overrides)
