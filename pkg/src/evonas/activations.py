"""Activation functions and their derivatives, in numerically stable forms.

All element-wise functions take and return float64 arrays. Softmax is the
one vector-wise activation: it normalizes over a layer's units (axis 0 of a
[units x batch] array), so its backward pass needs a Jacobian-vector
product instead of an element-wise derivative.
"""

from __future__ import annotations

import numpy as np

ELU_ALPHA = 1.0
SELU_LAMBDA = 1.0507009873554805
SELU_ALPHA = 1.6732632423543772


def sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def relu(z):
    return np.maximum(0.0, z)


def elu(z):
    return np.where(z > 0, z, ELU_ALPHA * np.expm1(np.minimum(z, 0.0)))


def selu(z):
    return SELU_LAMBDA * np.where(z > 0, z, SELU_ALPHA * np.expm1(np.minimum(z, 0.0)))


def softplus(z):
    return np.log1p(np.exp(-np.abs(z))) + np.maximum(z, 0.0)


def softsign(z):
    return z / (1.0 + np.abs(z))


def tanh(z):
    return np.tanh(z)


def softmax(z, axis=0):
    shifted = z - np.max(z, axis=axis, keepdims=True)
    e = np.exp(shifted)
    return e / np.sum(e, axis=axis, keepdims=True)


def d_sigmoid(z, a):
    return a * (1.0 - a)


def d_relu(z, a):
    # subgradient at exactly 0 is 0
    return np.where(z > 0, 1.0, 0.0)


def d_elu(z, a):
    return np.where(z > 0, 1.0, a + ELU_ALPHA)


def d_selu(z, a):
    return np.where(z > 0, SELU_LAMBDA, a + SELU_LAMBDA * SELU_ALPHA)


def d_softplus(z, a):
    return sigmoid(z)


def d_softsign(z, a):
    return 1.0 / (1.0 + np.abs(z)) ** 2


def d_tanh(z, a):
    return 1.0 - a * a


_ELEMENTWISE = {
    "elu": (elu, d_elu),
    "relu": (relu, d_relu),
    "selu": (selu, d_selu),
    "sigmoid": (sigmoid, d_sigmoid),
    "softplus": (softplus, d_softplus),
    "softsign": (softsign, d_softsign),
    "tanh": (tanh, d_tanh),
}

#: the activation gene set (Table-driven default search space)
DEFAULT_ACTIVATIONS = ("elu", "relu", "sigmoid", "softmax", "softplus", "softsign", "tanh")
#: every identifier the engine can run ("selu" is opt-in, outside the default set)
KNOWN_ACTIVATIONS = DEFAULT_ACTIVATIONS + ("selu",)


def activate(kind: str, z: np.ndarray) -> np.ndarray:
    """Apply the named activation; softmax normalizes over axis 0."""
    if kind == "softmax":
        return softmax(z, axis=0)
    try:
        fn, _ = _ELEMENTWISE[kind]
    except KeyError:
        raise ValueError(f"unknown activation {kind!r}; valid: {', '.join(KNOWN_ACTIVATIONS)}")
    return fn(z)


def activation_derivative(kind: str, z: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Element-wise derivative given pre-activation z and output a = activate(z).

    Softmax has no element-wise derivative; use softmax_backward (JVP) or
    softmax_jacobian instead.
    """
    if kind == "softmax":
        raise ValueError("softmax derivative is a Jacobian; use softmax_backward")
    try:
        _, dfn = _ELEMENTWISE[kind]
    except KeyError:
        raise ValueError(f"unknown activation {kind!r}; valid: {', '.join(KNOWN_ACTIVATIONS)}")
    return dfn(z, a)


def softmax_jacobian(a: np.ndarray) -> np.ndarray:
    """Full Jacobian d softmax_i / d z_j = a_i (delta_ij - a_j) for one vector."""
    a = np.asarray(a, dtype=float).ravel()
    return np.diag(a) - np.outer(a, a)


def softmax_backward(a: np.ndarray, grad_out: np.ndarray) -> np.ndarray:
    """Jacobian-vector product for softmax over axis 0 of [units x batch] arrays."""
    inner = np.sum(a * grad_out, axis=0, keepdims=True)
    return a * (grad_out - inner)
