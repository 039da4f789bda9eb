"""From-scratch dense feed-forward engine: build, forward, backprop, fit.

A network is one input-processing layer of N units, H hidden layers of N
units, and a single output unit. Parameters live in one flat float64
vector; per-layer weight/bias arrays are views into it, so optimizers can
update the whole network with a handful of vector operations.

All computation is float64 and batches flow through in [units x batch]
orientation internally (the public API takes [instances x attributes]).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .activations import KNOWN_ACTIVATIONS, activate, activation_derivative, softmax_backward
from .genome import DEFAULT_OPTIMIZERS, Genotype
from .optimizers import Optimizer, make_optimizer

#: clamp for predicted probabilities inside the cross-entropy
BCE_EPS = 1e-7


@dataclass(frozen=True)
class NetworkConfig:
    input_dim: int
    hidden_layers: int
    nodes: int
    input_activation: str
    hidden_activation: str
    output_activation: str
    optimizer: str
    epochs: int
    batch_size: int
    output_bias: bool = True

    def __post_init__(self):
        if min(self.input_dim, self.hidden_layers, self.nodes, self.epochs, self.batch_size) < 1:
            raise ValueError(f"all numeric network parameters must be >= 1: {self}")
        for kind in (self.input_activation, self.hidden_activation, self.output_activation):
            if kind not in KNOWN_ACTIVATIONS:
                raise ValueError(
                    f"unknown activation {kind!r}; valid: {', '.join(KNOWN_ACTIVATIONS)}"
                )
        if self.optimizer not in DEFAULT_OPTIMIZERS:
            raise ValueError(
                f"unknown optimizer {self.optimizer!r}; valid: {', '.join(DEFAULT_OPTIMIZERS)}"
            )

    def layer_plan(self) -> tuple[list[int], list[str]]:
        """Unit counts [s, N, ..., N, 1] and the activation of each layer."""
        sizes = [self.input_dim] + [self.nodes] * (self.hidden_layers + 1) + [1]
        acts = (
            [self.input_activation]
            + [self.hidden_activation] * self.hidden_layers
            + [self.output_activation]
        )
        return sizes, acts


def config_from_genotype(g: Genotype, input_dim: int, output_bias: bool = True) -> NetworkConfig:
    return NetworkConfig(
        input_dim=input_dim,
        hidden_layers=g.hidden_layers,
        nodes=g.nodes,
        input_activation=g.input_activation,
        hidden_activation=g.hidden_activation,
        output_activation=g.output_activation,
        optimizer=g.optimizer,
        epochs=g.epochs,
        batch_size=g.batch_size,
    )


@dataclass
class TrainReport:
    epochs_run: int
    losses: tuple[float, ...]
    stopped_early: bool
    diverged: bool = False
    updates_run: int = 0


class DenseNetwork:
    """Dense feed-forward network with seeded Glorot-uniform weights."""

    def __init__(
        self,
        layer_sizes,
        layer_activations,
        *,
        output_bias: bool = True,
        seed: int = 0,
        config: NetworkConfig | None = None,
    ):
        if len(layer_sizes) != len(layer_activations) + 1:
            raise ValueError("need one activation per weight layer")
        self.layer_sizes = [int(n) for n in layer_sizes]
        self.layer_activations = tuple(layer_activations)
        self.output_bias = output_bias
        self.seed = int(seed)
        self.config = config

        counts = []
        for n_in, n_out in zip(self.layer_sizes, self.layer_sizes[1:]):
            counts.append(n_out * n_in)
            counts.append(n_out)
        self.param_count = sum(counts)
        self.params = np.zeros(self.param_count, dtype=np.float64)
        self._grad = np.zeros(self.param_count, dtype=np.float64)
        self.weights, self.biases = self._views(self.params)
        self._gw, self._gb = self._views(self._grad)

        rng = np.random.default_rng(self.seed)
        for w in self.weights:
            n_out, n_in = w.shape
            limit = np.sqrt(6.0 / (n_in + n_out))
            w[:] = rng.uniform(-limit, limit, size=w.shape)

    def _views(self, flat: np.ndarray):
        weights, biases = [], []
        offset = 0
        for n_in, n_out in zip(self.layer_sizes, self.layer_sizes[1:]):
            weights.append(flat[offset : offset + n_out * n_in].reshape(n_out, n_in))
            offset += n_out * n_in
            biases.append(flat[offset : offset + n_out].reshape(n_out, 1))
            offset += n_out
        return weights, biases

    @property
    def n_layers(self) -> int:
        return len(self.weights)

    def finite(self) -> bool:
        return bool(np.isfinite(self.params).all())


def build(config: NetworkConfig, seed: int) -> DenseNetwork:
    """Decode a configuration into a freshly initialized network."""
    sizes, acts = config.layer_plan()
    return DenseNetwork(sizes, acts, output_bias=config.output_bias, seed=seed, config=config)


def _forward_columns(net: DenseNetwork, a0: np.ndarray):
    zs, outs = [], [a0]
    a = a0
    for w, b, kind in zip(net.weights, net.biases, net.layer_activations):
        z = w @ a
        z += b
        a = activate(kind, z)
        zs.append(z)
        outs.append(a)
    return zs, outs


def forward(net: DenseNetwork, X: np.ndarray):
    """Run a [instances x attributes] batch; returns (outputs, cache).

    The cache holds per-layer pre-activations and activations for backprop.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != net.layer_sizes[0]:
        raise ValueError(f"batch shape {X.shape} does not match input dim {net.layer_sizes[0]}")
    zs, outs = _forward_columns(net, X.T)
    return outs[-1][0], (zs, outs)


def predict_raw(net: DenseNetwork, X: np.ndarray) -> np.ndarray:
    return forward(net, X)[0]


def predict_binary(net: DenseNetwork, X: np.ndarray) -> np.ndarray:
    """Threshold raw outputs at 0.5; exactly 0.5 maps to 1."""
    return (predict_raw(net, X) >= 0.5).astype(np.int64)


def bce_loss(y_hat: np.ndarray, y: np.ndarray) -> float:
    """Mean binary cross-entropy with predictions clamped to [eps, 1-eps]."""
    p = np.clip(y_hat, BCE_EPS, 1.0 - BCE_EPS)
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log1p(-p)))


def backprop(net: DenseNetwork, cache, y: np.ndarray) -> np.ndarray:
    """Gradients of the mean BCE w.r.t. every parameter, as one flat vector.

    The returned vector is a reused scratch buffer on the network; per-layer
    (dW, db) views of it are available via gradient_views(net).
    """
    zs, outs = cache
    y = np.asarray(y, dtype=np.float64)
    y_hat = outs[-1][0]
    m = y_hat.shape[0]
    p = np.clip(y_hat, BCE_EPS, 1.0 - BCE_EPS)
    da_row = (p - y) / (p * (1.0 - p) * m)
    # clamped outputs sit on a flat section of the loss: zero gradient
    da_row[y_hat != p] = 0.0
    da = da_row[None, :]

    for layer in range(net.n_layers - 1, -1, -1):
        z, a = zs[layer], outs[layer + 1]
        kind = net.layer_activations[layer]
        if kind == "softmax":
            dz = softmax_backward(a, da)
        else:
            dz = da * activation_derivative(kind, z, a)
        np.matmul(dz, outs[layer].T, out=net._gw[layer])
        np.sum(dz, axis=1, keepdims=True, out=net._gb[layer])
        if layer > 0:
            da = net.weights[layer].T @ dz
    if not net.output_bias:
        net._gb[-1][:] = 0.0
    return net._grad


def gradient_views(net: DenseNetwork):
    """Per-layer (dW, db) views into the gradient buffer backprop fills."""
    return list(zip(net._gw, net._gb))


def fit(
    net: DenseNetwork,
    X: np.ndarray,
    y: np.ndarray,
    *,
    epochs: int | None = None,
    batch_size: int | None = None,
    seed: int = 0,
    optimizer: Optimizer | None = None,
    min_delta: float = 1e-4,
    patience: int = 5,
) -> TrainReport:
    """Mini-batch training with early stopping on the training loss.

    Sample order is reshuffled every epoch from `seed`. A batch size of 1
    is the stochastic regime, a batch size >= the training size collapses
    to one full-batch update per epoch. Training stops once the epoch loss
    has failed to improve by more than min_delta for `patience` consecutive
    epochs, or immediately if the loss or any parameter goes non-finite.
    """
    if epochs is None:
        epochs = net.config.epochs
    if batch_size is None:
        batch_size = net.config.batch_size
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    if batch_size < 1:
        raise ValueError("batch size must be >= 1")
    if optimizer is None:
        if net.config is None:
            raise ValueError("no optimizer given and the network has no config")
        optimizer = make_optimizer(net.config.optimizer)

    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = X.shape[0]
    batch_size = min(batch_size, n)
    xt = np.ascontiguousarray(X.T)
    rng = np.random.default_rng(seed)

    losses: list[float] = []
    best = np.inf
    stale = 0
    updates = 0
    stopped_early = False
    diverged = False

    # overflow during a diverging run is expected and handled by the
    # finiteness checks below, so the numpy warnings are just noise
    with np.errstate(over="ignore", invalid="ignore", divide="ignore", under="ignore"):
        for _ in range(epochs):
            order = rng.permutation(n)
            xe = xt[:, order]
            ye = y[order]
            total = 0.0
            for lo in range(0, n, batch_size):
                hi = min(lo + batch_size, n)
                cols = xe[:, lo:hi]
                zs, outs = _forward_columns(net, cols)
                batch_y = ye[lo:hi]
                loss = bce_loss(outs[-1][0], batch_y)
                if not np.isfinite(loss):
                    diverged = True
                    break
                total += loss * (hi - lo)
                grads = backprop(net, (zs, outs), batch_y)
                optimizer.step(net.params, grads)
                updates += 1
            if diverged or not net.finite():
                diverged = True
                break
            epoch_loss = total / n
            losses.append(epoch_loss)
            if best - epoch_loss > min_delta:
                best = epoch_loss
                stale = 0
            else:
                stale += 1
                if stale >= patience:
                    stopped_early = True
                    break

    return TrainReport(
        epochs_run=len(losses),
        losses=tuple(losses),
        stopped_early=stopped_early,
        diverged=diverged,
        updates_run=updates,
    )


def proportional_error_split(weights: np.ndarray, output_errors: np.ndarray) -> np.ndarray:
    """Share output errors across upstream neurons in proportion to weights.

    For a weight matrix [outputs x neurons], neuron j receives
    sum_i w[i, j] / sum_k w[i, k] * error[i]. This is the intuitive
    error-apportioning picture only; training uses the exact chain rule.
    """
    w = np.atleast_2d(np.asarray(weights, dtype=np.float64))
    err = np.atleast_1d(np.asarray(output_errors, dtype=np.float64))
    if w.shape[0] != err.shape[0]:
        raise ValueError(f"{w.shape[0]} weight rows but {err.shape[0]} output errors")
    shares = w / w.sum(axis=1, keepdims=True)
    return shares.T @ err


def save_network(net: DenseNetwork, fh) -> None:
    """Write a self-describing text serialization (exact float round-trip)."""
    fh.write(f"layer_sizes={','.join(str(n) for n in net.layer_sizes)}\n")
    fh.write(f"activations={','.join(net.layer_activations)}\n")
    fh.write(f"output_bias={int(net.output_bias)}\n")
    fh.write(f"seed={net.seed}\n")
    if net.config is not None:
        fh.write(f"optimizer={net.config.optimizer}\n")
        fh.write(f"epochs={net.config.epochs}\n")
        fh.write(f"batch_size={net.config.batch_size}\n")
    for i, (w, b) in enumerate(zip(net.weights, net.biases), start=1):
        fh.write(f"W{i}=" + " ".join(repr(float(v)) for v in w.ravel()) + "\n")
        fh.write(f"b{i}=" + " ".join(repr(float(v)) for v in b.ravel()) + "\n")


def load_network(fh) -> DenseNetwork:
    fields: dict[str, str] = {}
    for line in fh:
        line = line.strip()
        if not line or "=" not in line:
            continue
        key, value = line.split("=", 1)
        fields[key] = value
    sizes = [int(v) for v in fields["layer_sizes"].split(",")]
    acts = fields["activations"].split(",")
    net = DenseNetwork(
        sizes,
        acts,
        output_bias=bool(int(fields.get("output_bias", "1"))),
        seed=int(fields.get("seed", "0")),
    )
    for i, (w, b) in enumerate(zip(net.weights, net.biases), start=1):
        w[:] = np.array([float(v) for v in fields[f"W{i}"].split()]).reshape(w.shape)
        b[:] = np.array([float(v) for v in fields[f"b{i}"].split()]).reshape(b.shape)
    return net
