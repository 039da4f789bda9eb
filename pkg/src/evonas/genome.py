"""The 8-gene genotype encoding a network configuration, and its operators.

Gene order is fixed: [hidden_layers, nodes, input_activation,
hidden_activation, output_activation, optimizer, epochs, batch_size].
Genotypes are immutable values; the operators are pure functions of an
explicit random generator, so identical seeds give identical populations.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .activations import DEFAULT_ACTIVATIONS, KNOWN_ACTIVATIONS

DEFAULT_OPTIMIZERS = ("adadelta", "adagrad", "adam", "adamax", "ftrl", "nadam", "rmsprop", "sgd")

GENE_NAMES = (
    "hidden_layers",
    "nodes",
    "input_activation",
    "hidden_activation",
    "output_activation",
    "optimizer",
    "epochs",
    "batch_size",
)
GENE_COUNT = 8


def _check_range(name, lo, hi):
    if lo < 1 or hi < lo:
        raise ValueError(f"{name} range ({lo}, {hi}) is empty or non-positive")


@dataclass(frozen=True)
class GeneSpace:
    """Allowed values per gene. Defaults are the full search space."""

    hidden_layers: tuple[int, int] = (1, 3)
    nodes: tuple[int, int] = (1, 64)
    epochs: tuple[int, int] = (1, 100)
    batch_size: tuple[int, int] = (1, 64)
    activations: tuple[str, ...] = DEFAULT_ACTIVATIONS
    optimizers: tuple[str, ...] = DEFAULT_OPTIMIZERS

    def __post_init__(self):
        for name in ("hidden_layers", "nodes", "epochs", "batch_size"):
            _check_range(name, *getattr(self, name))
        if not self.activations:
            raise ValueError("activation set is empty")
        if not self.optimizers:
            raise ValueError("optimizer set is empty")
        for a in self.activations:
            if a not in KNOWN_ACTIVATIONS:
                raise ValueError(f"unknown activation {a!r}; valid: {', '.join(KNOWN_ACTIVATIONS)}")

    def size(self) -> int:
        """Number of distinct genotypes this space can express."""
        n = 1
        for lo, hi in (self.hidden_layers, self.nodes, self.epochs, self.batch_size):
            n *= hi - lo + 1
        n *= len(self.activations) ** 3
        n *= len(self.optimizers)
        return n

    def contains(self, g: "Genotype") -> bool:
        return (
            self.hidden_layers[0] <= g.hidden_layers <= self.hidden_layers[1]
            and self.nodes[0] <= g.nodes <= self.nodes[1]
            and self.epochs[0] <= g.epochs <= self.epochs[1]
            and self.batch_size[0] <= g.batch_size <= self.batch_size[1]
            and g.input_activation in self.activations
            and g.hidden_activation in self.activations
            and g.output_activation in self.activations
            and g.optimizer in self.optimizers
        )


@dataclass(frozen=True)
class Genotype:
    hidden_layers: int
    nodes: int
    input_activation: str
    hidden_activation: str
    output_activation: str
    optimizer: str
    epochs: int
    batch_size: int

    def as_tuple(self) -> tuple:
        return (
            self.hidden_layers,
            self.nodes,
            self.input_activation,
            self.hidden_activation,
            self.output_activation,
            self.optimizer,
            self.epochs,
            self.batch_size,
        )

    @classmethod
    def from_tuple(cls, genes) -> "Genotype":
        if len(genes) != GENE_COUNT:
            raise ValueError(f"genotype needs {GENE_COUNT} genes, got {len(genes)}")
        return cls(*genes)

    def key(self) -> str:
        """Canonical comma-separated form, lowercase names."""
        return ",".join(str(v) for v in self.as_tuple())

    def __str__(self) -> str:
        return self.key()


def parse_genotype(text: str) -> Genotype:
    """Parse "H,N,F_in,F_hidden,F_out,optimizer,epochs,batch" (case-insensitive)."""
    parts = [p.strip().lower() for p in text.split(",")]
    if len(parts) != GENE_COUNT:
        raise ValueError(f"genotype literal needs {GENE_COUNT} comma-separated genes, got {len(parts)}")
    try:
        h, n = int(parts[0]), int(parts[1])
        e, b = int(parts[6]), int(parts[7])
    except ValueError as exc:
        raise ValueError(f"non-integer numeric gene in {text!r}: {exc}") from None
    for name in parts[2:5]:
        if name not in KNOWN_ACTIVATIONS:
            raise ValueError(f"unknown activation {name!r}; valid: {', '.join(KNOWN_ACTIVATIONS)}")
    if parts[5] not in DEFAULT_OPTIMIZERS:
        raise ValueError(f"unknown optimizer {parts[5]!r}; valid: {', '.join(DEFAULT_OPTIMIZERS)}")
    if min(h, n, e, b) < 1:
        raise ValueError(f"numeric genes must be >= 1 in {text!r}")
    return Genotype(h, n, parts[2], parts[3], parts[4], parts[5], e, b)


def stable_hash(g: Genotype) -> int:
    """Platform-stable 63-bit hash of the genotype (unlike builtin hash)."""
    digest = hashlib.blake2b(g.key().encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big") & 0x7FFFFFFFFFFFFFFF


def _random_gene(space: GeneSpace, index: int, rng: np.random.Generator):
    if index == 0:
        return int(rng.integers(space.hidden_layers[0], space.hidden_layers[1] + 1))
    if index == 1:
        return int(rng.integers(space.nodes[0], space.nodes[1] + 1))
    if index in (2, 3, 4):
        return space.activations[int(rng.integers(len(space.activations)))]
    if index == 5:
        return space.optimizers[int(rng.integers(len(space.optimizers)))]
    if index == 6:
        return int(rng.integers(space.epochs[0], space.epochs[1] + 1))
    if index == 7:
        return int(rng.integers(space.batch_size[0], space.batch_size[1] + 1))
    raise IndexError(f"gene index {index} out of range 0..7")


def random_genotype(space: GeneSpace, rng: np.random.Generator) -> Genotype:
    """Each gene drawn uniformly and independently from its set or range."""
    return Genotype.from_tuple(tuple(_random_gene(space, i, rng) for i in range(GENE_COUNT)))


def mutate_gene(g: Genotype, space: GeneSpace, index: int, rng: np.random.Generator) -> Genotype:
    """Re-roll one gene uniformly from its own set; may land on the old value."""
    genes = list(g.as_tuple())
    genes[index] = _random_gene(space, index, rng)
    return Genotype.from_tuple(tuple(genes))


def mutate(g: Genotype, space: GeneSpace, rng: np.random.Generator) -> Genotype:
    """Re-roll a single uniformly-chosen gene; the other seven are untouched."""
    return mutate_gene(g, space, int(rng.integers(GENE_COUNT)), rng)


def crossover_at(a: Genotype, b: Genotype, r: int) -> tuple[Genotype, Genotype]:
    """One-point crossover swapping genes with index <= r between the parents."""
    if not 0 <= r < GENE_COUNT:
        raise ValueError(f"crossover point {r} out of range 0..{GENE_COUNT - 1}")
    ta, tb = a.as_tuple(), b.as_tuple()
    child1 = Genotype.from_tuple(tb[: r + 1] + ta[r + 1 :])
    child2 = Genotype.from_tuple(ta[: r + 1] + tb[r + 1 :])
    return child1, child2


def crossover(a: Genotype, b: Genotype, rng: np.random.Generator) -> tuple[Genotype, Genotype]:
    """One-point crossover at a uniform point in {0..7}; r=7 fully swaps the parents."""
    return crossover_at(a, b, int(rng.integers(GENE_COUNT)))
