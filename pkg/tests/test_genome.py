import numpy as np
import pytest

from evonas.genome import (
    GENE_NAMES,
    GeneSpace,
    Genotype,
    crossover,
    crossover_at,
    mutate,
    mutate_gene,
    parse_genotype,
    random_genotype,
    stable_hash,
)


def hamming(a: Genotype, b: Genotype) -> int:
    return sum(x != y for x, y in zip(a.as_tuple(), b.as_tuple()))


def test_default_space_is_the_full_search_space():
    space = GeneSpace()
    assert space.hidden_layers == (1, 3)
    assert space.nodes == (1, 64)
    assert space.epochs == (1, 100)
    assert space.batch_size == (1, 64)
    assert space.activations == ("elu", "relu", "sigmoid", "softmax", "softplus", "softsign", "tanh")
    assert space.optimizers == ("adadelta", "adagrad", "adam", "adamax", "ftrl", "nadam", "rmsprop", "sgd")
    assert "selu" not in space.activations


def test_search_space_size_is_the_gene_product():
    assert GeneSpace().size() == 3 * 64 * 7**3 * 8 * 100 * 64


def test_random_genotype_within_bounds(rng):
    space = GeneSpace()
    hidden_seen = set()
    for _ in range(10_000):
        g = random_genotype(space, rng)
        assert space.contains(g)
        hidden_seen.add(g.hidden_layers)
    assert hidden_seen == {1, 2, 3}


def test_random_genotype_optimizer_frequency(rng):
    space = GeneSpace()
    counts = {name: 0 for name in space.optimizers}
    n = 10_000
    for _ in range(n):
        counts[random_genotype(space, rng).optimizer] += 1
    p = 1 / len(space.optimizers)
    sigma = np.sqrt(n * p * (1 - p))
    for name, count in counts.items():
        assert abs(count - n * p) <= 3 * sigma, f"{name}: {count}"


def test_random_genotype_deterministic():
    space = GeneSpace()
    a = random_genotype(space, np.random.default_rng(99))
    b = random_genotype(space, np.random.default_rng(99))
    assert a == b


EXAMPLE = Genotype(2, 16, "relu", "tanh", "sigmoid", "adam", 90, 16)


def test_mutate_gene_rerolls_only_that_gene():
    space = GeneSpace()
    # scan seeds until the re-roll lands on elu, mirroring a fourth-gene mutation
    for seed in range(1000):
        mutated = mutate_gene(EXAMPLE, space, 3, np.random.default_rng(seed))
        if mutated.hidden_activation == "elu":
            assert mutated == Genotype(2, 16, "relu", "elu", "sigmoid", "adam", 90, 16)
            break
    else:
        pytest.fail("re-roll never produced elu in 1000 seeds")


def test_mutate_changes_at_most_one_gene(rng):
    space = GeneSpace()
    for _ in range(2000):
        g = random_genotype(space, rng)
        m = mutate(g, space, rng)
        assert hamming(g, m) <= 1
        assert space.contains(m)


def test_mutate_may_reroll_to_same_value():
    space = GeneSpace()
    for seed in range(2000):
        if mutate(EXAMPLE, space, np.random.default_rng(seed)) == EXAMPLE:
            return
    pytest.fail("mutation never produced a no-op re-roll in 2000 seeds")


def test_mutated_hidden_layers_stay_in_range(rng):
    space = GeneSpace()
    for _ in range(500):
        m = mutate_gene(EXAMPLE, space, 0, rng)
        assert 1 <= m.hidden_layers <= 3


def test_crossover_at_full_swap():
    a = EXAMPLE
    b = Genotype(1, 8, "softmax", "softsign", "tanh", "rmsprop", 30, 4)
    c1, c2 = crossover_at(a, b, 7)
    assert c1 == b
    assert c2 == a


def test_crossover_at_zero_swaps_first_gene_only():
    a = EXAMPLE
    b = Genotype(1, 8, "softmax", "softsign", "tanh", "rmsprop", 30, 4)
    c1, c2 = crossover_at(a, b, 0)
    assert c1.as_tuple() == (b.hidden_layers,) + a.as_tuple()[1:]
    assert c2.as_tuple() == (a.hidden_layers,) + b.as_tuple()[1:]


def test_crossover_conserves_genes_for_every_point(rng):
    space = GeneSpace()
    for r in range(8):
        for _ in range(50):
            a = random_genotype(space, rng)
            b = random_genotype(space, rng)
            c1, c2 = crossover_at(a, b, r)
            for i in range(8):
                assert sorted(map(str, (c1.as_tuple()[i], c2.as_tuple()[i]))) == sorted(
                    map(str, (a.as_tuple()[i], b.as_tuple()[i]))
                )
            assert space.contains(c1) and space.contains(c2)


def test_crossover_random_point_closure(rng):
    space = GeneSpace()
    for _ in range(500):
        a = random_genotype(space, rng)
        b = random_genotype(space, rng)
        c1, c2 = crossover(a, b, rng)
        assert space.contains(c1) and space.contains(c2)


def test_parse_genotype_round_trip():
    g = parse_genotype("1,16,relu,relu,sigmoid,adam,50,4")
    assert g == Genotype(1, 16, "relu", "relu", "sigmoid", "adam", 50, 4)
    assert g.key() == "1,16,relu,relu,sigmoid,adam,50,4"
    assert parse_genotype(g.key()) == g


def test_parse_genotype_case_insensitive():
    g = parse_genotype("1,24,Softmax,SoftSign,Sigmoid,RMSProp,60,3")
    assert g.input_activation == "softmax"
    assert g.optimizer == "rmsprop"


def test_parse_genotype_accepts_selu():
    g = parse_genotype("3,43,softsign,selu,tanh,adamax,59,4")
    assert g.hidden_activation == "selu"
    assert not GeneSpace().contains(g)  # selu sits outside the default space


def test_parse_genotype_errors():
    with pytest.raises(ValueError, match="unknown activation"):
        parse_genotype("1,16,relu,blah,sigmoid,adam,50,4")
    with pytest.raises(ValueError, match="unknown optimizer"):
        parse_genotype("1,16,relu,relu,sigmoid,sgdx,50,4")
    with pytest.raises(ValueError, match="8"):
        parse_genotype("1,16,relu")
    with pytest.raises(ValueError):
        parse_genotype("0,16,relu,relu,sigmoid,adam,50,4")


def test_stable_hash_depends_only_on_genes():
    g1 = parse_genotype("1,16,relu,relu,sigmoid,adam,50,4")
    g2 = Genotype(1, 16, "relu", "relu", "sigmoid", "adam", 50, 4)
    assert stable_hash(g1) == stable_hash(g2)
    assert stable_hash(g1) != stable_hash(EXAMPLE)


def test_gene_names_cover_the_genotype():
    g = EXAMPLE
    assert tuple(getattr(g, name) for name in GENE_NAMES) == g.as_tuple()


def test_gene_space_validation():
    with pytest.raises(ValueError):
        GeneSpace(hidden_layers=(3, 1))
    with pytest.raises(ValueError):
        GeneSpace(activations=())
    with pytest.raises(ValueError):
        GeneSpace(activations=("relu", "nosuch"))
