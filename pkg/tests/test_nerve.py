import random

import pytest

from catcover.builders import (
    bundled_categories,
    discrete,
    example42_base,
    gamma,
    terminal,
    z2,
)
from catcover.errors import InputError
from catcover.nerve import (
    DEGENERATE,
    NONDEGENERATE,
    adjacency_matrix,
    enumerate_nerve,
    nerve_count,
    nerve_count_sequence,
    nerve_count_targeted,
    targeted_count_table,
)

from randcats import random_category


def test_adjacency_gamma():
    assert adjacency_matrix(gamma(), DEGENERATE).rows == ((1, 1), (1, 1))
    assert adjacency_matrix(gamma(), NONDEGENERATE).rows == ((0, 1), (1, 0))


def test_adjacency_parallel_pair_base():
    base = example42_base()
    assert adjacency_matrix(base, DEGENERATE).rows == ((1, 2), (0, 1))
    assert adjacency_matrix(base, NONDEGENERATE).rows == ((0, 2), (0, 0))


def test_adjacency_discrete_is_identity():
    matrix = adjacency_matrix(discrete(3), DEGENERATE)
    assert matrix.rows == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert adjacency_matrix(discrete(3), NONDEGENERATE).rows == ((0, 0, 0),) * 3


def test_counts_z2_powers_of_two():
    for n in range(8):
        assert nerve_count(z2(), n, DEGENERATE).count == 2**n
    assert nerve_count(z2(), 3, DEGENERATE).count == 8


def test_counts_gamma():
    for n in range(8):
        assert nerve_count(gamma(), n, DEGENERATE).count == 2 ** (n + 1)
    assert nerve_count(gamma(), 3, DEGENERATE).count == 16


def test_counts_parallel_pair_nondegenerate():
    base = example42_base()
    assert nerve_count_sequence(base, 4, NONDEGENERATE) == [2, 2, 0, 0, 0]


def test_count_zero_length_is_object_count():
    for cat in (terminal(), gamma(), discrete(5)):
        assert nerve_count(cat, 0, DEGENERATE).count == len(cat.objects)
        assert nerve_count(cat, 0, NONDEGENERATE).count == len(cat.objects)


def test_targeted_counts():
    g = gamma()
    for cat in (g, z2(), example42_base()):
        for x in cat.objects:
            assert nerve_count_targeted(cat, 0, x, DEGENERATE).count == 1
    assert nerve_count_targeted(g, 1, "x", DEGENERATE).count == 2
    assert nerve_count_targeted(example42_base(), 1, "a", NONDEGENERATE).count == 0


def test_targeted_unknown_object():
    from catcover.category import UnknownObjectError

    with pytest.raises(UnknownObjectError):
        nerve_count_targeted(gamma(), 1, "nope", DEGENERATE)


def test_enumerate_examples():
    assert enumerate_nerve(terminal(), 2, DEGENERATE, limit=10).chains == (("1", "1"),)
    assert enumerate_nerve(gamma(), 1, NONDEGENERATE, limit=10).chains == (("f",), ("f^{-1}",))
    assert enumerate_nerve(z2(), 2, NONDEGENERATE, limit=10).chains == (("-1", "-1"),)


def test_enumerate_zero_length_lists_objects():
    result = enumerate_nerve(gamma(), 0, DEGENERATE, limit=10)
    assert result.chains == (("x",), ("y",))


def test_enumerate_limit_and_truncation_flag():
    result = enumerate_nerve(gamma(), 3, DEGENERATE, limit=5)
    assert len(result.chains) == 5 and result.truncated
    full = enumerate_nerve(gamma(), 3, DEGENERATE, limit=100)
    assert len(full.chains) == 16 and not full.truncated
    with pytest.raises(InputError):
        enumerate_nerve(gamma(), 1, DEGENERATE, limit=0)


def test_enumerate_is_lexicographic():
    cat = gamma()
    order = {m.name: i for i, m in enumerate(cat.morphisms)}
    chains = enumerate_nerve(cat, 2, DEGENERATE, limit=1000).chains
    keys = [tuple(order[m] for m in chain) for chain in chains]
    assert keys == sorted(keys)


def test_oracle_equivalence_bundled():
    for name, cat in bundled_categories().items():
        for variant in (DEGENERATE, NONDEGENERATE):
            for n in range(4):
                count = nerve_count(cat, n, variant).count
                listed = enumerate_nerve(cat, n, variant, limit=200000)
                assert not listed.truncated
                assert len(listed.chains) == count, (name, variant, n)


def test_oracle_equivalence_random():
    rng = random.Random(23)
    for _ in range(30):
        cat = random_category(rng)
        for variant in (DEGENERATE, NONDEGENERATE):
            for n in range(5):
                count = nerve_count(cat, n, variant).count
                listed = enumerate_nerve(cat, n, variant, limit=500000)
                assert not listed.truncated
                assert len(listed.chains) == count


def test_targeted_recurrence_and_total_sum():
    for name, cat in bundled_categories().items():
        for variant in (DEGENERATE, NONDEGENERATE):
            table = targeted_count_table(cat, 12, variant)
            totals = nerve_count_sequence(cat, 12, variant)
            hom = (
                cat.hom if variant == DEGENERATE else cat.hom_nondegenerate
            )
            for n in range(12):
                for x in cat.objects:
                    expected = sum(table[n][y] * len(hom(y, x)) for y in cat.objects)
                    assert table[n + 1][x] == expected, (name, variant, n, x)
            for n in range(13):
                assert sum(table[n].values()) == totals[n], (name, variant, n)


def test_degenerate_dominates_nondegenerate():
    for name, cat in bundled_categories().items():
        deg = nerve_count_sequence(cat, 8, DEGENERATE)
        nondeg = nerve_count_sequence(cat, 8, NONDEGENERATE)
        assert deg[0] == nondeg[0]
        assert all(d >= n for d, n in zip(deg, nondeg)), name
