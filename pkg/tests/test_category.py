import random

import pytest

from catcover.builders import (
    bundled_categories,
    cyclic_group,
    discrete,
    disjoint_union,
    example42,
    gamma,
    gamma_covering,
    terminal,
    z2,
)
from catcover.category import (
    CategoryValidationError,
    EmptyCategoryError,
    FunctorValidationError,
    category_violations,
    functor_violations,
    identity_functor,
    is_acyclic,
    is_connected,
    is_discrete,
    is_groupoid,
    is_poset,
    morphism_sets,
    validate_category,
    validate_functor,
)

from randcats import random_category


def table_of(cat):
    return (
        list(cat.objects),
        [(m.name, m.src, m.tgt) for m in cat.morphisms],
        dict(cat.identity),
        cat.composition_table(),
    )


def test_terminal_category_is_valid():
    cat = terminal()
    assert len(cat.morphisms) == 1
    assert cat.identity["*"] == "1"


def test_z2_group_table_is_valid():
    cat = z2()
    assert cat.compose("-1", "-1") == "1"
    assert cat.compose("-1", "1") == "-1"
    assert is_groupoid(cat)


def test_identity_law_violation_is_reported():
    objects, morphisms, identity, table = table_of(z2())
    table[("-1", "1")] = "1"  # right identity law broken for -1
    violations = category_violations(objects, morphisms, identity, table)
    assert any(v.code == "IdentityLawViolated" and "-1" in v.subject for v in violations)


def test_associativity_violation_is_reported():
    objects, morphisms, identity, table = table_of(cyclic_group(3))
    table[("g1", "g1")] = "g0"  # breaks (g1.g1).g1 = g1.(g1.g1)
    violations = category_violations(objects, morphisms, identity, table)
    assert any(v.code == "AssociativityViolated" for v in violations)


def test_missing_identity_and_dangling_endpoint():
    violations = category_violations(["x"], [("f", "x", "y")], {"x": "f"}, {})
    assert any(v.code == "DanglingEndpoint" for v in violations)
    violations = category_violations(["x"], [("1x", "x", "x")], {}, {("1x", "1x"): "1x"})
    assert any(v.code == "MissingIdentity" for v in violations)


def test_empty_category_is_rejected():
    violations = category_violations([], [], {}, {})
    assert violations[0].code == "EmptyCategory"
    with pytest.raises(CategoryValidationError):
        validate_category([], [], {}, {})


def test_composition_closure_violations():
    objects, morphisms, identity, table = table_of(z2())
    del table[("-1", "-1")]
    violations = category_violations(objects, morphisms, identity, table)
    assert any(v.code == "CompositionNotClosed" for v in violations)
    # a pair that is not composable must not appear either
    objects, morphisms, identity, table = table_of(gamma())
    table[("f", "f")] = "1_x"
    violations = category_violations(objects, morphisms, identity, table)
    assert any(v.code == "CompositionNotClosed" for v in violations)


def test_connectivity():
    assert is_connected(gamma())
    assert not is_connected(discrete(2))
    assert not is_connected(disjoint_union(z2(), terminal()))
    assert is_connected(terminal())


def test_connectivity_rejects_empty():
    from catcover.category import FiniteCategory

    with pytest.raises(EmptyCategoryError):
        is_connected(FiniteCategory([], [], {}, {}))


def _chain_poset():
    from catcover.category import make_category

    morphisms = [("1_a", "a", "a"), ("1_b", "b", "b"), ("f", "a", "b")]
    return make_category(["a", "b"], morphisms, {"a": "1_a", "b": "1_b"}, lambda g, f: None)


def test_structural_predicates():
    from catcover.builders import example42_base

    fan = example42(3)
    assert is_acyclic(fan) and not is_groupoid(fan)
    g = gamma()
    assert is_groupoid(g) and not is_acyclic(g)
    d = discrete(3)
    assert is_acyclic(d) and is_groupoid(d) and is_discrete(d) and is_poset(d)
    assert is_acyclic(example42_base()) and not is_poset(example42_base())
    assert is_poset(_chain_poset())


def test_poset_implies_acyclic_and_discrete_implies_both():
    rng = random.Random(7)
    for _ in range(40):
        cat = random_category(rng)
        if is_poset(cat):
            assert is_acyclic(cat)
        if is_discrete(cat):
            assert is_groupoid(cat) and is_acyclic(cat)


def test_source_target_partition():
    for name, cat in bundled_categories().items():
        sets = morphism_sets(cat)
        total_s = sum(len(sets.source[x]) for x in cat.objects)
        total_t = sum(len(sets.target[x]) for x in cat.objects)
        assert total_s == total_t == len(cat.morphisms), name
        for x in cat.objects:
            assert set(sets.source_nondeg[x]) == set(sets.source[x]) - {cat.identity[x]}


def test_validate_functor_gamma_covering():
    bundle = gamma_covering()
    assert bundle.functor.morphism_map["f"] == "-1"
    assert bundle.functor.morphism_map["f^{-1}"] == "-1"


def test_identity_functor_is_valid():
    for cat in (gamma(), z2(), example42(2)):
        identity_functor(cat)
        validate_functor(cat, cat, {x: x for x in cat.objects}, {m.name: m.name for m in cat.morphisms})


def test_functor_endpoint_mismatch():
    g = gamma()
    b = z2()
    violations = functor_violations(
        g,
        b,
        {"x": "*", "y": "*"},
        {"1_x": "1", "1_y": "1", "f": "-1", "f^{-1}": "1"},
    )
    # mapping f^{-1} to the identity breaks composition preservation
    assert any(v.code in ("CompositionNotPreserved",) for v in violations)
    with pytest.raises(FunctorValidationError):
        validate_functor(g, b, {"x": "*", "y": "*"}, {"1_x": "1", "1_y": "1", "f": "-1", "f^{-1}": "1"})


def test_functor_unknown_image_and_missing():
    g = gamma()
    violations = functor_violations(g, z2(), {"x": "*"}, {})
    codes = {v.code for v in violations}
    assert "MissingImage" in codes


def test_random_categories_validate():
    rng = random.Random(11)
    for _ in range(60):
        cat = random_category(rng)
        assert len(cat.objects) <= 6
        assert len(cat.morphisms) <= 8
        # revalidation from the raw table must succeed
        validate_category(*table_of(cat))
