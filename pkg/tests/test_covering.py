import pytest

from catcover.builders import (
    bundled_coverings,
    discrete,
    discrete_over_terminal,
    doubled_covering,
    example42_covering,
    gamma,
    gamma_covering,
    identity_covering,
    terminal,
    z2,
)
from catcover.category import identity_functor, validate_functor
from catcover.covering import (
    NotACoveringError,
    check_covering,
    fiber,
    fiber_discreteness_violations,
    fiber_transport,
    verify_nerve_factorization,
)


def test_gamma_covering_has_two_sheets():
    cert = gamma_covering().certify()
    assert cert.sheets == 2
    assert cert.fibers == {"*": ("x", "y")}


def test_witnesses_record_image_pairs():
    cert = gamma_covering().certify()
    by_object = {w.object: w for w in cert.witnesses}
    assert set(by_object) == {"x", "y"}
    for w in cert.witnesses:
        for f, image in w.source_pairs + w.target_pairs:
            assert cert.functor.morphism_map[f] == image


@pytest.mark.parametrize("n", [1, 2, 5])
def test_fan_covering_sheets(n):
    cert = example42_covering(n).certify()
    assert cert.sheets == n
    assert cert.fibers["a"] == tuple(f"x{i}" for i in range(1, n + 1))


def test_discrete_over_terminal_is_a_covering():
    cert = discrete_over_terminal(2).certify()
    assert cert.sheets == 2


def test_total_category_may_be_disconnected():
    cert = doubled_covering(z2()).certify()
    assert cert.sheets == 2


def test_collapse_is_not_a_covering():
    g = gamma()
    base = terminal()
    functor = validate_functor(
        g, base, {"x": "*", "y": "*"}, {m.name: "1" for m in g.morphisms}
    )
    with pytest.raises(NotACoveringError) as exc:
        check_covering(functor)
    assert exc.value.failure.code == "SourceMapNotInjective"


def test_base_must_be_connected():
    with pytest.raises(NotACoveringError) as exc:
        check_covering(identity_functor(discrete(2)))
    assert exc.value.failure.code == "BaseNotConnected"


def test_surjectivity_failure():
    # z2 -> z2 mapping everything to the identity is not even a functor;
    # instead embed the terminal category into z2: S(*) misses -1.
    t = terminal()
    functor = validate_functor(t, z2(), {"*": "*"}, {"1": "1"})
    with pytest.raises(NotACoveringError) as exc:
        check_covering(functor)
    assert exc.value.failure.code == "SourceMapNotSurjective"


def test_fibers():
    bundle = gamma_covering()
    assert fiber(bundle.functor, "*") == ("x", "y")
    fan = example42_covering(3)
    assert fiber(fan.functor, "a") == ("x1", "x2", "x3")
    ident = identity_covering(z2())
    assert fiber(ident.functor, "*") == ("*",)


def test_fiber_unknown_object():
    from catcover.category import UnknownObjectError

    with pytest.raises(UnknownObjectError):
        fiber(gamma_covering().functor, "zzz")


def test_transport_gamma_swaps_the_fiber():
    cert = gamma_covering().certify()
    swap = fiber_transport(cert, "-1")
    assert swap.mapping() == {"x": "y", "y": "x"}
    lifts = {x: lift for x, _, lift in swap.pairs}
    assert lifts == {"x": "f", "y": "f^{-1}"}


def test_transport_along_identity_is_identity():
    for name, bundle in bundled_coverings().items():
        cert = bundle.certify()
        base = cert.base
        b = base.objects[0]
        transport = fiber_transport(cert, base.identity[b])
        assert transport.mapping() == {x: x for x in cert.fibers[b]}, name


def test_transport_fan_matches_indexing():
    cert = example42_covering(3).certify()
    transport = fiber_transport(cert, "h1")
    assert transport.mapping() == {"x1": "y1", "x2": "y2", "x3": "y3"}


def test_transport_is_a_bijection_for_every_base_morphism():
    for name, bundle in bundled_coverings().items():
        cert = bundle.certify()
        for m in cert.base.morphisms:
            transport = fiber_transport(cert, m.name)
            image = set(transport.mapping().values())
            assert image == set(cert.fibers[m.tgt]), (name, m.name)
            assert len(transport.pairs) == cert.sheets


def test_transport_composes_along_zigzags():
    cert = gamma_covering().certify()
    # -1 then -1 composes to the identity transport
    first = fiber_transport(cert, "-1").mapping()
    second = fiber_transport(cert, "-1").mapping()
    composed = {x: second[first[x]] for x in first}
    assert composed == fiber_transport(cert, "1").mapping()


def test_nerve_factorization_gamma():
    cert = gamma_covering().certify()
    report = verify_nerve_factorization(cert, 6)
    assert report.passed
    by_name = {c.name: c for c in report.checks}
    check = by_name["total[degenerate, n=3]"]
    assert check.observed == 16 and check.expected == 16  # 16 = 2 * 8


def test_nerve_factorization_fan_and_identity():
    assert verify_nerve_factorization(example42_covering(3).certify(), 4).passed
    ident = identity_covering(gamma()).certify()
    assert ident.sheets == 1
    assert verify_nerve_factorization(ident, 5).passed


def test_fibers_are_discrete():
    for name, bundle in bundled_coverings().items():
        cert = bundle.certify()
        assert fiber_discreteness_violations(cert) == [], name


def test_sheet_invariance_across_base_objects():
    for name, bundle in bundled_coverings().items():
        cert = bundle.certify()
        sizes = {len(f) for f in cert.fibers.values()}
        assert sizes == {cert.sheets}, name
