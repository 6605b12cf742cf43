"""Hand-built categories exercising the refusal paths.

Both pass exhaustive validation; they are deliberately not part of the
shipped example registry.
"""

from __future__ import annotations

from catcover.category import FiniteCategory, make_category


def pole_at_minus_one() -> FiniteCategory:
    """A 9-morphism category whose identity-free count series is
    (2 + 3t) / ((1 - 3t)(1 + t)): the pole at -1 survives reduction, so the
    series Euler characteristic does not exist.

    Structure: idempotents e on a and w on b, four morphisms u1..u4
    from a to b collapsed to u4 by e (on the right) and w (on the left),
    and a single v: b -> a with v.u_i = e and u_i.v = w.
    """
    objects = ["a", "b"]
    morphisms = [
        ("1_a", "a", "a"), ("e", "a", "a"),
        ("1_b", "b", "b"), ("w", "b", "b"),
        ("u1", "a", "b"), ("u2", "a", "b"), ("u3", "a", "b"), ("u4", "a", "b"),
        ("v", "b", "a"),
    ]
    us = {"u1", "u2", "u3", "u4"}

    def rule(g: str, f: str) -> str:
        if g == "e" and f == "e":
            return "e"
        if g == "w" and f == "w":
            return "w"
        if g in us and f == "e":
            return "u4"
        if g == "w" and f in us:
            return "u4"
        if g == "v" and f in us:
            return "e"
        if g in us and f == "v":
            return "w"
        if g == "e" and f == "v":
            return "v"
        if g == "v" and f == "w":
            return "v"
        raise AssertionError(f"unexpected pair {(g, f)}")

    return make_category(objects, morphisms, {"a": "1_a", "b": "1_b"}, rule)


def split_idempotent() -> FiniteCategory:
    """An idempotent e on b split through a (v.u = 1, u.v = e).

    Its degenerate count matrix has characteristic polynomial with
    irrational roots, so the zeta closed form is refused while the
    series Euler characteristic (= 1) exists.
    """
    morphisms = [
        ("1_a", "a", "a"), ("1_b", "b", "b"),
        ("e", "b", "b"), ("u", "a", "b"), ("v", "b", "a"),
    ]
    table = {
        ("v", "u"): "1_a",
        ("u", "v"): "e",
        ("e", "u"): "u",
        ("v", "e"): "v",
        ("e", "e"): "e",
    }
    return make_category(["a", "b"], morphisms, {"a": "1_a", "b": "1_b"}, lambda g, f: table[(g, f)])
