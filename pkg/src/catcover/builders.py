"""Built-in categories, coverings, and level generators.

These builders are the source of truth for the bundled fixtures: tests
and the CLI consume them instead of hand-written files, so the structures
cannot drift from their definitions. Every finite builder output passes
full validation, and every paired builder (total, base, functor) passes
the covering check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .category import (
    CatFunctor,
    FiniteCategory,
    Morphism,
    identity_functor,
    make_category,
    validate_functor,
)
from .covering import CoveringCertificate, check_covering
from .errors import BadParameterError
from .filtered import LevelCategory, LevelCovering


@dataclass(frozen=True)
class CoveringBundle:
    """A total category, a base category, and the functor between them."""

    name: str
    total: FiniteCategory
    base: FiniteCategory
    functor: CatFunctor

    def certify(self) -> CoveringCertificate:
        return check_covering(self.functor)


# -- small finite categories ------------------------------------------------


def terminal() -> FiniteCategory:
    """One object, one identity morphism."""
    return make_category(["*"], [("1", "*", "*")], {"*": "1"}, lambda g, f: None)


def discrete(k: int) -> FiniteCategory:
    """k objects and their identities, nothing else."""
    if k < 1:
        raise BadParameterError("a discrete category needs at least one object")
    objects = [f"x{i}" for i in range(1, k + 1)]
    morphisms = [(f"1_{x}", x, x) for x in objects]
    return make_category(objects, morphisms, {x: f"1_{x}" for x in objects}, lambda g, f: None)


def cyclic_group(m: int) -> FiniteCategory:
    """The cyclic group of order m as a one-object category."""
    if m < 1:
        raise BadParameterError("group order must be >= 1")

    def rule(g: str, f: str) -> str:
        return f"g{(int(g[1:]) + int(f[1:])) % m}"

    morphisms = [(f"g{i}", "*", "*") for i in range(m)]
    return make_category(["*"], morphisms, {"*": "g0"}, rule)


def z2() -> FiniteCategory:
    """The sign group {1, -1} as a one-object category."""
    morphisms = [("1", "*", "*"), ("-1", "*", "*")]
    return make_category(["*"], morphisms, {"*": "1"}, lambda g, f: "1")


def gamma() -> FiniteCategory:
    """Two objects joined by a pair of mutually inverse morphisms."""
    morphisms = [("1_x", "x", "x"), ("1_y", "y", "y"), ("f", "x", "y"), ("f^{-1}", "y", "x")]

    def rule(g: str, f: str) -> str:
        return "1_x" if f == "f" else "1_y"

    return make_category(["x", "y"], morphisms, {"x": "1_x", "y": "1_y"}, rule)


def gamma_covering() -> CoveringBundle:
    """The two-sheeted covering of the sign group by the two-object groupoid."""
    total = gamma()
    base = z2()
    functor = validate_functor(
        total,
        base,
        {"x": "*", "y": "*"},
        {"1_x": "1", "1_y": "1", "f": "-1", "f^{-1}": "-1"},
    )
    return CoveringBundle("gamma-over-z2", total, base, functor)


def example42_base() -> FiniteCategory:
    """Two objects with two parallel morphisms between them."""
    morphisms = [("1_a", "a", "a"), ("1_b", "b", "b"), ("h1", "a", "b"), ("h2", "a", "b")]
    return make_category(["a", "b"], morphisms, {"a": "1_a", "b": "1_b"}, lambda g, f: None)


def example42(n: int) -> FiniteCategory:
    """2n objects: each x_i maps to y_i and to y_(i+1), cyclically."""
    if n < 1:
        raise BadParameterError("the parallel-fan category needs n >= 1")
    xs = [f"x{i}" for i in range(1, n + 1)]
    ys = [f"y{i}" for i in range(1, n + 1)]
    objects = xs + ys
    morphisms = [(f"1_{o}", o, o) for o in objects]
    for i in range(1, n + 1):
        morphisms.append((f"f{i}", f"x{i}", f"y{i}"))
        morphisms.append((f"g{i}", f"x{i}", f"y{i % n + 1}"))
    identity = {o: f"1_{o}" for o in objects}
    return make_category(objects, morphisms, identity, lambda g, f: None)


def example42_covering(n: int) -> CoveringBundle:
    """n-sheeted covering of the parallel-pair base by the cyclic fan."""
    total = example42(n)
    base = example42_base()
    object_map = {}
    morphism_map = {}
    for i in range(1, n + 1):
        object_map[f"x{i}"] = "a"
        object_map[f"y{i}"] = "b"
        morphism_map[f"1_x{i}"] = "1_a"
        morphism_map[f"1_y{i}"] = "1_b"
        morphism_map[f"f{i}"] = "h1"
        morphism_map[f"g{i}"] = "h2"
    functor = validate_functor(total, base, object_map, morphism_map)
    return CoveringBundle(f"fan({n})-over-parallel-pair", total, base, functor)


def identity_covering(cat: FiniteCategory, name: str = "identity") -> CoveringBundle:
    """Every category covers itself with one sheet."""
    return CoveringBundle(name, cat, cat, identity_functor(cat))


def disjoint_union(left: FiniteCategory, right: FiniteCategory, tags: tuple[str, str] = ("L", "R")) -> FiniteCategory:
    """Coproduct of two categories, ids prefixed with the given tags."""
    lt, rt = tags

    def lname(s: str) -> str:
        return f"{lt}:{s}"

    def rname(s: str) -> str:
        return f"{rt}:{s}"

    objects = [lname(x) for x in left.objects] + [rname(x) for x in right.objects]
    morphisms = [Morphism(lname(m.name), lname(m.src), lname(m.tgt)) for m in left.morphisms]
    morphisms += [Morphism(rname(m.name), rname(m.src), rname(m.tgt)) for m in right.morphisms]
    identity = {lname(x): lname(left.identity[x]) for x in left.objects}
    identity.update({rname(x): rname(right.identity[x]) for x in right.objects})

    def rule(g: str, f: str) -> str:
        tag, g_body = g.split(":", 1)
        _, f_body = f.split(":", 1)
        side = left if tag == lt else right
        return f"{tag}:{side.compose(g_body, f_body)}"

    return make_category(objects, morphisms, identity, rule)


def doubled_covering(cat: FiniteCategory, name: str = "doubled") -> CoveringBundle:
    """Two disjoint copies of a connected category covering it with 2 sheets."""
    total = disjoint_union(cat, cat, tags=("c0", "c1"))
    object_map = {x: x.split(":", 1)[1] for x in total.objects}
    morphism_map = {m.name: m.name.split(":", 1)[1] for m in total.morphisms}
    functor = validate_functor(total, cat, object_map, morphism_map)
    return CoveringBundle(name, total, cat, functor)


def discrete_over_terminal(k: int) -> CoveringBundle:
    """The unique functor from k identity-only objects to the point."""
    total = discrete(k)
    base = terminal()
    functor = validate_functor(
        total,
        base,
        {x: "*" for x in total.objects},
        {m.name: "1" for m in total.morphisms},
    )
    return CoveringBundle(f"discrete({k})-over-terminal", total, base, functor)


# -- level-generated (infinite) categories ----------------------------------


def ladder_total() -> LevelCategory:
    """The poset with objects x_i, y_i and one morphism u_n -> v_m for n < m.

    Morphism names are src>tgt pairs like ``x0>y2``; composition just
    joins the outer endpoints, which is well defined because hom-sets are
    at most singletons.
    """

    def objects_at(i: int) -> tuple[str, ...]:
        return (f"x{i}", f"y{i}")

    def morphisms_into(i: int) -> list[tuple[str, str, str]]:
        out = []
        for n in range(i):
            for u in ("x", "y"):
                for v in ("x", "y"):
                    out.append((f"{u}{n}>{v}{i}", f"{u}{n}", f"{v}{i}"))
        return out

    def rule(g: str, f: str) -> str:
        f_src = f.split(">")[0]
        g_tgt = g.split(">")[1]
        return f"{f_src}>{g_tgt}"

    return LevelCategory("ladder-total", objects_at, morphisms_into, rule)


def _parity_name(p: int, n: int, m: int) -> str:
    return f"phi{p}_{n}_{m}"


def _parse_parity(name: str) -> tuple[int, int, int]:
    head, n, m = name.split("_")
    return int(head[3:]), int(n), int(m)


def ladder_base() -> LevelCategory:
    """One object b_i per level and two morphisms phi0, phi1 between levels.

    Composition adds the parity superscripts mod 2.
    """

    def objects_at(i: int) -> tuple[str, ...]:
        return (f"b{i}",)

    def morphisms_into(i: int) -> list[tuple[str, str, str]]:
        out = []
        for n in range(i):
            for p in (0, 1):
                out.append((_parity_name(p, n, i), f"b{n}", f"b{i}"))
        return out

    def rule(g: str, f: str) -> str:
        q, _, top = _parse_parity(g)
        p, bottom, _ = _parse_parity(f)
        return _parity_name((p + q) % 2, bottom, top)

    return LevelCategory("ladder-base", objects_at, morphisms_into, rule)


def ladder_covering() -> LevelCovering:
    """The two-sheeted level covering of the parity ladder.

    Objects x_i and y_i both sit over b_i; a morphism maps to parity 0
    when its endpoints carry the same letter and parity 1 otherwise.
    """

    def object_rule(x: str) -> str:
        return f"b{x[1:]}"

    def morphism_rule(name: str) -> str:
        src, tgt = name.split(">")
        parity = 0 if src[0] == tgt[0] else 1
        return _parity_name(parity, int(src[1:]), int(tgt[1:]))

    return LevelCovering(
        name="ladder-over-parity-base",
        total=ladder_total(),
        base=ladder_base(),
        object_rule=object_rule,
        morphism_rule=morphism_rule,
    )


def identity_level_covering(base: LevelCategory, name: str = "identity-level") -> LevelCovering:
    return LevelCovering(name, base, base, lambda x: x, lambda m: m)


def doubled_level_covering(base: LevelCategory, name: str = "doubled-level") -> LevelCovering:
    """Two disjoint copies of a level category covering it with 2 sheets."""

    def objects_at(i: int) -> tuple[str, ...]:
        return tuple(f"{tag}:{x}" for tag in ("c0", "c1") for x in base.objects_at(i))

    def morphisms_into(i: int) -> list[tuple[str, str, str]]:
        out = []
        for tag in ("c0", "c1"):
            for name_, src, tgt in base.morphisms_into(i):
                out.append((f"{tag}:{name_}", f"{tag}:{src}", f"{tag}:{tgt}"))
        return out

    def rule(g: str, f: str) -> str:
        tag, g_body = g.split(":", 1)
        _, f_body = f.split(":", 1)
        return f"{tag}:{base.compose_rule(g_body, f_body)}"

    total = LevelCategory(f"{base.name}-doubled", objects_at, morphisms_into, rule)
    return LevelCovering(
        name=name,
        total=total,
        base=base,
        object_rule=lambda x: x.split(":", 1)[1],
        morphism_rule=lambda m: m.split(":", 1)[1],
    )


# -- registries and the CLI-facing example dispatcher ------------------------


def bundled_categories() -> dict[str, FiniteCategory]:
    """Named finite categories exercised by the cross-cutting test suites."""
    cats: dict[str, FiniteCategory] = {
        "terminal": terminal(),
        "discrete(2)": discrete(2),
        "discrete(4)": discrete(4),
        "z2": z2(),
        "gamma": gamma(),
        "cyclic-group(3)": cyclic_group(3),
        "cyclic-group(4)": cyclic_group(4),
        "cyclic-group(6)": cyclic_group(6),
        "example42-base": example42_base(),
        "gamma+z2": disjoint_union(gamma(), z2()),
        "ladder-total@5": ladder_total().truncate(5).category,
        "ladder-base@5": ladder_base().truncate(5).category,
    }
    for n in (1, 2, 5):
        cats[f"example42({n})"] = example42(n)
    return cats


def bundled_coverings() -> dict[str, CoveringBundle]:
    """Named coverings exercised by the factorization test suites."""
    out = {
        "gamma-over-z2": gamma_covering(),
        "identity(z2)": identity_covering(z2(), "identity(z2)"),
        "identity(gamma)": identity_covering(gamma(), "identity(gamma)"),
        "doubled(z2)": doubled_covering(z2(), "doubled(z2)"),
        "discrete(2)-over-terminal": discrete_over_terminal(2),
    }
    for n in (1, 2, 5):
        out[f"example42({n})"] = example42_covering(n)
    ladder = ladder_covering()
    out["ladder@8"] = CoveringBundle(
        "ladder@8",
        ladder.total.truncate(8).category,
        ladder.base.truncate(8).category,
        ladder.functor_at(8),
    )
    return out


@dataclass(frozen=True)
class ExampleSpec:
    """A builder name with its integer parameters."""

    name: str
    params: dict[str, int]


_EXAMPLES: dict[str, str | None] = {
    # name -> its single parameter name (None: no parameters)
    "gamma": None,
    "z2": None,
    "terminal": None,
    "example42": "n",
    "example42-base": None,
    "ladder43": None,
    "ladder43-base": None,
    "discrete": "k",
    "cyclic-group": "m",
}


def example_names() -> tuple[str, ...]:
    return tuple(_EXAMPLES)


def parse_example_spec(text: str) -> ExampleSpec:
    """Parse ``name`` or ``name(arg)`` forms like ``example42(3)``."""
    text = text.strip()
    params: dict[str, int] = {}
    name = text
    if text.endswith(")") and "(" in text:
        name, arg = text[:-1].split("(", 1)
        name = name.strip()
        if name not in _EXAMPLES:
            raise BadParameterError(f"unknown example {name!r}; known: {', '.join(_EXAMPLES)}")
        param = _EXAMPLES[name]
        if param is None:
            raise BadParameterError(f"example {name!r} takes no parameter")
        try:
            params[param] = int(arg)
        except ValueError:
            raise BadParameterError(f"parameter of {name!r} must be an integer, got {arg!r}") from None
    if name not in _EXAMPLES:
        raise BadParameterError(f"unknown example {name!r}; known: {', '.join(_EXAMPLES)}")
    return ExampleSpec(name, params)


def build_example(spec: ExampleSpec) -> FiniteCategory | CoveringBundle | LevelCategory | LevelCovering:
    """Materialize a named example; paired examples come out as bundles."""
    p = dict(spec.params)
    if spec.name == "gamma":
        return gamma_covering()
    if spec.name == "z2":
        return z2()
    if spec.name == "terminal":
        return terminal()
    if spec.name == "example42":
        return example42_covering(p.get("n", 2))
    if spec.name == "example42-base":
        return example42_base()
    if spec.name == "ladder43":
        return ladder_covering()
    if spec.name == "ladder43-base":
        return ladder_base()
    if spec.name == "discrete":
        return discrete(p.get("k", 1))
    if spec.name == "cyclic-group":
        return cyclic_group(p.get("m", 2))
    raise BadParameterError(f"unknown example {spec.name!r}")
