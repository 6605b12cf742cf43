"""Finite categories as explicit composition tables, and functors between them.

A category is given by ordered object and morphism lists, an identity
assignment, and a composition table that is total on composable pairs.
``validate_category`` checks every axiom exhaustively (identity laws,
closure, associativity on all composable triples) and returns an immutable
``FiniteCategory``; everything downstream may assume the axioms hold.

The associativity check visits every composable triple, which is
O(|Mor|^3) in the worst case. That is the price of working with explicit
tables and is acceptable at the intended scale (hundreds to a few
thousand morphisms).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InputError


@dataclass(frozen=True)
class Morphism:
    """A named arrow with explicit endpoints."""

    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Violation:
    """One broken axiom, naming the offending ids."""

    code: str
    subject: tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        ids = ", ".join(self.subject)
        return f"{self.code}({ids}): {self.detail}"


class CategoryValidationError(InputError):
    """Raised with the full list of axiom violations found in a table."""

    def __init__(self, violations: Iterable[Violation]):
        self.violations = list(violations)
        shown = "; ".join(str(v) for v in self.violations[:8])
        extra = len(self.violations) - 8
        if extra > 0:
            shown += f" (+{extra} more)"
        super().__init__(f"invalid category: {shown}")


class FunctorValidationError(InputError):
    """Raised with the list of functoriality violations of a raw map pair."""

    def __init__(self, violations: Iterable[Violation]):
        self.violations = list(violations)
        shown = "; ".join(str(v) for v in self.violations[:8])
        extra = len(self.violations) - 8
        if extra > 0:
            shown += f" (+{extra} more)"
        super().__init__(f"invalid functor: {shown}")


class EmptyCategoryError(InputError):
    """Connectivity (and covering bases) are undefined for zero objects."""


class UnknownObjectError(InputError):
    def __init__(self, name: str):
        self.object = name
        super().__init__(f"unknown object: {name!r}")


class UnknownMorphismError(InputError):
    def __init__(self, name: str):
        self.morphism = name
        super().__init__(f"unknown morphism: {name!r}")


class FiniteCategory:
    """A validated finite category.

    Instances are immutable after construction and safe to share between
    threads; all operations on them are pure. Construct via
    ``validate_category`` (or ``make_category`` when composition is given
    by a rule instead of a table) so that the axioms are actually checked.

    ``compose(g, f)`` follows the usual convention: it is defined when
    ``tgt(f) == src(g)`` and denotes *g after f*.
    """

    def __init__(
        self,
        objects: Sequence[str],
        morphisms: Sequence[Morphism],
        identity: Mapping[str, str],
        compose: Mapping[tuple[str, str], str],
    ):
        self.objects: tuple[str, ...] = tuple(objects)
        self.morphisms: tuple[Morphism, ...] = tuple(morphisms)
        self.identity: dict[str, str] = dict(identity)
        self._compose: dict[tuple[str, str], str] = dict(compose)

        self._mor: dict[str, Morphism] = {m.name: m for m in self.morphisms}
        self._obj_index: dict[str, int] = {x: i for i, x in enumerate(self.objects)}
        self._mor_index: dict[str, int] = {m.name: i for i, m in enumerate(self.morphisms)}
        self._identity_names = frozenset(self.identity.values())

        hom: dict[tuple[str, str], list[str]] = {}
        by_src: dict[str, list[str]] = {x: [] for x in self.objects}
        by_tgt: dict[str, list[str]] = {x: [] for x in self.objects}
        for m in self.morphisms:
            hom.setdefault((m.src, m.tgt), []).append(m.name)
            by_src[m.src].append(m.name)
            by_tgt[m.tgt].append(m.name)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._by_src = {k: tuple(v) for k, v in by_src.items()}
        self._by_tgt = {k: tuple(v) for k, v in by_tgt.items()}

    # -- lookups ------------------------------------------------------

    def morphism(self, name: str) -> Morphism:
        try:
            return self._mor[name]
        except KeyError:
            raise UnknownMorphismError(name) from None

    def has_object(self, name: str) -> bool:
        return name in self._obj_index

    def object_index(self, name: str) -> int:
        try:
            return self._obj_index[name]
        except KeyError:
            raise UnknownObjectError(name) from None

    def morphism_index(self, name: str) -> int:
        try:
            return self._mor_index[name]
        except KeyError:
            raise UnknownMorphismError(name) from None

    def source(self, name: str) -> str:
        return self.morphism(name).src

    def target(self, name: str) -> str:
        return self.morphism(name).tgt

    def is_identity(self, name: str) -> bool:
        return name in self._identity_names

    def compose(self, g: str, f: str) -> str:
        """The composite *g after f*; KeyError if the pair is not composable."""
        return self._compose[(g, f)]

    def composition_table(self) -> dict[tuple[str, str], str]:
        return dict(self._compose)

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        if not self.has_object(x):
            raise UnknownObjectError(x)
        if not self.has_object(y):
            raise UnknownObjectError(y)
        return self._hom.get((x, y), ())

    def hom_nondegenerate(self, x: str, y: str) -> tuple[str, ...]:
        """Hom(x, y) with the identity removed when x == y."""
        return tuple(m for m in self.hom(x, y) if not self.is_identity(m))

    def source_set(self, x: str) -> tuple[str, ...]:
        """All morphisms leaving x (including the identity)."""
        if not self.has_object(x):
            raise UnknownObjectError(x)
        return self._by_src[x]

    def target_set(self, x: str) -> tuple[str, ...]:
        """All morphisms arriving at x (including the identity)."""
        if not self.has_object(x):
            raise UnknownObjectError(x)
        return self._by_tgt[x]

    def source_set_nondegenerate(self, x: str) -> tuple[str, ...]:
        return tuple(m for m in self.source_set(x) if not self.is_identity(m))

    def target_set_nondegenerate(self, x: str) -> tuple[str, ...]:
        return tuple(m for m in self.target_set(x) if not self.is_identity(m))

    # -- misc ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.identity == other.identity
            and self._compose == other._compose
        )

    def __repr__(self) -> str:
        return f"FiniteCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


@dataclass(frozen=True)
class MorphismSets:
    """Source/target morphism sets per object, with non-degenerate variants.

    ``source[x]`` lists every morphism leaving x; ``source_nondeg[x]``
    drops the identity. The source sets, taken over all objects, partition
    the morphism list (likewise the target sets).
    """

    source: dict[str, tuple[str, ...]]
    target: dict[str, tuple[str, ...]]
    source_nondeg: dict[str, tuple[str, ...]]
    target_nondeg: dict[str, tuple[str, ...]]


def morphism_sets(cat: FiniteCategory) -> MorphismSets:
    return MorphismSets(
        source={x: cat.source_set(x) for x in cat.objects},
        target={x: cat.target_set(x) for x in cat.objects},
        source_nondeg={x: cat.source_set_nondegenerate(x) for x in cat.objects},
        target_nondeg={x: cat.target_set_nondegenerate(x) for x in cat.objects},
    )


def _coerce_morphisms(morphisms: Sequence) -> list[Morphism]:
    out = []
    for m in morphisms:
        if isinstance(m, Morphism):
            out.append(m)
        else:
            name, src, tgt = m
            out.append(Morphism(str(name), str(src), str(tgt)))
    return out


def category_violations(
    objects: Sequence[str],
    morphisms: Sequence,
    identity: Mapping[str, str],
    compose: Mapping[tuple[str, str], str],
) -> list[Violation]:
    """All axiom violations of a raw table, in a stable order.

    Codes: EmptyCategory, DuplicateId, DanglingEndpoint, MissingIdentity,
    CompositionNotClosed, IdentityLawViolated, AssociativityViolated.
    """
    violations: list[Violation] = []
    objects = [str(x) for x in objects]
    mors = _coerce_morphisms(morphisms)

    if not objects:
        violations.append(Violation("EmptyCategory", (), "a category needs at least one object"))
        return violations

    obj_set = set()
    for x in objects:
        if x in obj_set:
            violations.append(Violation("DuplicateId", (x,), "object id appears twice"))
        obj_set.add(x)

    mor_names = set()
    for m in mors:
        if m.name in mor_names:
            violations.append(Violation("DuplicateId", (m.name,), "morphism id appears twice"))
        mor_names.add(m.name)
        if m.src not in obj_set:
            violations.append(Violation("DanglingEndpoint", (m.name,), f"source {m.src!r} is not an object"))
        if m.tgt not in obj_set:
            violations.append(Violation("DanglingEndpoint", (m.name,), f"target {m.tgt!r} is not an object"))
    if violations:
        # Endpoint and id problems make the later checks meaningless.
        return violations

    by_name = {m.name: m for m in mors}

    for x in objects:
        ident = identity.get(x)
        if ident is None:
            violations.append(Violation("MissingIdentity", (x,), "no identity assigned"))
        elif ident not in by_name:
            violations.append(Violation("MissingIdentity", (x,), f"identity {ident!r} is not a morphism"))
        else:
            m = by_name[ident]
            if m.src != x or m.tgt != x:
                violations.append(
                    Violation("MissingIdentity", (x,), f"identity {ident!r} has endpoints {m.src!r} -> {m.tgt!r}")
                )
    for x in identity:
        if x not in obj_set:
            violations.append(Violation("DanglingEndpoint", (str(x),), "identity assigned to a non-object"))
    if violations:
        return violations

    by_src: dict[str, list[Morphism]] = {x: [] for x in objects}
    for m in mors:
        by_src[m.src].append(m)

    # Closure: the table must cover the composable pairs exactly, and each
    # composite must be a morphism with matching endpoints.
    composable = set()
    for f in mors:
        for g in by_src[f.tgt]:
            composable.add((g.name, f.name))
    for pair in composable:
        g, f = pair
        gf = compose.get(pair)
        if gf is None:
            violations.append(Violation("CompositionNotClosed", (g, f), "composable pair missing from table"))
        elif gf not in by_name:
            violations.append(Violation("CompositionNotClosed", (g, f), f"composite {gf!r} is not a morphism"))
        else:
            want_src, want_tgt = by_name[f].src, by_name[g].tgt
            got = by_name[gf]
            if got.src != want_src or got.tgt != want_tgt:
                violations.append(
                    Violation(
                        "CompositionNotClosed",
                        (g, f),
                        f"composite {gf!r} has endpoints {got.src!r} -> {got.tgt!r},"
                        f" expected {want_src!r} -> {want_tgt!r}",
                    )
                )
    for pair in compose:
        if tuple(pair) not in composable:
            g, f = pair
            violations.append(Violation("CompositionNotClosed", (str(g), str(f)), "pair in table is not composable"))
    if violations:
        return violations

    for m in mors:
        left = compose[(identity[m.tgt], m.name)]
        right = compose[(m.name, identity[m.src])]
        if left != m.name:
            violations.append(Violation("IdentityLawViolated", (m.name,), f"1_tgt . {m.name} = {left!r}"))
        if right != m.name:
            violations.append(Violation("IdentityLawViolated", (m.name,), f"{m.name} . 1_src = {right!r}"))

    for f in mors:
        for g in by_src[f.tgt]:
            gf = compose[(g.name, f.name)]
            for h in by_src[g.tgt]:
                hg = compose[(h.name, g.name)]
                if compose[(h.name, gf)] != compose[(hg, f.name)]:
                    violations.append(
                        Violation(
                            "AssociativityViolated",
                            (h.name, g.name, f.name),
                            f"(h.g).f = {compose[(hg, f.name)]!r} but h.(g.f) = {compose[(h.name, gf)]!r}",
                        )
                    )
    return violations


def validate_category(
    objects: Sequence[str],
    morphisms: Sequence,
    identity: Mapping[str, str],
    compose: Mapping[tuple[str, str], str],
) -> FiniteCategory:
    """Check every category axiom on a raw table; raise or return.

    Raises ``CategoryValidationError`` carrying the full violation list,
    otherwise returns the immutable ``FiniteCategory``.
    """
    violations = category_violations(objects, morphisms, identity, compose)
    if violations:
        raise CategoryValidationError(violations)
    return FiniteCategory(
        [str(x) for x in objects],
        _coerce_morphisms(morphisms),
        {str(k): str(v) for k, v in identity.items()},
        {(str(g), str(f)): str(gf) for (g, f), gf in compose.items()},
    )


def make_category(
    objects: Sequence[str],
    morphisms: Sequence,
    identity: Mapping[str, str],
    compose_rule,
) -> FiniteCategory:
    """Build the total composition table from a rule, then validate.

    ``compose_rule(g, f)`` is consulted only for composable pairs of
    non-identity morphisms; pairs involving identities are filled in by
    the identity laws.
    """
    mors = _coerce_morphisms(morphisms)
    identity = {str(k): str(v) for k, v in identity.items()}
    idents = set(identity.values())
    by_src: dict[str, list[Morphism]] = {str(x): [] for x in objects}
    for m in mors:
        by_src[m.src].append(m)
    table: dict[tuple[str, str], str] = {}
    for f in mors:
        for g in by_src[f.tgt]:
            if g.name in idents:
                table[(g.name, f.name)] = f.name
            elif f.name in idents:
                table[(g.name, f.name)] = g.name
            else:
                table[(g.name, f.name)] = str(compose_rule(g.name, f.name))
    return validate_category(objects, mors, identity, table)


# -- structural predicates ---------------------------------------------


def is_connected(cat: FiniteCategory) -> bool:
    """True iff any two objects are joined by a zig-zag of morphisms."""
    if not cat.objects:
        raise EmptyCategoryError("connectivity is undefined for an empty category")
    adjacency: dict[str, set[str]] = {x: set() for x in cat.objects}
    for m in cat.morphisms:
        adjacency[m.src].add(m.tgt)
        adjacency[m.tgt].add(m.src)
    seen = {cat.objects[0]}
    stack = [cat.objects[0]]
    while stack:
        for y in adjacency[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(cat.objects)


def _is_inverse_pair(cat: FiniteCategory, f: Morphism, g_name: str) -> bool:
    return (
        cat.compose(g_name, f.name) == cat.identity[f.src]
        and cat.compose(f.name, g_name) == cat.identity[f.tgt]
    )


def _has_inverse(cat: FiniteCategory, f: Morphism) -> bool:
    return any(_is_inverse_pair(cat, f, g) for g in cat.hom(f.tgt, f.src))


def is_acyclic(cat: FiniteCategory) -> bool:
    """True iff every endomorphism and every isomorphism is an identity."""
    for m in cat.morphisms:
        if cat.is_identity(m.name):
            continue
        if m.src == m.tgt:
            return False
        if _has_inverse(cat, m):
            return False
    return True


def is_groupoid(cat: FiniteCategory) -> bool:
    """True iff every morphism has a two-sided inverse."""
    return all(cat.is_identity(m.name) or _has_inverse(cat, m) for m in cat.morphisms)


def is_discrete(cat: FiniteCategory) -> bool:
    """True iff the only morphisms are identities."""
    return all(cat.is_identity(m.name) for m in cat.morphisms)


def is_poset(cat: FiniteCategory) -> bool:
    """True iff acyclic with at most one morphism in each hom-set."""
    if not is_acyclic(cat):
        return False
    seen: set[tuple[str, str]] = set()
    for m in cat.morphisms:
        key = (m.src, m.tgt)
        if key in seen:
            return False
        seen.add(key)
    return True


# -- functors ------------------------------------------------------------


@dataclass(frozen=True)
class CatFunctor:
    """A validated functor: total object/morphism maps preserving structure."""

    source: FiniteCategory
    target: FiniteCategory
    object_map: dict[str, str]
    morphism_map: dict[str, str]

    def apply_object(self, x: str) -> str:
        try:
            return self.object_map[x]
        except KeyError:
            raise UnknownObjectError(x) from None

    def apply_morphism(self, f: str) -> str:
        try:
            return self.morphism_map[f]
        except KeyError:
            raise UnknownMorphismError(f) from None


def functor_violations(
    source: FiniteCategory,
    target: FiniteCategory,
    object_map: Mapping[str, str],
    morphism_map: Mapping[str, str],
) -> list[Violation]:
    """Functoriality violations of a raw map pair.

    Codes: MissingImage, UnknownImage, EndpointMismatch,
    IdentityNotPreserved, CompositionNotPreserved.
    """
    violations: list[Violation] = []
    for x in source.objects:
        if x not in object_map:
            violations.append(Violation("MissingImage", (x,), "object has no image"))
        elif not target.has_object(object_map[x]):
            violations.append(Violation("UnknownImage", (x,), f"image {object_map[x]!r} is not an object of the target"))
    for m in source.morphisms:
        if m.name not in morphism_map:
            violations.append(Violation("MissingImage", (m.name,), "morphism has no image"))
        elif morphism_map[m.name] not in {mm.name for mm in target.morphisms}:
            violations.append(
                Violation("UnknownImage", (m.name,), f"image {morphism_map[m.name]!r} is not a morphism of the target")
            )
    if violations:
        return violations

    for m in source.morphisms:
        image = target.morphism(morphism_map[m.name])
        if image.src != object_map[m.src] or image.tgt != object_map[m.tgt]:
            violations.append(
                Violation(
                    "EndpointMismatch",
                    (m.name,),
                    f"image {image.name!r} runs {image.src!r} -> {image.tgt!r},"
                    f" expected {object_map[m.src]!r} -> {object_map[m.tgt]!r}",
                )
            )
    if violations:
        return violations

    for x in source.objects:
        if morphism_map[source.identity[x]] != target.identity[object_map[x]]:
            violations.append(Violation("IdentityNotPreserved", (x,), f"image of 1_{x} is not an identity"))

    table = source.composition_table()
    for (g, f), gf in table.items():
        mapped = target.compose(morphism_map[g], morphism_map[f])
        if mapped != morphism_map[gf]:
            violations.append(
                Violation(
                    "CompositionNotPreserved",
                    (g, f),
                    f"P(g.f) = {morphism_map[gf]!r} but P(g).P(f) = {mapped!r}",
                )
            )
    return violations


def validate_functor(
    source: FiniteCategory,
    target: FiniteCategory,
    object_map: Mapping[str, str],
    morphism_map: Mapping[str, str],
) -> CatFunctor:
    """Check functoriality exhaustively; raise or return the functor."""
    violations = functor_violations(source, target, object_map, morphism_map)
    if violations:
        raise FunctorValidationError(violations)
    return CatFunctor(
        source,
        target,
        {str(k): str(v) for k, v in object_map.items()},
        {str(k): str(v) for k, v in morphism_map.items()},
    )


def identity_functor(cat: FiniteCategory) -> CatFunctor:
    return CatFunctor(
        cat,
        cat,
        {x: x for x in cat.objects},
        {m.name: m.name for m in cat.morphisms},
    )
