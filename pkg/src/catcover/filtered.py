"""Level-filtered acyclic categories, finite or generated level by level.

A filtration assigns each object a natural-number level that strictly
increases along non-identity morphisms. From it one forms the integer
stream c_i = (-1)^i * sum_n (-1)^n (number of identity-free n-chains
ending at level i); each c_i only involves objects of level <= i, so the
stream of an infinite, level-generated category is computable from finite
truncations. When the stream satisfies a linear recurrence (detected by
Berlekamp-Massey with a verification band of trailing terms), its rational
closed form can be evaluated at -1; that value is the filtered Euler
characteristic. Rationality is only ever certified *at a truncation*:
the detector is honest evidence, not a proof about the full generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .category import CatFunctor, FiniteCategory, Morphism, is_acyclic, is_connected, make_category, validate_functor
from .covering import CoveringFailure, NotACoveringError, object_bijection_witness
from .errors import InputError, MathRefusal
from .nerve import NONDEGENERATE, targeted_count_table
from .polyrat import Poly, RationalFunction
from .report import Check


class NotAcyclicError(InputError):
    pass


class FiltrationNotStrictError(InputError):
    def __init__(self, morphism: str, src_level: int, tgt_level: int):
        self.morphism = morphism
        super().__init__(
            f"morphism {morphism!r} runs from level {src_level} to level {tgt_level}; levels must strictly increase"
        )


class InsufficientTermsError(InputError):
    pass


class LevelNotFiniteError(InputError):
    """A generator produced a non-finite level; levels must be sequences."""


class FiltrationIncompatibleError(InputError):
    def __init__(self, obj: str, total_level: int, base_level: int):
        self.object = obj
        super().__init__(
            f"object {obj!r} sits at level {total_level} but its image sits at level {base_level}"
        )


class CoveringViolatedAtTruncationError(MathRefusal):
    def __init__(self, obj: str, level: int, failure: CoveringFailure):
        self.object = obj
        self.level = level
        self.failure = failure
        super().__init__(f"covering condition fails at {obj!r} (level {level}): {failure}")


@dataclass(frozen=True)
class Filtration:
    """A finite category together with validated strictly-increasing levels."""

    category: FiniteCategory
    levels: dict[str, int]

    def level(self, x: str) -> int:
        return self.levels[x]

    def max_level(self) -> int:
        return max(self.levels.values())


def validate_filtration(cat: FiniteCategory, levels: dict[str, int]) -> Filtration:
    """Check acyclicity and strict level increase along non-identities."""
    if not is_acyclic(cat):
        raise NotAcyclicError("filtrations are defined for acyclic categories only")
    for x in cat.objects:
        if x not in levels:
            raise InputError(f"object {x!r} has no level assigned")
        if not isinstance(levels[x], int) or levels[x] < 0:
            raise InputError(f"level of {x!r} must be a natural number, got {levels[x]!r}")
    for m in cat.morphisms:
        if cat.is_identity(m.name):
            continue
        if levels[m.src] >= levels[m.tgt]:
            raise FiltrationNotStrictError(m.name, levels[m.src], levels[m.tgt])
    return Filtration(category=cat, levels={x: levels[x] for x in cat.objects})


class LevelCategory:
    """A deterministic level generator for a filtered acyclic category.

    ``objects_at(i)`` yields the objects of level i; ``morphisms_into(i)``
    yields the non-identity morphisms whose target sits at level i
    (their sources are at lower levels, so a truncation at level L simply
    collects levels 0..L). ``compose_rule(g, f)`` names the composite of
    two non-identity morphisms. Identities are synthesized as ``1_<obj>``.

    The same inputs must always produce the same output: truncations are
    cached and validated, and every computation on the category factors
    through ``truncate``.
    """

    def __init__(
        self,
        name: str,
        objects_at: Callable[[int], Sequence[str]],
        morphisms_into: Callable[[int], Sequence[tuple[str, str, str]]],
        compose_rule: Callable[[str, str], str],
    ):
        self.name = name
        self._objects_at = objects_at
        self._morphisms_into = morphisms_into
        self._compose_rule = compose_rule
        self._cache: dict[int, Filtration] = {}

    def objects_at(self, level: int) -> tuple[str, ...]:
        objs = self._objects_at(level)
        if not isinstance(objs, (list, tuple)):
            raise LevelNotFiniteError(f"level {level} of {self.name!r} is not a finite sequence")
        return tuple(objs)

    def morphisms_into(self, level: int) -> tuple[tuple[str, str, str], ...]:
        mors = self._morphisms_into(level)
        if not isinstance(mors, (list, tuple)):
            raise LevelNotFiniteError(f"morphisms into level {level} of {self.name!r} are not a finite sequence")
        return tuple(mors)

    def compose_rule(self, g: str, f: str) -> str:
        return self._compose_rule(g, f)

    def identity_name(self, obj: str) -> str:
        return f"1_{obj}"

    def truncate(self, max_level: int) -> Filtration:
        """The finite category on levels 0..max_level, validated."""
        if max_level < 0:
            raise InputError("truncation level must be >= 0")
        if max_level in self._cache:
            return self._cache[max_level]
        objects: list[str] = []
        levels: dict[str, int] = {}
        morphisms: list[Morphism] = []
        identity: dict[str, str] = {}
        for i in range(max_level + 1):
            for x in self.objects_at(i):
                objects.append(x)
                levels[x] = i
                ident = self.identity_name(x)
                identity[x] = ident
                morphisms.append(Morphism(ident, x, x))
        for i in range(max_level + 1):
            for name, src, tgt in self._morphisms_into(i):
                morphisms.append(Morphism(str(name), str(src), str(tgt)))
        cat = make_category(objects, morphisms, identity, self._compose_rule)
        filtration = validate_filtration(cat, levels)
        self._cache[max_level] = filtration
        return filtration

    def __repr__(self) -> str:
        return f"LevelCategory({self.name!r})"


@dataclass(frozen=True)
class ChiCoefficients:
    """The integer stream c_0..c_L of alternating level-graded chain counts."""

    values: tuple[int, ...]

    @property
    def max_level(self) -> int:
        return len(self.values) - 1


def f_chi_coefficients(source: LevelCategory | Filtration, max_level: int) -> ChiCoefficients:
    """c_i for i = 0..max_level, via targeted identity-free chain counts.

    Chains ending at level i live entirely in levels <= i, so a
    truncation at max_level determines every returned coefficient.
    """
    if max_level < 0:
        raise InputError("max_level must be >= 0")
    filtration = source.truncate(max_level) if isinstance(source, LevelCategory) else source
    cat = filtration.category
    table = targeted_count_table(cat, max_level, NONDEGENERATE)
    values = []
    for i in range(max_level + 1):
        at_level = [x for x in cat.objects if filtration.levels[x] == i]
        acc = 0
        for n in range(i + 1):
            layer = sum(table[n][x] for x in at_level)
            acc += (-1) ** n * layer
        values.append((-1) ** i * acc)
    return ChiCoefficients(tuple(values))


# -- recurrence detection ---------------------------------------------------


def _berlekamp_massey(seq: list[Fraction]) -> list[Fraction]:
    """Connection coefficients [1, c1, .., cL] of the minimal LFSR with
    s_i + sum_j c_j s_(i-j) = 0 for L <= i < len(seq)."""
    conn = [Fraction(1)]
    prev = [Fraction(1)]
    length = 0
    gap = 1
    prev_delta = Fraction(1)
    for i, s in enumerate(seq):
        delta = s
        for j in range(1, length + 1):
            delta += conn[j] * seq[i - j]
        if delta == 0:
            gap += 1
            continue
        coef = delta / prev_delta
        candidate = conn[:]
        need = len(prev) + gap
        if need > len(candidate):
            candidate.extend([Fraction(0)] * (need - len(candidate)))
        for j, pj in enumerate(prev):
            candidate[j + gap] -= coef * pj
        if 2 * length <= i:
            prev = conn
            prev_delta = delta
            length = i + 1 - length
            gap = 1
        else:
            gap += 1
        conn = candidate
    conn = conn[: length + 1]
    conn += [Fraction(0)] * (length + 1 - len(conn))
    return conn


def detect_rational(
    coefficients: ChiCoefficients | Sequence[int] | Sequence[Fraction],
    guard: int,
) -> RationalFunction | None:
    """Fit a minimal linear recurrence to the stream, holding out a band.

    The recurrence is fitted on everything but the last ``guard`` terms
    and must be of order at most (len - 1 - guard)/2 to be
    well-determined; the resulting rational function is then re-expanded
    and must reproduce *all* the input coefficients, guard band included.
    Returns None when no such recurrence exists; the verdict is evidence
    at this truncation, never a proof about longer streams.
    """
    if isinstance(coefficients, ChiCoefficients):
        values = [Fraction(v) for v in coefficients.values]
    else:
        values = [Fraction(v) for v in coefficients]
    if guard < 0:
        raise InputError("guard must be >= 0")
    if len(values) < 2 * guard:
        raise InsufficientTermsError(
            f"need at least {2 * guard} coefficients for guard {guard}, got {len(values)}"
        )
    prefix = values[: len(values) - guard]
    conn = _berlekamp_massey(prefix)
    order = len(conn) - 1
    if 2 * order > len(values) - 1 - guard:
        return None
    den = Poly(conn)
    if order == 0:
        # An order-0 recurrence predicts every term with no memory, so it
        # only fits the all-zero stream.
        num = Poly()
    else:
        product = den * Poly(values)
        num = Poly([product.coefficient(i) for i in range(order)])
    fitted = RationalFunction(num, den)
    if fitted.series_coefficients(len(values) - 1) != values:
        return None
    return fitted


@dataclass(frozen=True)
class ChiFilResult:
    """Outcome of a filtered-characteristic computation at a truncation."""

    value: Fraction | None
    reason: str | None  # "not-rational-at-this-truncation" | "pole-at-minus-one"
    coefficients: ChiCoefficients
    closed_form: RationalFunction | None
    max_level: int
    guard: int


def chi_fil(
    source: LevelCategory | Filtration,
    max_level: int = 24,
    guard: int = 6,
) -> ChiFilResult:
    """Filtered Euler characteristic: the detected closed form at -1.

    ``value`` is None with a reason when the stream shows no recurrence at
    this truncation or the closed form has a pole at -1.
    """
    coeffs = f_chi_coefficients(source, max_level)
    closed = detect_rational(coeffs, guard)
    if closed is None:
        return ChiFilResult(None, "not-rational-at-this-truncation", coeffs, None, max_level, guard)
    value = closed.try_evaluate(-1)
    if value is None:
        return ChiFilResult(None, "pole-at-minus-one", coeffs, closed, max_level, guard)
    return ChiFilResult(value, None, coeffs, closed, max_level, guard)


# -- coverings of level categories ------------------------------------------


@dataclass(frozen=True)
class LevelCovering:
    """A level-respecting covering between level-generated categories.

    Object and morphism maps are given by name rules so that the functor
    between any pair of truncations can be materialized and validated.
    """

    name: str
    total: LevelCategory
    base: LevelCategory
    object_rule: Callable[[str], str]
    morphism_rule: Callable[[str], str]

    def functor_at(self, max_level: int) -> CatFunctor:
        """The validated functor between the two truncations at a level."""
        trunc_total = self.total.truncate(max_level)
        trunc_base = self.base.truncate(max_level)
        object_map = {x: self.object_rule(x) for x in trunc_total.category.objects}
        morphism_map = {}
        for m in trunc_total.category.morphisms:
            if trunc_total.category.is_identity(m.name):
                morphism_map[m.name] = trunc_base.category.identity[object_map[m.src]]
            else:
                morphism_map[m.name] = self.morphism_rule(m.name)
        return validate_functor(trunc_total.category, trunc_base.category, object_map, morphism_map)


@dataclass(frozen=True)
class FilProductReport:
    """Product-identity verification for a filtered covering at a truncation.

    Covering conditions are certified for objects strictly below the
    truncation boundary (the boundary level's outgoing morphisms may be
    cut off), so the verdict is labelled with the level it was verified
    to.
    """

    covering: str
    sheets: int
    max_level: int
    guard: int
    total_coefficients: ChiCoefficients
    base_coefficients: ChiCoefficients
    total_result: ChiFilResult
    base_result: ChiFilResult
    fiber_result: ChiFilResult
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _discrete_filtration(objects: tuple[str, ...], levels: dict[str, int] | None = None) -> Filtration:
    identity = {x: f"1_{x}" for x in objects}
    morphisms = [Morphism(identity[x], x, x) for x in objects]
    cat = make_category(objects, morphisms, identity, lambda g, f: None)
    return validate_filtration(cat, levels or {x: 0 for x in objects})


def verify_fil_product(covering: LevelCovering, max_level: int = 24, guard: int = 6) -> FilProductReport:
    """Verify coefficient factorization and the product identity at a level.

    Checks, in order: level compatibility of the functor, connectivity of
    the truncated base, the covering bijections at every non-boundary
    object, constancy of fiber sizes, c_i(total) = sheets * c_i(base) for
    all i, and finally the product identity on the detected closed forms
    with the fiber characteristic equal to the sheet count.
    """
    trunc_total = covering.total.truncate(max_level)
    trunc_base = covering.base.truncate(max_level)
    functor = covering.functor_at(max_level)

    for x in trunc_total.category.objects:
        lx = trunc_total.levels[x]
        lpx = trunc_base.levels[functor.object_map[x]]
        if lx != lpx:
            raise FiltrationIncompatibleError(x, lx, lpx)

    if not is_connected(trunc_base.category):
        raise NotACoveringError(
            CoveringFailure("BaseNotConnected", (), f"truncated base at level {max_level} is not connected")
        )
    for x in trunc_total.category.objects:
        if trunc_total.levels[x] >= max_level:
            continue  # boundary: outgoing morphisms may exceed the truncation
        try:
            object_bijection_witness(functor, x)
        except NotACoveringError as exc:
            raise CoveringViolatedAtTruncationError(x, trunc_total.levels[x], exc.failure) from None

    fibers: dict[str, list[str]] = {b: [] for b in trunc_base.category.objects}
    for x in trunc_total.category.objects:
        fibers[functor.object_map[x]].append(x)
    sizes = {len(f) for f in fibers.values()}
    if len(sizes) != 1:
        raise NotACoveringError(
            CoveringFailure("FiberSizeMismatch", (), f"fiber sizes {sorted(sizes)} at truncation {max_level}")
        )
    sheets = sizes.pop()

    coeff_total = f_chi_coefficients(trunc_total, max_level)
    coeff_base = f_chi_coefficients(trunc_base, max_level)
    checks = [
        Check(
            name=f"coefficient-factorization[i={i}]",
            passed=coeff_total.values[i] == sheets * coeff_base.values[i],
            observed=coeff_total.values[i],
            expected=sheets * coeff_base.values[i],
        )
        for i in range(max_level + 1)
    ]

    result_total = chi_fil(trunc_total, max_level, guard)
    result_base = chi_fil(trunc_base, max_level, guard)
    fiber_objects = tuple(fibers[trunc_base.category.objects[0]])
    fiber_filtration = _discrete_filtration(fiber_objects)
    result_fiber = chi_fil(fiber_filtration, max_level=min(max_level, 6), guard=min(guard, 3))

    checks.append(
        Check(
            name="existence-equivalence",
            passed=(result_total.value is None) == (result_base.value is None),
            observed={"total": result_total.value, "base": result_base.value},
        )
    )
    checks.append(
        Check(
            name="fiber-chi-is-sheet-count",
            passed=result_fiber.value == sheets,
            observed=result_fiber.value,
            expected=sheets,
        )
    )
    if result_total.value is not None and result_base.value is not None:
        checks.append(
            Check(
                name="product-identity",
                passed=result_total.value == result_fiber.value * result_base.value,
                observed=result_total.value,
                expected=result_fiber.value * result_base.value,
            )
        )
    return FilProductReport(
        covering=covering.name,
        sheets=sheets,
        max_level=max_level,
        guard=guard,
        total_coefficients=coeff_total,
        base_coefficients=coeff_base,
        total_result=result_total,
        base_result=result_base,
        fiber_result=result_fiber,
        checks=tuple(checks),
    )
