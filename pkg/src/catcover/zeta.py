"""Zeta functions and Euler characteristics of finite categories, exactly.

The generating series of chain counts is rational: summing the entries of
adj(I - A z) * A over det(I - A z), where A is the hom-count matrix,
gives the series whose z^(n-1) coefficient is the number of length-n
chains. Both numerator and determinant are computed fraction-free via the
identity  u^T adj(M) w = det(M + w u^T) - det(M).

From that quotient the package derives, all in exact rational arithmetic:

* the zeta series (formal exponential of the weighted chain counts);
* a closed form  prod (1 - a_k z)^(-b_k0) * exp(Q(z) + sum b_kj z^j / (j (1 - a_k z)^j))
  whenever the denominator splits into rational linear factors;
* the alternating-count characteristic: the value at -1 of the reduced
  rational expression of the nondegenerate chain-count series, when the
  denominator does not vanish there. Its existence is equivalent to the
  vanishing of the polynomial Q above, and both derivation routes are
  implemented so they can be compared on concrete categories.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .category import FiniteCategory, is_groupoid, make_category
from .covering import CoveringCertificate
from .errors import InputError, MathRefusal
from .nerve import DEGENERATE, NONDEGENERATE, adjacency_matrix, nerve_count_sequence
from .polyrat import Poly, RationalFunction, bareiss_determinant, linear_factor_split, solve_linear
from .report import Check

_REFUSAL_SERIES_ORDER = 12


@dataclass(frozen=True)
class PowerSeriesTruncation:
    """Coefficients c_0..c_N of a formal power series, exact."""

    coefficients: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, n: int) -> Fraction:
        return self.coefficients[n]


@dataclass(frozen=True)
class Pole:
    """One reciprocal root a (so the factor is 1 - a z) with its weights.

    ``weights[0]`` is the exponent of (1 - a z)^(-1) in front of the
    exponential; ``weights[j]`` for j >= 1 multiplies z^j/(j (1 - a z)^j)
    inside it.
    """

    value: Fraction
    multiplicity: int
    weights: tuple[Fraction, ...]


class NonRationalSpectrumError(MathRefusal):
    """The count-series denominator has a factor with no rational roots.

    Exact arithmetic cannot name the poles, so the closed form is refused;
    the truncated zeta series is attached since it remains valid.
    """

    def __init__(self, remainder: Poly, series: PowerSeriesTruncation):
        self.remainder = remainder
        self.series = series
        super().__init__(
            f"denominator does not split over the rationals (remaining factor degree {remainder.degree})"
        )


class NotAGroupoidError(InputError):
    pass


# -- power series helpers -------------------------------------------------


def _mul_trunc(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if ai:
            for j, bj in enumerate(b[: order + 1 - i]):
                out[i + j] += ai * bj
    return out


def _pow_trunc(a: list[Fraction], k: int, order: int) -> list[Fraction]:
    result = [Fraction(0)] * (order + 1)
    result[0] = Fraction(1)
    for _ in range(k):
        result = _mul_trunc(result, a, order)
    return result


def _exp_trunc(s: list[Fraction], order: int) -> list[Fraction]:
    """exp of a series with zero constant term, via e' = s' e."""
    assert not s or s[0] == 0, "exp needs a zero constant term"
    e = [Fraction(0)] * (order + 1)
    e[0] = Fraction(1)
    for n in range(1, order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            sk = s[k] if k < len(s) else Fraction(0)
            if sk:
                acc += k * sk * e[n - k]
        e[n] = acc / n
    return e


# -- the rational count series --------------------------------------------


def _poly_matrix(counts: tuple[tuple[int, ...], ...]) -> list[list[Poly]]:
    """The matrix I - C*var for an integer count matrix C."""
    size = len(counts)
    rows = []
    for i in range(size):
        rows.append(
            [Poly([1 if i == j else 0, -counts[i][j]]) for j in range(size)]
        )
    return rows


def _adjugate_weighted_sum(m: list[list[Poly]], weights: list[int]) -> Poly:
    """u^T adj(M) w  via  det(M + w u^T) - det(M), all fraction-free."""
    bumped = [
        [entry + Poly([weights[i]]) for entry in row]
        for i, row in enumerate(m)
    ]
    return bareiss_determinant(bumped) - bareiss_determinant(m)


def log_derivative(cat: FiniteCategory) -> RationalFunction:
    """The rational series whose z^(n-1) coefficient counts length-n chains.

    Equal to sum(adj(I - A z) A) / det(I - A z) for the degenerate
    hom-count matrix A, returned reduced.
    """
    counts = adjacency_matrix(cat, DEGENERATE).rows
    m = _poly_matrix(counts)
    row_sums = [sum(row) for row in counts]
    num = _adjugate_weighted_sum(m, row_sums)
    den = bareiss_determinant(m)
    return RationalFunction(num, den)


def euler_rational_function(cat: FiniteCategory) -> RationalFunction:
    """The rational expression of the nondegenerate chain-count series.

    Equal to sum(adj(I - N t)) / det(I - N t) for the identity-free
    hom-count matrix N; the t^n coefficient counts identity-free chains
    of length n.
    """
    counts = adjacency_matrix(cat, NONDEGENERATE).rows
    m = _poly_matrix(counts)
    num = _adjugate_weighted_sum(m, [1] * len(counts))
    den = bareiss_determinant(m)
    return RationalFunction(num, den)


def series_euler_characteristic(cat: FiniteCategory) -> Fraction | None:
    """Value at -1 of the reduced nondegenerate count series, if defined.

    None is the honest answer when the reduced denominator vanishes at
    -1; absence is a value here, not an error.
    """
    return euler_rational_function(cat).try_evaluate(-1)


def zeta_series(cat: FiniteCategory, order: int) -> PowerSeriesTruncation:
    """The zeta series exp(sum_n count_n z^n / n) through z^order."""
    if order < 0:
        raise InputError("series order must be >= 0")
    counts = nerve_count_sequence(cat, order, DEGENERATE)
    weighted = [Fraction(0)] + [Fraction(counts[n], n) for n in range(1, order + 1)]
    return PowerSeriesTruncation(tuple(_exp_trunc(weighted, order)))


def _zeta_series_from_log_derivative(g: RationalFunction, order: int) -> PowerSeriesTruncation:
    body = g.series_coefficients(max(order - 1, 0))
    weighted = [Fraction(0)] + [body[n - 1] / n for n in range(1, order + 1)]
    return PowerSeriesTruncation(tuple(_exp_trunc(weighted, order)))


# -- closed form -----------------------------------------------------------


@dataclass(frozen=True)
class ZetaClosedForm:
    """prod (1 - a z)^(-b_0) * exp(exp_poly + sum_j b_j z^j/(j (1 - a z)^j)).

    ``exp_poly`` has zero constant term; the characteristic at -1 exists
    exactly when it is the zero polynomial. Poles are sorted by value, so
    two runs on the same category produce identical, diffable forms.
    """

    poles: tuple[Pole, ...]
    exp_poly: Poly
    splits: bool = True

    def expand(self, order: int) -> PowerSeriesTruncation:
        """Re-expand the closed form as a power series, exactly."""
        log_terms = [Fraction(0)] * (order + 1)
        for i, c in enumerate(self.exp_poly.coeffs[: order + 1]):
            log_terms[i] += c
        for pole in self.poles:
            a = pole.value
            # (1 - a z)^(-b0) contributes b0 * sum a^n z^n / n to the log.
            b0 = pole.weights[0]
            if b0:
                power = a
                for n in range(1, order + 1):
                    log_terms[n] += b0 * power / n
                    power *= a
            for j in range(1, pole.multiplicity):
                bj = pole.weights[j]
                if not bj:
                    continue
                # z^j/(j (1 - a z)^j) = sum_m C(m+j-1, j-1) a^m z^(j+m) / j
                for m in range(0, order + 1 - j):
                    log_terms[j + m] += bj * comb(m + j - 1, j - 1) * (a**m) / j
        return PowerSeriesTruncation(tuple(_exp_trunc(log_terms, order)))

    def format(self, var: str = "z") -> str:
        factors = []
        for pole in self.poles:
            if pole.weights[0]:
                base = Poly([1, -pole.value]).format(var)
                expo = -pole.weights[0]
                expo_s = str(expo) if expo.denominator == 1 else f"({expo})"
                factors.append(f"({base})^{expo_s}")
        exp_terms = []
        if not self.exp_poly.is_zero():
            exp_terms.append(self.exp_poly.format(var))
        for pole in self.poles:
            base = Poly([1, -pole.value]).format(var)
            for j in range(1, pole.multiplicity):
                bj = pole.weights[j]
                if not bj:
                    continue
                coef = bj / j
                num = f"{coef}*{var}" if j == 1 else f"{coef}*{var}^{j}"
                den = f"({base})" if j == 1 else f"({base})^{j}"
                exp_terms.append(f"{num}/{den}")
        if exp_terms:
            factors.append(f"exp({' + '.join(exp_terms)})")
        return " * ".join(factors) if factors else "1"

    def __str__(self) -> str:
        return self.format()


def closed_form_from_log_derivative(g: RationalFunction) -> ZetaClosedForm:
    """Closed form of exp(integral of g), for a count series g.

    Splits the reduced denominator into rational linear factors, solves
    the partial-fraction system exactly, integrates, and rewrites the
    higher-order parts in the z^j/(j (1 - a z)^j) basis.
    """
    quotient, remainder = divmod(g.num, g.den)
    exp_poly = quotient.integral()
    if remainder.is_zero():
        return ZetaClosedForm(poles=(), exp_poly=exp_poly)

    d0 = g.den.coefficient(0)
    if d0 == 0:
        raise InputError("count series must be finite at 0")
    normalized_den = g.den.scale(Fraction(1) / d0)
    proper = remainder.scale(Fraction(1) / d0)

    factors, rest = linear_factor_split(normalized_den)
    if rest.degree > 0:
        raise NonRationalSpectrumError(rest, _zeta_series_from_log_derivative(g, _REFUSAL_SERIES_ORDER))
    assert rest == Poly.one(), "constant-term-1 polynomial split left a non-1 constant"

    # Partial fractions: solve sum c_{k,j} * den/(1 - a_k z)^j = proper.
    columns: list[tuple[Fraction, int]] = []
    basis: list[Poly] = []
    for a, e in factors:
        reduced = normalized_den
        for j in range(1, e + 1):
            reduced = reduced.exact_div(Poly([1, -a]))
            columns.append((a, j))
            basis.append(reduced)
    size = normalized_den.degree
    matrix = [[basis[col].coefficient(i) for col in range(size)] for i in range(size)]
    rhs = [proper.coefficient(i) for i in range(size)]
    solution = solve_linear(matrix, rhs)
    coeff: dict[tuple[Fraction, int], Fraction] = dict(zip(columns, solution))

    poles = []
    for a, e in factors:
        b0 = coeff[(a, 1)] / a
        weights = [b0]
        if e > 1:
            # Integrating c_j/(1 - a z)^j for j >= 2 yields combinations of
            # (1 - a z)^(-i) - 1; rewrite them in the z^j/(j (1 - a z)^j)
            # basis by back-substitution on the triangular change of basis.
            d = [coeff[(a, i + 1)] / (a * i) for i in range(1, e)]
            b = [Fraction(0)] * (e - 1)
            for i in range(e - 1, 0, -1):
                acc = d[i - 1]
                for j in range(i + 1, e):
                    gamma = Fraction(comb(j, i) * (-1) ** (j - i), j) / (a**j)
                    acc -= gamma * b[j - 1]
                gamma_ii = Fraction(1, i) / (a**i)
                b[i - 1] = acc / gamma_ii
            weights.extend(b)
        poles.append(Pole(value=a, multiplicity=e, weights=tuple(weights)))
    poles.sort(key=lambda p: p.value)
    return ZetaClosedForm(poles=tuple(poles), exp_poly=exp_poly)


def zeta_closed_form(cat: FiniteCategory) -> ZetaClosedForm:
    """Closed form of the zeta function; refuses on non-rational spectra."""
    return closed_form_from_log_derivative(log_derivative(cat))


def chi_from_closed_form(form: ZetaClosedForm) -> Fraction | None:
    """Characteristic read off the closed form: None unless exp_poly = 0,
    else sum over poles of sum_j (-1)^j b_j / a^(j+1)."""
    if not form.exp_poly.is_zero():
        return None
    total = Fraction(0)
    for pole in form.poles:
        for j, bj in enumerate(pole.weights):
            total += (-1) ** j * bj / pole.value ** (j + 1)
    return total


# -- theorem checks on certified coverings ---------------------------------


@dataclass(frozen=True)
class ZetaPowerReport:
    """Coefficientwise check that the total zeta series is the base series
    raised to the sheet count."""

    sheets: int
    order: int
    total_series: PowerSeriesTruncation
    base_series: PowerSeriesTruncation
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_zeta_power(certificate: CoveringCertificate, order: int) -> ZetaPowerReport:
    total, base = certificate.total, certificate.base
    sheets = certificate.sheets
    se = zeta_series(total, order)
    sb = zeta_series(base, order)
    powered = _pow_trunc(list(sb.coefficients), sheets, order)
    checks = []
    for n in range(order + 1):
        checks.append(
            Check(
                name=f"zeta-coefficient[n={n}]",
                passed=se.coefficients[n] == powered[n],
                observed=se.coefficients[n],
                expected=powered[n],
            )
        )
    counts_e = nerve_count_sequence(total, order, DEGENERATE)
    counts_b = nerve_count_sequence(base, order, DEGENERATE)
    for n in range(1, order + 1):
        checks.append(
            Check(
                name=f"count-factorization[n={n}]",
                passed=counts_e[n] == sheets * counts_b[n],
                observed=counts_e[n],
                expected=sheets * counts_b[n],
            )
        )
    return ZetaPowerReport(
        sheets=sheets, order=order, total_series=se, base_series=sb, checks=tuple(checks)
    )


def _discrete_category_on(objects: tuple[str, ...]) -> FiniteCategory:
    identities = {x: f"1@{x}" for x in objects}
    morphisms = [(identities[x], x, x) for x in objects]
    return make_category(objects, morphisms, identities, lambda g, f: None)


@dataclass(frozen=True)
class ChiProductReport:
    """Existence equivalence and the product identity chi(total) =
    chi(fiber) * chi(base) on a certified covering."""

    sheets: int
    chi_total: Fraction | None
    chi_base: Fraction | None
    chi_fiber: Fraction | None
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_chi_product(certificate: CoveringCertificate) -> ChiProductReport:
    total, base = certificate.total, certificate.base
    chi_total = series_euler_characteristic(total)
    chi_base = series_euler_characteristic(base)
    fiber_objects = certificate.fibers[base.objects[0]]
    chi_fiber = series_euler_characteristic(_discrete_category_on(fiber_objects))
    checks = [
        Check(
            name="existence-equivalence",
            passed=(chi_total is None) == (chi_base is None),
            observed={"total": chi_total, "base": chi_base},
        ),
        Check(
            name="fiber-chi-is-sheet-count",
            passed=chi_fiber == certificate.sheets,
            observed=chi_fiber,
            expected=certificate.sheets,
        ),
    ]
    if chi_total is not None and chi_base is not None:
        checks.append(
            Check(
                name="product-identity",
                passed=chi_total == chi_fiber * chi_base,
                observed=chi_total,
                expected=chi_fiber * chi_base,
            )
        )
    return ChiProductReport(
        sheets=certificate.sheets,
        chi_total=chi_total,
        chi_base=chi_base,
        chi_fiber=chi_fiber,
        checks=tuple(checks),
    )


def groupoid_euler(cat: FiniteCategory) -> Fraction:
    """Sum of 1/#Aut over isomorphism classes of a finite groupoid.

    In a groupoid two objects are isomorphic iff any morphism joins them,
    and automorphism counts agree across a class.
    """
    if not is_groupoid(cat):
        raise NotAGroupoidError("the automorphism-class formula needs a groupoid")
    parent = {x: x for x in cat.objects}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in cat.morphisms:
        parent[find(m.src)] = find(m.tgt)
    total = Fraction(0)
    for x in cat.objects:
        if find(x) == x:
            total += Fraction(1, len(cat.hom(x, x)))
    return total
