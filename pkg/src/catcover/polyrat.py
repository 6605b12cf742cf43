"""Exact univariate polynomials and rational functions over the rationals.

Coefficients are ``fractions.Fraction`` throughout; there is no floating
point anywhere. Polynomials are canonical (no trailing zero
coefficients; the zero polynomial has degree -1 by convention), rational
functions are reduced with a monic denominator. The module also carries
the exact linear algebra the rest of the package needs: fraction-free
(Bareiss) determinants of polynomial matrices and Gaussian elimination
over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError

Rational = Fraction | int


def _frac(value: Rational) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class Poly:
    """Immutable polynomial; coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def zero() -> Poly:
        return Poly()

    @staticmethod
    def one() -> Poly:
        return Poly([1])

    @staticmethod
    def x() -> Poly:
        return Poly([0, 1])

    @staticmethod
    def constant(c: Rational) -> Poly:
        return Poly([c])

    @property
    def degree(self) -> int:
        """Degree, with -1 as the sentinel for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else Fraction(0)

    def leading(self) -> Fraction:
        if self.is_zero():
            raise InputError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> Poly:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coefficient(i) + other.coefficient(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> Poly:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> Poly:
        return _as_poly(other) - self

    def __mul__(self, other) -> Poly:
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise InputError("negative polynomial power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple[Poly, Poly]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.leading()
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c / lead
            quot[i - d] = q
            for j, b in enumerate(other.coeffs):
                rem[i - d + j] -= q * b
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> Poly:
        return divmod(self, other)[1]

    def exact_div(self, other) -> Poly:
        """Division known to be exact; raises if a remainder appears."""
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division expected to be exact left a remainder")
        return q

    def scale(self, c: Rational) -> Poly:
        return Poly([coef * _frac(c) for coef in self.coeffs])

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(Fraction(1) / self.leading())

    def evaluate(self, point: Rational) -> Fraction:
        point = _frac(point)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def derivative(self) -> Poly:
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def integral(self) -> Poly:
        """Antiderivative with zero constant term."""
        return Poly([Fraction(0)] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def shift(self, k: int) -> Poly:
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly([Fraction(0)] * k + list(self.coeffs))

    def format(self, var: str = "z") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                body = str(c)
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                power = var if i == 1 else f"{var}^{i}"
                body = f"{mag}{power}"
                if c < 0:
                    body = "-" + body
            terms.append(body)
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"


def _as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly([value])
    raise TypeError(f"cannot interpret {value!r} as a polynomial")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (Euclid over the rationals)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


class RationalFunction:
    """Reduced quotient of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | Rational, den: Poly | Rational = 1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Poly.one()
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead = den.leading()
            num = num.scale(Fraction(1) / lead)
            den = den.scale(Fraction(1) / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int, Fraction)):
            return self == RationalFunction(_as_poly(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other) -> RationalFunction:
        other = _as_ratfun(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> RationalFunction:
        return self + (-_as_ratfun(other))

    def __rsub__(self, other) -> RationalFunction:
        return _as_ratfun(other) - self

    def __mul__(self, other) -> RationalFunction:
        other = _as_ratfun(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        other = _as_ratfun(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def evaluate(self, point: Rational) -> Fraction:
        """Value at a point; raises ZeroDivisionError on a pole."""
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError(f"pole at {point}")
        return self.num.evaluate(point) / d

    def try_evaluate(self, point: Rational) -> Fraction | None:
        """Value at a point, or None when the reduced denominator vanishes."""
        d = self.den.evaluate(point)
        if d == 0:
            return None
        return self.num.evaluate(point) / d

    def series_coefficients(self, order: int) -> list[Fraction]:
        """Taylor coefficients at 0 through the given order.

        Requires the (reduced) denominator not to vanish at 0.
        """
        d0 = self.den.coefficient(0)
        if d0 == 0:
            raise InputError("no Taylor expansion at 0: denominator vanishes there")
        out: list[Fraction] = []
        for n in range(order + 1):
            acc = self.num.coefficient(n)
            for k in range(1, n + 1):
                acc -= self.den.coefficient(k) * out[n - k]
            out.append(acc / d0)
        return out

    def format(self, var: str = "z") -> str:
        """Human form; rescales so the denominator has constant term 1."""
        num, den = self.num, self.den
        c = den.coefficient(0)
        if c != 0 and c != 1:
            num = num.scale(Fraction(1) / c)
            den = den.scale(Fraction(1) / c)
        if den == Poly.one():
            return num.format(var)
        return f"({num.format(var)}) / ({den.format(var)})"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"


def _as_ratfun(value) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    return RationalFunction(_as_poly(value))


# -- exact linear algebra -------------------------------------------------


def bareiss_determinant(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix.

    Fraction-free (Bareiss) elimination: every division performed is
    exact in the polynomial ring, so intermediate entries stay
    polynomials instead of blowing up into rational functions.
    """
    n = len(rows)
    if n == 0:
        return Poly.one()
    m = [[_as_poly(entry) for entry in row] for row in rows]
    if any(len(row) != n for row in m):
        raise InputError("determinant of a non-square matrix")
    sign = 1
    prev = Poly.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Poly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = Poly.zero()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det.scale(sign)


def solve_linear(matrix: Sequence[Sequence[Rational]], rhs: Sequence[Rational]) -> list[Fraction]:
    """Solve a square system over the rationals by Gaussian elimination."""
    n = len(matrix)
    a = [[_frac(entry) for entry in row] + [_frac(rhs[i])] for i, row in enumerate(matrix)]
    if any(len(row) != n + 1 for row in a):
        raise InputError("system dimensions do not match")
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise InputError("singular linear system")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [v - factor * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


# -- factoring off linear factors -----------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def linear_factor_split(p: Poly) -> tuple[list[tuple[Fraction, int]], Poly]:
    """Write p as prod (1 - a*x)^e times a remainder without such factors.

    Requires p(0) != 0. Returns the (a, multiplicity) list sorted by a and
    the remaining cofactor; the split is complete exactly when the
    cofactor is constant. Candidate values of a come from the rational
    root theorem applied to the reversed polynomial.
    """
    if p.is_zero() or p.coefficient(0) == 0:
        raise InputError("linear_factor_split needs a nonzero constant term")
    if p.degree == 0:
        return [], p

    # Clear denominators: scaling does not change the factors (1 - a x).
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p.coeffs]
    content = 0
    for v in ints:
        content = _gcd(content, v)
    ints = [v // content for v in ints]

    # (1 - a x) divides p  iff  a is a root of the reversed polynomial,
    # whose constant term is the leading coefficient of p and whose
    # leading coefficient is p(0).
    candidates: set[Fraction] = set()
    for u in _divisors(ints[-1]):
        if u == 0:
            continue
        for v in _divisors(ints[0]):
            candidates.add(Fraction(u, v))
            candidates.add(Fraction(-u, v))

    factors: list[tuple[Fraction, int]] = []
    rest = p
    for a in sorted(candidates):
        mult = 0
        factor = Poly([1, -a])
        while rest.degree > 0 and (rest % factor).is_zero():
            rest = rest.exact_div(factor)
            mult += 1
        if mult:
            factors.append((a, mult))
    return factors, rest


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a
