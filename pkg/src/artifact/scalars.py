"""Exact scalars: the cyclotomic field of 24th roots of unity and truncated q-series.

Cyclotomic numbers are stored in the power basis ``1, z, ..., z^7`` where
``z = exp(2*pi*i/24)`` satisfies ``z^8 = z^4 - 1``.  Internally the eight
coordinates are integers over one common positive denominator, which keeps
multiplication in plain integer arithmetic.

q-series carry exponents that are integers over the fixed denominator 18, so
both ``q^(1/6)`` (untwisted lattice weights) and ``q^(1/9)`` (twisted weights)
live on a single integer-keyed grid.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Rational = Fraction

DEGREE = 8
ROOT_ORDER = 24
EXP_DEN = 18

_DIVISORS_OF_24 = (1, 2, 3, 4, 6, 8, 12, 24)


def _reduce_poly(coeffs: list) -> list:
    """Reduce an integer polynomial modulo z^8 - z^4 + 1 (in place safe)."""
    c = list(coeffs)
    for k in range(len(c) - 1, DEGREE - 1, -1):
        v = c[k]
        if v:
            c[k] = 0
            c[k - 4] += v
            c[k - 8] -= v
    return c[:DEGREE] + [0] * (DEGREE - len(c[:DEGREE]))


def _power_of_z(k: int) -> Tuple[int, ...]:
    k %= ROOT_ORDER
    poly = [0] * (k + 1)
    poly[k] = 1
    return tuple(_reduce_poly(poly))


_Z_POWERS = tuple(_power_of_z(k) for k in range(ROOT_ORDER))


class Cyclotomic:
    """An element of Q(z), z a primitive 24th root of unity."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coeffs: Iterable = (0,) * DEGREE, _den: int | None = None):
        if _den is not None:
            nums = tuple(coeffs)
            den = _den
        else:
            fr = [Fraction(c) for c in coeffs]
            if len(fr) > DEGREE:
                raise ValueError("at most 8 power-basis coordinates")
            fr += [Fraction(0)] * (DEGREE - len(fr))
            den = 1
            for f in fr:
                den = den * f.denominator // gcd(den, f.denominator)
            nums = tuple(int(f * den) for f in fr)
        g = den
        for n in nums:
            g = gcd(g, n)
            if g == 1:
                break
        if g > 1:
            nums = tuple(n // g for n in nums)
            den //= g
        self._num = nums
        self._den = den
        self._hash = None

    # construction helpers -------------------------------------------------
    @classmethod
    def _raw(cls, nums, den: int) -> "Cyclotomic":
        return cls(nums, _den=den)

    @classmethod
    def from_rational(cls, r) -> "Cyclotomic":
        r = Fraction(r)
        return cls._raw((r.numerator,) + (0,) * (DEGREE - 1), r.denominator)

    @classmethod
    def zeta(cls, k: int) -> "Cyclotomic":
        """Return z^k for the fixed primitive 24th root z."""
        return cls._raw(_Z_POWERS[k % ROOT_ORDER], 1)

    # accessors -------------------------------------------------------------
    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(n, self._den) for n in self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # arithmetic ------------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction, _RationalABC)):
            return Cyclotomic.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d1, d2 = self._den, o._den
        if d1 == d2:
            return Cyclotomic._raw(tuple(a + b for a, b in zip(self._num, o._num)), d1)
        return Cyclotomic._raw(
            tuple(a * d2 + b * d1 for a, b in zip(self._num, o._num)), d1 * d2
        )

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(tuple(-a for a in self._num), self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic._raw(tuple(a * other for a in self._num), self._den)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self._num, o._num
        if not any(b[1:]):
            s = b[0]
            return Cyclotomic._raw(tuple(x * s for x in a), self._den * o._den)
        if not any(a[1:]):
            s = a[0]
            return Cyclotomic._raw(tuple(x * s for x in b), self._den * o._den)
        prod = [0] * (2 * DEGREE - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic._raw(tuple(_reduce_poly(prod)), self._den * o._den)

    __rmul__ = __mul__

    def _mul_matrix(self):
        rows = []
        for k in range(DEGREE):
            rows.append(self * Cyclotomic.zeta(k))
        # column k of the matrix is the coordinate vector of self * z^k
        return [[rows[k].coeffs[i] for k in range(DEGREE)] for i in range(DEGREE)]

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyclotomic.from_rational(1 / self.to_rational())
        m = self._mul_matrix()
        rhs = [Fraction(1)] + [Fraction(0)] * (DEGREE - 1)
        sol = _solve(m, rhs)
        return Cyclotomic(sol)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation z -> z^-1."""
        out = ZERO
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + Cyclotomic.zeta(-k) * c
        return out

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / ROOT_ORDER)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))

    # comparison / hashing ---------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def __repr__(self):
        return f"Cyclotomic({self})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(f"z^{k}")
            else:
                terms.append(f"{c}*z^{k}")
        return " + ".join(terms) if terms else "0"


def _solve(m, rhs):
    """Gauss-Jordan elimination over Fractions for a square system."""
    n = len(rhs)
    a = [list(row) + [rhs[i]] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


ZERO = Cyclotomic._raw((0,) * DEGREE, 1)
ONE = Cyclotomic._raw((1,) + (0,) * (DEGREE - 1), 1)


def cyc_root(n: int) -> Cyclotomic:
    """Primitive n-th root of unity z^(24/n), for n dividing 24."""
    if not isinstance(n, int) or n not in _DIVISORS_OF_24:
        raise ValueError(f"cyc_root: {n!r} does not divide 24")
    return Cyclotomic.zeta(ROOT_ORDER // n)


def zeta3(k: int = 1) -> Cyclotomic:
    return Cyclotomic.zeta(8 * k)


def sqrt_minus3() -> Cyclotomic:
    """sqrt(-3) = zeta3 - zeta3^2 (positive imaginary part)."""
    return zeta3(1) - zeta3(2)


Scalar = Union[int, Fraction, Cyclotomic]


def as_cyc(x: Scalar) -> Cyclotomic:
    return x if isinstance(x, Cyclotomic) else Cyclotomic.from_rational(x)


# ---------------------------------------------------------------------------
# q-series
# ---------------------------------------------------------------------------


def exponent_key(e) -> int:
    """Convert a rational exponent to its integer key over denominator 18."""
    f = Fraction(e) * EXP_DEN
    if f.denominator != 1:
        raise ValueError(f"exponent {e} is not a multiple of 1/{EXP_DEN}")
    return int(f)


class QSeries:
    """Truncated series sum c_k q^(k/18), with every stored k <= truncation."""

    __slots__ = ("terms", "truncation_order")

    def __init__(self, terms: Mapping[int, Scalar] | None = None, truncation_order: int = 0):
        self.truncation_order = int(truncation_order)
        clean: Dict[int, Cyclotomic] = {}
        for k, c in (terms or {}).items():
            if k > self.truncation_order:
                continue
            c = as_cyc(c)
            if not c.is_zero():
                clean[int(k)] = c
        self.terms = clean

    @classmethod
    def from_exponents(cls, coeffs: Mapping, order) -> "QSeries":
        """Build from a map of rational exponents, truncating at ``order``."""
        return cls({exponent_key(e): c for e, c in coeffs.items()}, exponent_key(order))

    @classmethod
    def one(cls, order) -> "QSeries":
        return cls({0: 1}, exponent_key(order))

    @classmethod
    def monomial(cls, exponent, coeff: Scalar, order) -> "QSeries":
        return cls({exponent_key(exponent): coeff}, exponent_key(order))

    @property
    def order(self) -> Fraction:
        return Fraction(self.truncation_order, EXP_DEN)

    def coefficient(self, exponent) -> Cyclotomic:
        k = exponent_key(exponent)
        if k > self.truncation_order:
            raise ValueError(f"exponent {exponent} beyond truncation {self.order}")
        return self.terms.get(k, ZERO)

    def lowest_exponent(self) -> Fraction | None:
        if not self.terms:
            return None
        return Fraction(min(self.terms), EXP_DEN)

    def items(self) -> Iterator[Tuple[Fraction, Cyclotomic]]:
        for k in sorted(self.terms):
            yield Fraction(k, EXP_DEN), self.terms[k]

    def truncate(self, order) -> "QSeries":
        k = min(exponent_key(order), self.truncation_order)
        return QSeries(self.terms, k)

    def __add__(self, other: "QSeries") -> "QSeries":
        t = min(self.truncation_order, other.truncation_order)
        out = {k: c for k, c in self.terms.items() if k <= t}
        for k, c in other.terms.items():
            if k <= t:
                out[k] = out[k] + c if k in out else c
        return QSeries(out, t)

    def __neg__(self):
        return QSeries({k: -c for k, c in self.terms.items()}, self.truncation_order)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, c: Scalar) -> "QSeries":
        c = as_cyc(c)
        return QSeries({k: v * c for k, v in self.terms.items()}, self.truncation_order)

    def shift(self, exponent) -> "QSeries":
        """Multiply by q^exponent (truncation order moves with it)."""
        d = exponent_key(exponent)
        return QSeries({k + d: c for k, c in self.terms.items()}, self.truncation_order + d)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.truncation_order == other.truncation_order and self.terms == other.terms
        )

    def first_mismatch(self, other: "QSeries"):
        """First exponent where two series differ (up to the common truncation)."""
        t = min(self.truncation_order, other.truncation_order)
        for k in sorted(set(self.terms) | set(other.terms)):
            if k > t:
                break
            a, b = self.terms.get(k, ZERO), other.terms.get(k, ZERO)
            if a != b:
                return Fraction(k, EXP_DEN), a, b
        return None

    def __repr__(self):
        return f"QSeries({self}, order={self.order})"

    def __str__(self):
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            cs = str(c)
            if not c.is_rational() and "+" in cs:
                cs = f"({cs})"
            e = Fraction(k, EXP_DEN)
            parts.append(f"{cs} * q^{e}" if e.denominator == 1 else f"{cs} * q^({e})")
        return " + ".join(parts) if parts else "0"


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product, truncated to the smaller of the two truncation orders.

    The truncation of a product of two series known up to orders s and t is
    min(s + lowest(b), t + lowest(a)); here both factors in practice start at
    nonnegative exponents, and we keep the conservative min(s, t).
    """
    t = min(a.truncation_order, b.truncation_order)
    out: Dict[int, Cyclotomic] = {}
    bitems = sorted(b.terms.items())
    for ka, ca in a.terms.items():
        for kb, cb in bitems:
            k = ka + kb
            if k > t:
                break
            p = ca * cb
            out[k] = out[k] + p if k in out else p
    return QSeries(out, t)


def geometric_inverse(exponent, coeff: Scalar, order) -> QSeries:
    """Series of 1/(1 - coeff*q^exponent) truncated at ``order``."""
    step = exponent_key(exponent)
    if step <= 0:
        raise ValueError("geometric series needs a positive exponent")
    t = exponent_key(order)
    c = as_cyc(coeff)
    terms = {}
    power = ONE
    k = 0
    while k <= t:
        terms[k] = power
        power = power * c
        k += step
    return QSeries(terms, t)
