"""Exact scalars: Gaussian rationals and rational functions in one formal parameter.

Every value is immutable and kept in a canonical form, so structural equality
coincides with mathematical equality and values can be used as dict keys.
Arithmetic never rounds; integer growth is absorbed by ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Union


class PoleAtZero(ArithmeticError):
    """The rational function has a pole at 0; its limit there does not exist."""


class UndefinedValuation(ArithmeticError):
    """The valuation at 0 of the zero function is undefined."""


_F0 = Fraction(0)
_F1 = Fraction(1)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """An element re + im*i of Q(i); both parts are reduced fractions."""

    re: Fraction
    im: Fraction

    @staticmethod
    def _coerce(x) -> "GaussianRational | None":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(_as_fraction(x), _F0)
        return None

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self.inverse() if exponent < 0 else self
        result = G_ONE
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}*i"
        if not self.re:
            return imag
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{imag.lstrip('-')}"


G_ZERO = GaussianRational(_F0, _F0)
G_ONE = GaussianRational(_F1, _F0)
G_I = GaussianRational(_F0, _F1)


def gauss(re=0, im=0) -> GaussianRational:
    """Convenience constructor accepting ints and Fractions."""
    return GaussianRational(_as_fraction(re), _as_fraction(im))


def _fraction_sqrt(f: Fraction) -> Fraction | None:
    if f < 0:
        return None
    rn, rd = isqrt(f.numerator), isqrt(f.denominator)
    if rn * rn != f.numerator or rd * rd != f.denominator:
        return None
    return Fraction(rn, rd)


def gaussian_sqrt(x: GaussianRational) -> GaussianRational | None:
    """Exact square root in Q(i), or None when x is not a square there."""
    if not x:
        return G_ZERO
    if not x.im:
        r = _fraction_sqrt(x.re)
        if r is not None:
            return GaussianRational(r, _F0)
        r = _fraction_sqrt(-x.re)
        if r is not None:
            return GaussianRational(_F0, r)
        return None
    n = _fraction_sqrt(x.norm())
    if n is None:
        return None
    p = _fraction_sqrt((x.re + n) / 2)
    if p is None or not p:
        return None
    root = GaussianRational(p, x.im / (2 * p))
    return root if root * root == x else None


@dataclass(frozen=True, slots=True)
class FormalPolynomial:
    """Polynomial in one formal variable over Q(i).

    Coefficients are stored by ascending degree with trailing zeros stripped,
    so equality is structural.
    """

    var: str
    coeffs: tuple[GaussianRational, ...]

    @classmethod
    def make(cls, var: str, coeffs) -> "FormalPolynomial":
        cs = [c if isinstance(c, GaussianRational) else gauss(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        return cls(var, tuple(cs))

    @classmethod
    def constant(cls, var: str, value) -> "FormalPolynomial":
        return cls.make(var, [value])

    @classmethod
    def gen(cls, var: str) -> "FormalPolynomial":
        return cls(var, (G_ZERO, G_ONE))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else G_ZERO

    def order_at_zero(self) -> int:
        if not self.coeffs:
            raise UndefinedValuation("order at 0 of the zero polynomial")
        return next(k for k, c in enumerate(self.coeffs) if c)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _coerce(self, x) -> "FormalPolynomial | None":
        if isinstance(x, FormalPolynomial):
            return x if x.var == self.var else None
        g = GaussianRational._coerce(x)
        if g is None:
            return None
        return FormalPolynomial.make(self.var, [g])

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        cs = [self.coeff(k) + o.coeff(k) for k in range(n)]
        return FormalPolynomial.make(self.var, cs)

    __radd__ = __add__

    def __neg__(self):
        return FormalPolynomial(self.var, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self or not o:
            return FormalPolynomial(self.var, ())
        cs = [G_ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for a, ca in enumerate(self.coeffs):
            if not ca:
                continue
            for b, cb in enumerate(o.coeffs):
                if cb:
                    cs[a + b] = cs[a + b] + ca * cb
        return FormalPolynomial.make(self.var, cs)

    __rmul__ = __mul__

    def coeff(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else G_ZERO

    def monic(self) -> "FormalPolynomial":
        if not self:
            return self
        inv = self.leading.inverse()
        return FormalPolynomial(self.var, tuple(c * inv for c in self.coeffs))

    def __divmod__(self, other: "FormalPolynomial"):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        q = [G_ZERO] * max(len(self.coeffs) - len(o.coeffs) + 1, 0)
        r = list(self.coeffs)
        dlead = o.leading.inverse()
        while len(r) >= len(o.coeffs) and any(r):
            while r and not r[-1]:
                r.pop()
            if len(r) < len(o.coeffs):
                break
            shift = len(r) - len(o.coeffs)
            factor = r[-1] * dlead
            q[shift] = factor
            for k, c in enumerate(o.coeffs):
                r[shift + k] = r[shift + k] - factor * c
        return (
            FormalPolynomial.make(self.var, q),
            FormalPolynomial.make(self.var, r),
        )

    def gcd(self, other: "FormalPolynomial") -> "FormalPolynomial":
        """Monic gcd by the Euclidean algorithm."""
        a, b = self, self._coerce(other)
        while b:
            a, b = b, divmod(a, b)[1]
        return a.monic()

    def evaluate(self, point: GaussianRational) -> GaussianRational:
        acc = G_ZERO
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            mono = self.var if k == 1 else f"{self.var}^{k}"
            if c == G_ONE:
                terms.append(mono)
            elif c == -G_ONE:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{_coeff_str(c)}*{mono}")
        out = terms[0]
        for term in terms[1:]:
            if term.startswith("-"):
                out += f" - {term[1:]}"
            else:
                out += f" + {term}"
        return out


def _coeff_str(c: GaussianRational) -> str:
    s = str(c)
    if any(ch in "+-" for ch in s[1:]):
        return f"({s})"
    return s


def _poly_sqrt(p: FormalPolynomial) -> FormalPolynomial | None:
    if not p:
        return p
    if p.degree % 2:
        return None
    m = p.degree // 2
    lead = gaussian_sqrt(p.leading)
    if lead is None:
        return None
    q = [G_ZERO] * (m + 1)
    q[m] = lead
    two_lead_inv = (lead + lead).inverse()
    for j in range(m - 1, -1, -1):
        known = G_ZERO
        for a in range(j + 1, m):
            b = m + j - a
            if j < b <= m:
                known = known + q[a] * q[b]
        q[j] = (p.coeff(m + j) - known) * two_lead_inv
    cand = FormalPolynomial.make(p.var, q)
    return cand if cand * cand == p else None


@dataclass(frozen=True, slots=True)
class FormalRationalFunction:
    """Reduced fraction of polynomials; the denominator is monic and nonzero."""

    num: FormalPolynomial
    den: FormalPolynomial

    @classmethod
    def make(cls, num: FormalPolynomial, den: FormalPolynomial | None = None):
        if den is None:
            den = FormalPolynomial.constant(num.var, G_ONE)
        if num.var != den.var:
            raise TypeError("numerator and denominator use different variables")
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            return cls(
                FormalPolynomial(num.var, ()),
                FormalPolynomial.constant(num.var, G_ONE),
            )
        g = num.gcd(den)
        if g.degree > 0:
            num = divmod(num, g)[0]
            den = divmod(den, g)[0]
        scale = den.leading.inverse()
        num = FormalPolynomial(num.var, tuple(c * scale for c in num.coeffs))
        den = den.monic()
        return cls(num, den)

    @property
    def var(self) -> str:
        return self.num.var

    def __bool__(self) -> bool:
        return bool(self.num)

    def _coerce(self, x) -> "FormalRationalFunction | None":
        if isinstance(x, FormalRationalFunction):
            return x if x.var == self.var else None
        if isinstance(x, FormalPolynomial):
            return FormalRationalFunction.make(x) if x.var == self.var else None
        g = GaussianRational._coerce(x)
        if g is None:
            return None
        return FormalRationalFunction.make(FormalPolynomial.make(self.var, [g]))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FormalRationalFunction.make(
            self.num * o.den + o.num * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return FormalRationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FormalRationalFunction.make(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "FormalRationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return FormalRationalFunction.make(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self.inverse() if exponent < 0 else self
        result = self._coerce(1)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def valuation_at_zero(self) -> int:
        """ord_0(num) - ord_0(den); negative means a pole at 0."""
        if not self.num:
            raise UndefinedValuation("valuation at 0 of the zero function")
        return self.num.order_at_zero() - self.den.order_at_zero()

    def limit_at_zero(self) -> GaussianRational:
        if not self.num:
            return G_ZERO
        v = self.valuation_at_zero()
        if v > 0:
            return G_ZERO
        if v < 0:
            raise PoleAtZero(f"pole of order {-v} at 0")
        return self.num.coeff(self.num.order_at_zero()) / self.den.coeff(
            self.den.order_at_zero()
        )

    def evaluate(self, point: GaussianRational) -> GaussianRational:
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError(f"denominator vanishes at {point}")
        return self.num.evaluate(point) / d

    def __str__(self) -> str:
        num_s = str(self.num)
        if self.den.coeffs == (G_ONE,):
            return num_s
        if any(ch in "+-" for ch in num_s[1:]):
            num_s = f"({num_s})"
        den_s = str(self.den)
        if not _is_atomic_factor(den_s):
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"


def _is_atomic_factor(s: str) -> bool:
    if s.isdigit():
        return True
    head, _, tail = s.partition("^")
    return head.isidentifier() and (tail == "" or tail.isdigit())


Scalar = Union[GaussianRational, FormalRationalFunction]


def valuation_at_zero(r: FormalRationalFunction) -> int:
    return r.valuation_at_zero()


def limit_at_zero(r: FormalRationalFunction) -> GaussianRational:
    return r.limit_at_zero()


@dataclass(frozen=True, slots=True)
class GaussianRationalField:
    """Field descriptor for Q(i), the computable base field."""

    @property
    def zero(self) -> GaussianRational:
        return G_ZERO

    @property
    def one(self) -> GaussianRational:
        return G_ONE

    @property
    def i(self) -> GaussianRational:
        return G_I

    def coerce(self, x) -> GaussianRational:
        g = GaussianRational._coerce(x)
        if g is None:
            raise TypeError(f"cannot coerce {x!r} into {self}")
        return g

    def sqrt(self, x) -> GaussianRational | None:
        return gaussian_sqrt(self.coerce(x))

    def __str__(self) -> str:
        return "Q(i)"


QI = GaussianRationalField()


@lru_cache(maxsize=None)
def _poly_consts(var: str) -> tuple[FormalPolynomial, FormalPolynomial]:
    return (
        FormalPolynomial(var, ()),
        FormalPolynomial.constant(var, G_ONE),
    )


@dataclass(frozen=True, slots=True)
class RationalFunctionField:
    """Field descriptor for Q(i)(var), rational functions in one formal parameter."""

    var: str

    @property
    def zero(self) -> FormalRationalFunction:
        z, o = _poly_consts(self.var)
        return FormalRationalFunction(z, o)

    @property
    def one(self) -> FormalRationalFunction:
        _, o = _poly_consts(self.var)
        return FormalRationalFunction(o, o)

    @property
    def i(self) -> FormalRationalFunction:
        return self.coerce(G_I)

    @property
    def gen(self) -> FormalRationalFunction:
        _, o = _poly_consts(self.var)
        return FormalRationalFunction(FormalPolynomial.gen(self.var), o)

    def coerce(self, x) -> FormalRationalFunction:
        if isinstance(x, FormalRationalFunction):
            if x.var != self.var:
                raise TypeError(f"cannot coerce {x} into {self}")
            return x
        if isinstance(x, FormalPolynomial):
            if x.var != self.var:
                raise TypeError(f"cannot coerce {x} into {self}")
            return FormalRationalFunction.make(x)
        g = GaussianRational._coerce(x)
        if g is None:
            raise TypeError(f"cannot coerce {x!r} into {self}")
        _, o = _poly_consts(self.var)
        return FormalRationalFunction(FormalPolynomial.make(self.var, [g]), o)

    def sqrt(self, x) -> FormalRationalFunction | None:
        r = self.coerce(x)
        num = _poly_sqrt(r.num)
        den = _poly_sqrt(r.den)
        if num is None or den is None:
            return None
        return FormalRationalFunction.make(num, den)

    def __str__(self) -> str:
        return f"Q(i)({self.var})"


def function_field(var: str) -> RationalFunctionField:
    return RationalFunctionField(var)


Field = Union[GaussianRationalField, RationalFunctionField]
