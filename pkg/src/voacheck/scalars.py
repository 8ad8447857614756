"""Exact Gaussian rationals and truncated (z, q, p) character series.

A :class:`Scalar` is ``(re + im*i) / den`` with integer ``re``, ``im`` and a
positive ``den`` kept coprime to ``gcd(re, im)``.  Every coefficient in the
package is a Scalar; nothing is ever rounded.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from math import gcd
from numbers import Rational

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "I",
    "as_scalar",
    "scalar_arith",
    "LaurentPoly",
    "CharacterSeries",
    "series_mul",
]


class Scalar:
    """An element of Q(i), immutable and hashable."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar):
            if im:
                raise TypeError("imaginary part must be rational")
            self._a, self._b, self._d = re._a, re._b, re._d
            return
        fr = Fraction(re)
        fi = Fraction(im)
        d = fr.denominator * fi.denominator // gcd(fr.denominator, fi.denominator)
        self._set(fr.numerator * (d // fr.denominator), fi.numerator * (d // fi.denominator), d)

    def _set(self, a, b, d):
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(a, b), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        self._a, self._b, self._d = a, b, d

    @classmethod
    def _raw(cls, a, b, d):
        s = object.__new__(cls)
        if d == 1:
            s._a, s._b, s._d = a, b, 1
        else:
            s._set(a, b, d)
        return s

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_real(self) -> bool:
        return self._b == 0

    def is_integer(self) -> bool:
        return self._b == 0 and self._d == 1

    def __int__(self):
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self._a

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __hash__(self):
        if self._b == 0:
            if self._d == 1:
                return hash(self._a)
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, Rational)):
            return self._b == 0 and Fraction(self._a, self._d) == other
        return NotImplemented

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return self.text()

    def text(self, compact: bool = False) -> str:
        """Canonical rendering ``a/b + c/d*i`` with zero parts omitted."""
        r, m = self.re, self.im
        if m == 0:
            return _frac_text(r)
        im_abs = _frac_text(abs(m))
        im_part = "i" if abs(m) == 1 else f"{im_abs}*i"
        if r == 0:
            return ("-" if m < 0 else "") + im_part
        sep = ("-" if m < 0 else "+") if compact else (" - " if m < 0 else " + ")
        return f"{_frac_text(r)}{sep}{im_part}"

    # arithmetic

    def __neg__(self):
        return Scalar._raw(-self._a, -self._b, self._d)

    def __add__(self, other):
        o = as_scalar(other)
        if self._d == o._d:
            return Scalar._raw(self._a + o._a, self._b + o._b, self._d)
        return Scalar._raw(self._a * o._d + o._a * self._d, self._b * o._d + o._b * self._d, self._d * o._d)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-as_scalar(other))

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return Scalar._raw(self._a * other, self._b * other, self._d)
        o = as_scalar(other)
        if self._b == 0 and o._b == 0:
            return Scalar._raw(self._a * o._a, 0, self._d * o._d)
        return Scalar._raw(self._a * o._a - self._b * o._b, self._a * o._b + self._b * o._a, self._d * o._d)

    __rmul__ = __mul__

    def conjugate(self):
        return Scalar._raw(self._a, -self._b, self._d)

    def inverse(self):
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("division by zero Scalar")
        # (a - b i) d / (a^2 + b^2)
        return Scalar._raw(self._a * self._d, -self._b * self._d, n)

    def __truediv__(self, other):
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    _TOKEN = _re.compile(
        r"^\s*(?:(?P<re>[+-]?\d+(?:/\d+)?)(?:\s*(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)?\*?i)?"
        r"|(?P<only>[+-]?(?:\d+(?:/\d+)?)?)\*?i)\s*$"
    )

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Inverse of :meth:`text` (both spaced and compact forms)."""
        m = cls._TOKEN.match(text)
        if not m:
            raise ValueError(f"not a scalar: {text!r}")
        if m.group("only") is not None:
            s = m.group("only")
            if s in ("", "+"):
                return I
            if s == "-":
                return -I
            return cls(0, Fraction(s))
        real = Fraction(m.group("re"))
        if m.group("sign") is None:
            return cls(real)
        imag = Fraction(m.group("im") or 1)
        return cls(real, imag if m.group("sign") == "+" else -imag)


def _frac_text(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar._raw(x, 0, 1)
    if isinstance(x, Rational):
        return Scalar._raw(x.numerator, 0, x.denominator)
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact; build a Scalar")
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")


ZERO = Scalar._raw(0, 0, 1)
ONE = Scalar._raw(1, 0, 1)
I = Scalar._raw(0, 1, 1)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Laurent polynomials in p and triple-graded series


class LaurentPoly:
    """Sparse Laurent polynomial in one variable with Scalar coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {e: as_scalar(c) for e, c in (coeffs or {}).items() if c}

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, ZERO) + c
        return LaurentPoly(out)

    def __mul__(self, other):
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, ZERO) + c1 * c2
        return LaurentPoly(out)

    def total(self) -> Scalar:
        """Value at p = 1."""
        s = ZERO
        for c in self.coeffs.values():
            s = s + c
        return s

    def __repr__(self):
        return "LaurentPoly(" + ", ".join(f"p^{e}: {c}" for e, c in sorted(self.coeffs.items())) + ")"


class CharacterSeries:
    """Series in (z, q, p): polynomial in q up to ``truncation_q``, Laurent in z and p.

    ``terms`` maps ``(charge, level)`` to a :class:`LaurentPoly` in p.  ``charge``
    is the z-exponent and ``level`` the q-exponent.
    """

    def __init__(self, truncation_q: int, terms=None):
        if truncation_q < 0:
            raise ValueError("truncation_q must be non-negative")
        self.truncation_q = truncation_q
        self.terms: dict[tuple[int, int], LaurentPoly] = {}
        for (z, lev), poly in (terms or {}).items():
            if lev < 0:
                raise ValueError("q-exponents must be non-negative")
            if lev > truncation_q:
                continue
            if not isinstance(poly, LaurentPoly):
                poly = LaurentPoly(poly)
            if poly:
                self.terms[(z, lev)] = poly

    @classmethod
    def monomial(cls, truncation_q, z=0, q=0, p=0, coeff=1):
        return cls(truncation_q, {(z, q): LaurentPoly({p: coeff})})

    @classmethod
    def one(cls, truncation_q):
        return cls.monomial(truncation_q)

    def __eq__(self, other):
        return (
            isinstance(other, CharacterSeries)
            and self.truncation_q == other.truncation_q
            and self.terms == other.terms
        )

    def __add__(self, other):
        _check_trunc(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return CharacterSeries(self.truncation_q, out)

    def __mul__(self, other):
        return series_mul(self, other)

    def coefficient(self, z: int, q: int, p: int) -> Scalar:
        poly = self.terms.get((z, q))
        return poly.coeffs.get(p, ZERO) if poly else ZERO

    def records(self):
        """Sorted ``(charge, level, p_exponent, coefficient)`` tuples."""
        out = []
        for (z, lev), poly in self.terms.items():
            for e, c in poly.coeffs.items():
                out.append((z, lev, e, c))
        out.sort(key=lambda r: (r[1], r[0], r[2]))
        return out

    def lines(self) -> list[str]:
        return [f"z^{z} q^{lev} p^{e} : {c}" for z, lev, e, c in self.records()]

    def __repr__(self):
        return f"CharacterSeries(D={self.truncation_q}, {len(self.terms)} cells)"


def _check_trunc(a: CharacterSeries, b: CharacterSeries):
    if a.truncation_q != b.truncation_q:
        raise ValueError(f"mismatched truncations {a.truncation_q} != {b.truncation_q}")


def series_mul(a: CharacterSeries, b: CharacterSeries) -> CharacterSeries:
    _check_trunc(a, b)
    D = a.truncation_q
    out: dict[tuple[int, int], LaurentPoly] = {}
    for (z1, q1), p1 in a.terms.items():
        for (z2, q2), p2 in b.terms.items():
            if q1 + q2 > D:
                continue
            key = (z1 + z2, q1 + q2)
            prod = p1 * p2
            out[key] = out[key] + prod if key in out else prod
    return CharacterSeries(D, out)
