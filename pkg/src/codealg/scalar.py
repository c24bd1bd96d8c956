"""Exact coefficients: rationals and elements of a quadratic field Q(sqrt d).

Rationals are ``gmpy2.mpq`` values. An element with a nonzero surd part is an
:class:`ExactScalar`; every arithmetic result whose surd part vanishes
collapses back to a plain rational, so a value has exactly one
representation and rationals mix freely with any quadratic field.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from gmpy2 import is_square, isqrt, mpq, mpz

from .errors import CodeAlgebraError


class DivisionByZero(CodeAlgebraError, ZeroDivisionError):
    pass


class DiscriminantMismatch(CodeAlgebraError):
    """Two surds from different quadratic fields met in one operation."""


class UnorderedField(CodeAlgebraError):
    """Ordering requested in Q(sqrt d) with d < 0."""


class ZeroInput(CodeAlgebraError):
    pass


def Q(x, den=None):
    """Coerce ``x`` (int, Fraction, mpq, or a literal like ``"3/4"``) to a rational."""
    if den is not None:
        return mpq(x, den)
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    if isinstance(x, float):
        raise TypeError("floating-point input is not exact")
    return mpq(x)


def squarefree_part(n: int) -> int:
    """Signed squarefree part: ``n = s**2 * squarefree_part(n)``."""
    n = int(n)
    if n == 0:
        raise ZeroInput("0 has no squarefree part")
    sign = -1 if n < 0 else 1
    return sign * _squarefree_abs(abs(n))


@lru_cache(maxsize=1024)
def _squarefree_abs(n: int) -> int:
    if is_square(n):
        return 1
    if n < 10**12:
        out, p = 1, 2
        while p * p <= n:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                out *= p
            p += 1 if p == 2 else 2
        return out * n
    from sympy import factorint

    out = 1
    for p, e in factorint(n).items():
        if e % 2:
            out *= p
    return out


def is_squarefree(d: int) -> bool:
    return d != 0 and squarefree_part(d) == d


class ExactScalar:
    """``rational + surd * sqrt(disc)`` with ``surd != 0``.

    Build values with :func:`surd`, which returns a plain rational when the
    surd part is zero.
    """

    __slots__ = ("rational", "surd", "disc")

    def __init__(self, rational, surd, disc: int):
        disc = int(disc)
        if disc == 1 or not is_squarefree(disc):
            raise ValueError(f"discriminant must be squarefree and != 1, got {disc}")
        surd = mpq(surd)
        if surd == 0:
            raise ValueError("use surd() for values with zero surd part")
        self.rational = mpq(rational)
        self.surd = surd
        self.disc = disc

    def _other(self, y):
        if isinstance(y, ExactScalar):
            if y.disc != self.disc:
                raise DiscriminantMismatch(f"sqrt({self.disc}) vs sqrt({y.disc})")
            return y.rational, y.surd
        if isinstance(y, float):
            return NotImplemented
        try:
            return mpq(y), 0
        except TypeError:
            return NotImplemented

    def __add__(self, y):
        o = self._other(y)
        if o is NotImplemented:
            return o
        return surd(self.rational + o[0], self.surd + o[1], self.disc)

    __radd__ = __add__

    def __sub__(self, y):
        o = self._other(y)
        if o is NotImplemented:
            return o
        return surd(self.rational - o[0], self.surd - o[1], self.disc)

    def __rsub__(self, y):
        o = self._other(y)
        if o is NotImplemented:
            return o
        return surd(o[0] - self.rational, o[1] - self.surd, self.disc)

    def __mul__(self, y):
        o = self._other(y)
        if o is NotImplemented:
            return o
        r, s = o
        return surd(
            self.rational * r + self.surd * s * self.disc,
            self.rational * s + self.surd * r,
            self.disc,
        )

    __rmul__ = __mul__

    def __truediv__(self, y):
        o = self._other(y)
        if o is NotImplemented:
            return o
        r, s = o
        if s == 0:
            if r == 0:
                raise DivisionByZero("division by zero")
            return surd(self.rational / r, self.surd / r, self.disc)
        return self * _inverse(r, s, self.disc)

    def __rtruediv__(self, y):
        o = self._other(y)
        if o is NotImplemented:
            return o
        return _inverse(self.rational, self.surd, self.disc) * o[0]

    def __neg__(self):
        return ExactScalar(-self.rational, -self.surd, self.disc)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (1 / self) ** (-k)
        out, base = mpq(1), self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return ExactScalar(self.rational, -self.surd, self.disc)

    def norm(self):
        return self.rational * self.rational - self.surd * self.surd * self.disc

    def __bool__(self):
        return True

    def __eq__(self, y):
        if isinstance(y, ExactScalar):
            return (self.disc, self.rational, self.surd) == (y.disc, y.rational, y.surd)
        return False

    def __ne__(self, y):
        return not self == y

    def __hash__(self):
        return hash((self.rational, self.surd, self.disc))

    def __lt__(self, y):
        return sign(self - y) < 0

    def __le__(self, y):
        return sign(self - y) <= 0

    def __gt__(self, y):
        return sign(self - y) > 0

    def __ge__(self, y):
        return sign(self - y) >= 0

    def __float__(self):
        if self.disc < 0:
            raise UnorderedField("no real embedding for a negative discriminant")
        return float(self.rational) + float(self.surd) * float(self.disc) ** 0.5

    def __repr__(self):
        return f"ExactScalar({self.rational}, {self.surd}, {self.disc})"

    def __str__(self):
        return format_scalar(self)


def surd(rational, surd_part, disc: int):
    """The field element ``rational + surd_part*sqrt(disc)``, collapsed when rational."""
    if surd_part == 0 or disc == 1:
        if disc == 1 and surd_part != 0:
            return mpq(rational) + mpq(surd_part)
        return mpq(rational)
    return ExactScalar(rational, surd_part, disc)


def _inverse(r, s, d):
    n = r * r - s * s * d
    if n == 0:
        raise DivisionByZero("division by zero")
    return surd(r / n, -s / n, d)


def disc_of(x) -> int:
    """Discriminant carried by ``x`` (1 for rationals)."""
    return x.disc if isinstance(x, ExactScalar) else 1


def is_rational(x) -> bool:
    return not isinstance(x, ExactScalar)


def sign(x) -> int:
    """Sign under the real embedding with sqrt(d) > 0."""
    if not isinstance(x, ExactScalar):
        return (x > 0) - (x < 0)
    if x.disc < 0:
        raise UnorderedField(f"Q(sqrt({x.disc})) has no ordering")
    r, s = x.rational, x.surd
    sr, ss = (r > 0) - (r < 0), (s > 0) - (s < 0)
    if sr == ss or sr == 0:
        return ss
    # opposite signs: compare r^2 with s^2 d
    big = r * r - s * s * x.disc
    return sr if big > 0 else ss


def _rational_sqrt(q):
    q = mpq(q)
    if q < 0:
        return None
    num, den = mpz(q.numerator), mpz(q.denominator)
    if is_square(num) and is_square(den):
        return mpq(isqrt(num), isqrt(den))
    return None


def sqrt_in_field(q, d: int = 1):
    """A square root of ``q`` inside Q(sqrt d), or ``None``.

    Rational ``q`` gives ``s`` when ``q = s**2`` and ``s*sqrt(d)`` when
    ``q = s**2 * d``, always with ``s >= 0``. Surd inputs of the same field are
    also handled; the root with nonnegative rational part (else nonnegative
    surd part) is returned.
    """
    d = int(d)
    if isinstance(q, ExactScalar):
        if q.disc != d:
            raise DiscriminantMismatch(f"sqrt({q.disc}) vs sqrt({d})")
        return _sqrt_surd(q)
    q = mpq(q)
    if q == 0:
        return mpq(0)
    r = _rational_sqrt(q)
    if r is not None:
        return r
    if d == 1:
        return None
    r = _rational_sqrt(q / d)
    if r is not None:
        return surd(0, r, d)
    return None


def _sqrt_surd(x: ExactScalar):
    # (u + w sqrt d)^2 = u^2 + d w^2 + 2uw sqrt d
    r, s, d = x.rational, x.surd, x.disc
    root_norm = _rational_sqrt(r * r - s * s * d)
    if root_norm is None:
        return None
    for u2 in ((r + root_norm) / 2, (r - root_norm) / 2):
        u = _rational_sqrt(u2)
        if u is None or u == 0:
            continue
        w = s / (2 * u)
        if u * u + d * w * w == r:
            return surd(u, w, d)
    return None


def choose_discriminant(q) -> int:
    """Squarefree ``d`` with ``q = s**2 * d``, so ``sqrt(q)`` lies in Q(sqrt d)."""
    q = mpq(q)
    if q == 0:
        raise ZeroInput("cannot choose a discriminant for 0")
    return squarefree_part(int(q.numerator) * int(q.denominator))


def format_rational(x) -> str:
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    """``"p/q"`` or ``"p/q+r/s*sqrt(d)"``; inverse of :func:`parse_scalar`."""
    if not isinstance(x, ExactScalar):
        return format_rational(x)
    s = {1: "", -1: "-"}.get(x.surd, format_rational(x.surd) + "*")
    surd_txt = f"{s}sqrt({x.disc})"
    if x.rational == 0:
        return surd_txt
    sep = "" if x.surd < 0 else "+"
    return f"{format_rational(x.rational)}{sep}{surd_txt}"


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?:(?P<r>{_RAT})(?=\s*(?:[+-]|$)))?\s*"
    rf"(?:(?P<s>[+-]?\s*(?:\d+(?:/\d+)?)?)\s*\*?\s*sqrt\(\s*(?P<d>[+-]?\d+)\s*\))?\s*$"
)


def parse_scalar(text: str):
    """Parse ``"p"``, ``"p/q"``, ``"p/q+r/s*sqrt(d)"``, ``"sqrt(d)"``, ``"-r/s*sqrt(d)"``."""
    m = _SCALAR_RE.match(text)
    if not m or (m.group("r") is None and m.group("d") is None):
        raise ValueError(f"not a scalar literal: {text!r}")
    r = Q(m.group("r")) if m.group("r") else mpq(0)
    if m.group("d") is None:
        return r
    d = int(m.group("d"))
    coef = m.group("s").replace(" ", "") if m.group("s") is not None else ""
    if coef in ("", "+"):
        s = mpq(1)
    elif coef == "-":
        s = mpq(-1)
    else:
        s = Q(coef)
    sf = squarefree_part(d)
    root = _rational_sqrt(mpq(d, sf))
    return r + surd(0, s * root, sf) if sf != 1 else r + s * root


def sort_key(x):
    """Deterministic total order on field elements (not the field ordering)."""
    if isinstance(x, ExactScalar):
        return (1, x.rational, x.surd)
    return (0, mpq(x), 0)
