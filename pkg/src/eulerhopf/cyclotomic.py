"""Exact arithmetic in the cyclotomic field Q(e), e = exp(2 pi i / r).

Elements are stored as their canonical residue modulo the cyclotomic
polynomial ``Phi_r``: a tuple of ``phi(r)`` rationals, constant term first.
Sums over roots of unity are usually accumulated in the length-``r`` power
basis (coefficients of ``1, e, ..., e**(r-1)``) and canonicalized once.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Sequence

import mpmath

from .errors import DomainError

Poly = tuple  # coefficients, lowest degree first


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        if x:
            for b, y in enumerate(q):
                out[a + b] += x * y
    return out


def _poly_divmod(p: Sequence, q: Sequence) -> tuple[list, list]:
    """Long division over Q (exact over Z when ``q`` is monic)."""
    p = _trim(list(p))
    q = _trim(list(q))
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lead = q[-1]
    quot = [0] * max(len(p) - len(q) + 1, 0)
    while len(p) >= len(q):
        c = p[-1] if lead == 1 else Fraction(p[-1]) / lead
        shift = len(p) - len(q)
        quot[shift] = c
        for t, y in enumerate(q):
            p[shift + t] -= c * y
        p.pop()
        _trim(p)
    return quot, p


@lru_cache(maxsize=None)
def cyclotomic_polynomial(r: int) -> Poly:
    """Integer coefficients of ``Phi_r``, lowest degree first.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if r < 1:
        raise DomainError(f"cyclotomic index must be positive, got {r}")
    num = [-1] + [0] * (r - 1) + [1]
    for d in range(1, r):
        if r % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return tuple(int(c) for c in num)


def euler_phi(r: int) -> int:
    return len(cyclotomic_polynomial(r)) - 1


@lru_cache(maxsize=None)
def _power_residues(r: int) -> tuple[tuple[int, ...], ...]:
    # x**k mod Phi_r for 0 <= k < 2r, as integer vectors of length phi(r)
    phi = cyclotomic_polynomial(r)
    d = len(phi) - 1
    rows = []
    cur = [1] + [0] * (d - 1)
    for _ in range(2 * r):
        rows.append(tuple(cur))
        # multiply by x and reduce with the monic modulus
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[t] for t, c in enumerate(cur)]
    return tuple(rows)


def _reduce(r: int, coeffs: Sequence) -> tuple:
    """Canonical residue of ``sum coeffs[k] x**k``; any length accepted."""
    d = euler_phi(r)
    if len(coeffs) <= d:
        out = list(coeffs) + [0] * (d - len(coeffs))
        return tuple(out)
    rows = _power_residues(r)
    out = [0] * d
    for k, c in enumerate(coeffs):
        if not c:
            continue
        row = rows[k % r]
        for t in range(d):
            if row[t]:
                out[t] += c * row[t]
    return tuple(out)


def _norm(c):
    # keep ints as ints; collapse integral Fractions
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class CyclotomicNumber:
    """An exact element of Q(e_r).

    >>> root_power(3, 1) + root_power(3, 2)
    CyclotomicNumber(3, '-1')
    """

    __slots__ = ("r", "coeffs", "_hash")

    def __init__(self, r: int, coeffs: Sequence = ()):
        self.r = r
        self.coeffs = tuple(_norm(c) for c in _reduce(r, coeffs))
        self._hash = None

    @classmethod
    def _canonical(cls, r: int, coeffs: tuple) -> "CyclotomicNumber":
        obj = object.__new__(cls)
        obj.r = r
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def from_power_basis(cls, r: int, coeffs: Sequence) -> "CyclotomicNumber":
        """From coefficients of ``1, e, ..., e**(r-1)`` (any length, wrapped mod r)."""
        return cls(r, coeffs)

    @classmethod
    def rational(cls, r: int, value) -> "CyclotomicNumber":
        return cls(r, [Fraction(value)])

    # -- inspection --------------------------------------------------------

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, CyclotomicNumber):
            if other.r != self.r:
                if self.is_rational() and other.is_rational():
                    return self.coeffs[0] == other.coeffs[0]
                return False
            return self.coeffs == other.coeffs
        if isinstance(other, Rational):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs[0]) if self.is_rational() else hash((self.r, self.coeffs))
        return self._hash

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "CyclotomicNumber | None":
        if isinstance(other, CyclotomicNumber):
            if other.r != self.r:
                raise DomainError(f"cannot mix Q(e_{self.r}) and Q(e_{other.r})")
            return other
        if isinstance(other, Rational):
            return CyclotomicNumber.rational(self.r, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber._canonical(
            self.r, tuple(_norm(a + b) for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._canonical(self.r, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            return CyclotomicNumber._canonical(
                self.r, tuple(_norm(a * other) for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = _reduce(self.r, _poly_mul(self.coeffs, o.coeffs))
        return CyclotomicNumber._canonical(self.r, tuple(_norm(c) for c in prod))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_r."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        # invariant: s * self == a (mod Phi_r)
        a, b = _trim([Fraction(c) for c in self.coeffs]), [Fraction(c) for c in cyclotomic_polynomial(self.r)]
        s, t = [Fraction(1)], []
        while len(b) > 0:
            q, rem = _poly_divmod(a, b)
            a, b = b, rem
            s, t = t, _trim(_poly_sub(s, _poly_mul(q, t)))
        # a is a nonzero constant since Phi_r is irreducible
        inv = [c / a[0] for c in s]
        return CyclotomicNumber(self.r, inv)

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.rational(self.r, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        return format_cyclotomic(self)

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self.r}, {str(self)!r})"


def _poly_sub(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    return [(p[k] if k < len(p) else 0) - (q[k] if k < len(q) else 0) for k in range(n)]


def root_power(r: int, j: int) -> CyclotomicNumber:
    """``e_r ** j`` in canonical form; ``j`` is taken mod ``r``."""
    if r < 1:
        raise DomainError(f"cyclotomic index must be positive, got {r}")
    return CyclotomicNumber._canonical(r, _power_residues(r)[j % r])


def cyclotomic_sum(terms: Sequence[CyclotomicNumber], r: int) -> CyclotomicNumber:
    total = CyclotomicNumber.rational(r, 0)
    for t in terms:
        total = total + t
    return total


# -- rendering and parsing --------------------------------------------------


def _fmt_rational(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_cyclotomic(c: CyclotomicNumber) -> str:
    """Polynomial-in-e text, e.g. ``(3/2) + (-1/2)*e^1``; rationals print bare."""
    if c.is_rational():
        return _fmt_rational(c.coeffs[0])
    parts = []
    for k, a in enumerate(c.coeffs):
        if a:
            parts.append(f"({_fmt_rational(a)})" + (f"*e^{k}" if k else ""))
    return " + ".join(parts)


_TERM = re.compile(r"\s*\(?\s*(-?\d+(?:/\d+)?)\s*\)?\s*(?:\*\s*e\^(\d+))?\s*")


def parse_cyclotomic(text: str, r: int) -> CyclotomicNumber:
    """Inverse of :func:`format_cyclotomic`."""
    coeffs: dict[int, Fraction] = {}
    for chunk in text.split("+"):
        m = _TERM.fullmatch(chunk)
        if not m:
            raise DomainError(f"cannot parse cyclotomic term {chunk!r}")
        k = int(m.group(2) or 0)
        coeffs[k] = coeffs.get(k, Fraction(0)) + Fraction(m.group(1))
    size = max(coeffs) + 1
    return CyclotomicNumber(r, [coeffs.get(k, 0) for k in range(size)])


def approximate(c: CyclotomicNumber, digits: int = 12) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Real and imaginary parts with absolute error below ``10**-digits``.

    Evaluation uses interval arithmetic, raising the working precision until
    the enclosing intervals are narrow enough.
    """
    if digits < 1:
        raise DomainError(f"digits must be >= 1, got {digits}")
    if c.is_rational():
        q = Fraction(c.coeffs[0])
        with mpmath.workdps(digits + 10):
            return mpmath.mpf(q.numerator) / q.denominator, mpmath.mpf(0)
    iv = mpmath.iv
    tol = mpmath.mpf(10) ** (-digits) / 2
    dps = digits + 10
    while True:
        old = iv.dps
        iv.dps = dps
        try:
            re_, im_ = iv.mpf(0), iv.mpf(0)
            for k, a in enumerate(c.coeffs):
                if not a:
                    continue
                a = Fraction(a)
                coef = iv.mpf(a.numerator) / a.denominator
                angle = 2 * iv.pi * k / c.r
                re_ += coef * iv.cos(angle)
                im_ += coef * iv.sin(angle)
            # interval attributes are evaluated at the current iv precision
            with mpmath.workdps(dps):
                widths = mpmath.mpf(re_.delta.b), mpmath.mpf(im_.delta.b)
                mids = mpmath.mpf(re_.mid.a), mpmath.mpf(im_.mid.a)
        finally:
            iv.dps = old
        if widths[0] < tol and widths[1] < tol:
            return mids
        dps *= 2


def format_approx(c: CyclotomicNumber, digits: int = 12) -> tuple[str, str]:
    re_, im_ = approximate(c, digits)
    return _fmt_decimal(re_, digits), _fmt_decimal(im_, digits)


def _fmt_decimal(x: mpmath.mpf, digits: int) -> str:
    with mpmath.workdps(digits + 10):
        if abs(x) < mpmath.mpf(10) ** (-digits):
            return "0.0"
        s = mpmath.nstr(x, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    if s in ("-0.0", "-0"):
        return "0.0"
    return s
