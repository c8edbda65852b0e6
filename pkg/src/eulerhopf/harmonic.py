"""Multiple harmonic sums at roots of unity.

A word ``z[i_1,j_1] ... z[i_k,j_k]`` of the algebra with index ``r`` codes
the nested sums

    A_w(n) = sum_{n >= n_1 > ... > n_k >= 1}  prod_t e**(j_t n_t) / n_t**i_t
    S_w(n) = the same with weak inequalities n_1 >= ... >= n_k

with ``e = exp(2 pi i / r)``.  Values are exact elements of Q(e).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Literal, Sequence

from .algebra import AlgebraElement, as_element, overline
from .cyclotomic import CyclotomicNumber, format_approx, format_cyclotomic
from .errors import DomainError
from .words import (
    Letter,
    Word,
    _act,
    _compositions,
    act_on_args,
    compose_compositions,
    factorizations,
    reverse,
)

Kind = Literal["A", "S"]


def _ring_r(w: Word, r: int | None) -> int:
    if r is not None:
        if w.r is not None and w.r != r:
            raise DomainError(f"word {w} has r={w.r}, expected {r}")
        return r
    return w.r or 1


def _summand_sum(w: Word, r: int, index_tuples: Iterable[tuple[int, ...]]) -> CyclotomicNumber:
    acc = [Fraction(0)] * r
    for ns in index_tuples:
        expo = 0
        denom = 1
        for a, m in zip(w, ns):
            expo += a.j * m
            denom *= m ** a.i
        acc[expo % r] += Fraction(1, denom)
    return CyclotomicNumber.from_power_basis(r, acc)


def eval_A_bruteforce(w: Sequence[Letter], n: int, r: int | None = None) -> CyclotomicNumber:
    """Direct nested summation over ``n >= n_1 > ... > n_k >= 1``."""
    w = Word(w)
    r = _ring_r(w, r)
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    tuples = (tuple(reversed(c)) for c in itertools.combinations(range(1, n + 1), len(w)))
    return _summand_sum(w, r, tuples)


def eval_S_bruteforce(w: Sequence[Letter], n: int, r: int | None = None) -> CyclotomicNumber:
    """Direct nested summation over ``n >= n_1 >= ... >= n_k >= 1``."""
    w = Word(w)
    r = _ring_r(w, r)
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    tuples = (tuple(reversed(c))
              for c in itertools.combinations_with_replacement(range(1, n + 1), len(w)))
    return _summand_sum(w, r, tuples)


@lru_cache(maxsize=1 << 16)
def _eval_word(w: Word, n: int, r: int) -> CyclotomicNumber:
    # f(m) = A_{suffix}(m) for m = 0..n, built from the last letter outwards,
    # kept in the power basis of length r
    prev = [[Fraction(1)] + [Fraction(0)] * (r - 1) for _ in range(n + 1)]
    for depth, a in enumerate(reversed(w), start=1):
        cur = [[Fraction(0)] * r for _ in range(n + 1)]
        for m in range(1, n + 1):
            row = list(cur[m - 1])
            if m >= depth:
                shift = a.j * m
                scale = Fraction(1, m ** a.i)
                for t, c in enumerate(prev[m - 1]):
                    if c:
                        row[(t + shift) % r] += c * scale
            cur[m] = row
        prev = cur
    return CyclotomicNumber.from_power_basis(r, prev[n])


def eval_A(x, n: int, r: int | None = None) -> CyclotomicNumber:
    """The evaluation map ``rho_n``: ``A_w(n)`` on words, extended linearly."""
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    if isinstance(x, AlgebraElement):
        if r is not None and r != x.r:
            raise DomainError(f"element has r={x.r}, expected {r}")
        total = CyclotomicNumber.rational(x.r, 0)
        for w, c in x.terms.items():
            total = total + _eval_word(w, n, x.r) * c
        return total
    w = x if type(x) is Word else Word(x)
    return _eval_word(w, n, _ring_r(w, r))


@lru_cache(maxsize=1 << 16)
def _eval_overline(w: Word, n: int, r: int) -> CyclotomicNumber:
    return eval_A(overline(w, r), n)


def eval_S(x, n: int, r: int | None = None) -> CyclotomicNumber:
    """``S_w(n) = rho_n(overline(w))``."""
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    if not isinstance(x, AlgebraElement):
        w = x if type(x) is Word else Word(x)
        return _eval_overline(w, n, _ring_r(w, r))
    x = as_element(x, r)
    if r is not None and r != x.r:
        raise DomainError(f"element has r={x.r}, expected {r}")
    return eval_A(overline(x), n)


def harmonic_sum(kind: Kind, exponents: Sequence[int], args: Sequence[int], n: int, r: int) -> CyclotomicNumber:
    """``A_I(n; X)`` or ``S_I(n; X)`` with ``X = (e**x_1, ..., e**x_k)``."""
    if len(exponents) != len(args):
        raise DomainError("exponents and arguments must have the same length")
    w = Word(Letter(i, j % r, r) for i, j in zip(exponents, args))
    return eval_A(w, n, r) if kind == "A" else eval_S(w, n, r)


def s_from_a_by_compositions(exponents: Sequence[int], args: Sequence[int], n: int, r: int) -> CyclotomicNumber:
    """``S_I(n;X) = sum_J A_{J o I}(n; J(X))`` computed on exponent/argument strings."""
    k = len(exponents)
    total = CyclotomicNumber.rational(r, 0)
    for J in _compositions(k):
        total = total + harmonic_sum("A", compose_compositions(J, exponents), act_on_args(J, args, r), n, r)
    return total


def a_from_s_by_compositions(exponents: Sequence[int], args: Sequence[int], n: int, r: int) -> CyclotomicNumber:
    """``A_I(n;X) = sum_J (-1)**(l(J)-k) S_{J o I}(n; J(X))``."""
    k = len(exponents)
    total = CyclotomicNumber.rational(r, 0)
    for J in _compositions(k):
        sign = -1 if (len(J) - k) % 2 else 1
        total = total + harmonic_sum("S", compose_compositions(J, exponents), act_on_args(J, args, r), n, r) * sign
    return total


# -- formal expansions -------------------------------------------------------


@dataclass(frozen=True)
class SumExpression:
    """A signed sum of products of harmonic sums of one kind.

    ``terms`` holds ``(coefficient, (w_1, ..., w_m))`` pairs, standing for
    ``coefficient * X_{w_1}(n) ... X_{w_m}(n)`` with ``X`` the given kind.
    """

    kind: Kind
    r: int
    terms: tuple[tuple[int, tuple[Word, ...]], ...]

    def evaluate(self, n: int) -> CyclotomicNumber:
        f = eval_A if self.kind == "A" else eval_S
        total = CyclotomicNumber.rational(self.r, 0)
        for c, words in self.terms:
            value = None
            for w in words:
                factor = f(w, n, self.r)
                value = factor if value is None else value * factor
            total = total + (c if value is None else value * c)
        return total

    def max_length(self) -> int:
        return max((len(w) for _, ws in self.terms for w in ws), default=0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, ws in self.terms:
            body = "*".join(f"{self.kind}({w})" for w in ws) or "1"
            parts.append(f"{c:+d} {body}" if abs(c) != 1 else f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts).lstrip("+ ")


@dataclass(frozen=True)
class Identity:
    """``lhs == rhs`` as an identity between harmonic sums, valid for every n."""

    lhs: SumExpression
    rhs: SumExpression

    def sides(self, n: int) -> tuple[CyclotomicNumber, CyclotomicNumber]:
        return self.lhs.evaluate(n), self.rhs.evaluate(n)

    def holds(self, n: int) -> bool:
        left, right = self.sides(n)
        return left == right

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


def _collect(kind: Kind, r: int, pairs: Iterable[tuple[int, tuple[Word, ...]]]) -> SumExpression:
    acc: dict = {}
    for c, ws in pairs:
        acc[ws] = acc.get(ws, 0) + c
    return SumExpression(kind, r, tuple((c, ws) for ws, c in acc.items() if c))


def s_from_a_expansion(w: Sequence[Letter], r: int | None = None) -> SumExpression:
    """``S_w = sum over coarsenings u of w of A_u``."""
    w = Word(w)
    r = _ring_r(w, r)
    if not w:
        return SumExpression("A", r, ((1, ()),))
    return _collect("A", r, ((1, (_act(J, tuple(w)),)) for J in _compositions(len(w))))


def a_from_s_expansion(w: Sequence[Letter], r: int | None = None) -> SumExpression:
    """``A_w = sum_J (-1)**(l(w)-l(J)) S_{J[w]}``, the Moebius inverse of the above."""
    w = Word(w)
    r = _ring_r(w, r)
    if not w:
        return SumExpression("S", r, ((1, ()),))
    k = len(w)
    return _collect("S", r, ((-1 if (k - len(J)) % 2 else 1, (_act(J, tuple(w)),))
                             for J in _compositions(k)))


def _factorization_terms(w: Word, min_pieces: int = 1):
    n = len(w)
    for pieces in factorizations(reverse(w)):
        if len(pieces) >= min_pieces:
            yield (-1 if (n - len(pieces)) % 2 else 1), tuple(pieces)


def product_expansion_S(w: Sequence[Letter], r: int | None = None) -> SumExpression:
    """``S_w = sum over cuttings w_1...w_k of R(w) of (-1)**(l(w)-k) A_{w_1} ... A_{w_k}``."""
    w = Word(w)
    if not w:
        raise DomainError("product expansion needs a nonempty word")
    return _collect("A", _ring_r(w, r), _factorization_terms(w))


def product_expansion_A(w: Sequence[Letter], r: int | None = None) -> SumExpression:
    """``A_w`` as the same signed sum with ``S``-factors."""
    w = Word(w)
    if not w:
        raise DomainError("product expansion needs a nonempty word")
    return _collect("S", _ring_r(w, r), _factorization_terms(w))


def duality_reduction(w: Sequence[Letter], r: int | None = None) -> Identity:
    """``A_w + (-1)**l(w) A_{R(w)}`` in terms of sums of smaller length."""
    w = Word(w)
    if len(w) < 2:
        raise DomainError("duality reduction needs a word of length >= 2")
    r = _ring_r(w, r)
    k = len(w)
    lhs = _collect("A", r, [(1, (w,)), (-1 if k % 2 else 1, (reverse(w),))])
    coarser = ((-1, (_act(J, tuple(w)),)) for J in _compositions(k) if len(J) < k)
    rhs = _collect("A", r, itertools.chain(_factorization_terms(w, min_pieces=2), coarser))
    return Identity(lhs, rhs)


# -- result records ----------------------------------------------------------


@dataclass(frozen=True)
class HarmonicValue:
    word: Word
    n: int
    kind: Kind
    value: CyclotomicNumber

    @property
    def r(self) -> int:
        return self.value.r

    def exact(self) -> str:
        return format_cyclotomic(self.value)

    def approx(self, digits: int = 12) -> tuple[str, str]:
        return format_approx(self.value, digits)


def evaluate(w: Sequence[Letter], n: int, kind: Kind = "A", r: int | None = None) -> HarmonicValue:
    w = Word(w)
    if kind not in ("A", "S"):
        raise DomainError(f"kind must be 'A' or 'S', got {kind!r}")
    value = eval_A(w, n, r) if kind == "A" else eval_S(w, n, r)
    return HarmonicValue(w, n, kind, value)


def clear_caches() -> None:
    _eval_word.cache_clear()
    _eval_overline.cache_clear()

