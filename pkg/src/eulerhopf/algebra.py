"""The Hopf algebra of words with the quasi-shuffle product.

Elements are finite rational linear combinations of words.  The product is
defined on words by

    a w * b v = a (w * b v) + b (a w * v) + [a, b] (w * v),

the coproduct is deconcatenation and the counit picks out the coefficient
of the empty word.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping, Union

from .errors import DomainError
from .words import (
    EMPTY,
    Letter,
    Word,
    _act,
    _bracket2,
    _compositions,
    _raw_word,
    factorizations,
    reverse,
    word_sort_key,
)

Scalar = Union[int, Fraction]


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class AlgebraElement:
    """A finite linear combination of words with rational coefficients.

    ``*`` is the quasi-shuffle product (or scaling, when one side is a
    number); ``+`` and ``-`` act coefficientwise.
    """

    __slots__ = ("_terms", "r")

    def __init__(self, terms: Mapping[Iterable[Letter], Scalar] | None = None, r: int | None = None):
        clean: dict[Word, Scalar] = {}
        for w, c in (terms or {}).items():
            w = w if type(w) is Word else Word(w)
            if w.r is not None:
                if r is None:
                    r = w.r
                elif w.r != r:
                    raise DomainError(f"word {w} does not belong to the algebra with r={r}")
            if not isinstance(c, Rational):
                raise DomainError(f"coefficients must be rational, got {c!r}")
            c = _clean(clean.get(w, 0) + c)
            if c:
                clean[w] = c
            else:
                clean.pop(w, None)
        if r is None:
            raise DomainError("cannot infer r; pass it explicitly")
        self._terms = clean
        self.r = r

    @classmethod
    def _trusted(cls, terms: dict, r: int) -> "AlgebraElement":
        obj = object.__new__(cls)
        obj._terms = terms
        obj.r = r
        return obj

    @classmethod
    def from_word(cls, w: Iterable[Letter], r: int | None = None, coeff: Scalar = 1) -> "AlgebraElement":
        return cls({Word(w): coeff}, r)

    @classmethod
    def one(cls, r: int) -> "AlgebraElement":
        return cls._trusted({EMPTY: 1}, r)

    @classmethod
    def zero(cls, r: int) -> "AlgebraElement":
        return cls._trusted({}, r)

    @property
    def terms(self) -> Mapping[Word, Scalar]:
        return dict(self._terms)

    def items(self) -> list[tuple[Word, Scalar]]:
        """Terms in canonical graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda kv: word_sort_key(kv[0]))

    def coefficient(self, w: Iterable[Letter]) -> Scalar:
        return self._terms.get(tuple(w), 0)

    def __iter__(self) -> Iterator[Word]:
        return iter(w for w, _ in self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_homogeneous(self) -> bool:
        return len({w.degree for w in self._terms}) <= 1

    # -- vector space ------------------------------------------------------

    def _check(self, other: "AlgebraElement") -> None:
        if other.r != self.r:
            raise DomainError(f"cannot combine elements with r={self.r} and r={other.r}")

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return self.r == other.r and self._terms == other._terms
        if isinstance(other, Rational):
            return self._terms == ({EMPTY: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.r, frozenset(self._terms.items())))

    def __add__(self, other):
        if isinstance(other, Rational):
            other = AlgebraElement.one(self.r) * other
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        _accumulate(out, other._terms.items())
        return AlgebraElement._trusted(out, self.r)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement._trusted({w: -c for w, c in self._terms.items()}, self.r)

    def __sub__(self, other):
        if isinstance(other, (AlgebraElement, Rational)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "AlgebraElement":
        if not c:
            return AlgebraElement.zero(self.r)
        return AlgebraElement._trusted({w: _clean(v * c) for w, v in self._terms.items()}, self.r)

    def __mul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        if isinstance(other, AlgebraElement):
            return star(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def map_words(self, fn: Callable[[Word], "AlgebraElement"]) -> "AlgebraElement":
        """Linear extension of a word-level map."""
        out: dict = {}
        for w, c in self._terms.items():
            _accumulate(out, ((v, c * d) for v, d in fn(w)._terms.items()))
        return AlgebraElement._trusted(out, self.r)

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"AlgebraElement({str(self)!r}, r={self.r})"


def _accumulate(out: dict, pairs) -> None:
    for w, c in pairs:
        c = _clean(out.get(w, 0) + c)
        if c:
            out[w] = c
        else:
            out.pop(w, None)


def as_element(x, r: int | None = None) -> AlgebraElement:
    if isinstance(x, AlgebraElement):
        return x
    if isinstance(x, (Word, tuple, list)):
        return AlgebraElement.from_word(x, r)
    raise DomainError(f"expected a word or algebra element, got {x!r}")


def format_element(x: AlgebraElement) -> str:
    """Canonical text: ``2 z[1,0] z[1,0] + z[2,0]``; zero prints as ``0``."""
    items = x.items()
    if not items:
        return "0"
    out = []
    for n, (w, c) in enumerate(items):
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if not w:
            body = str(c)
        elif c == 1:
            body = str(w)
        else:
            body = f"{c} {w}"
        if n == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# -- the quasi-shuffle product ---------------------------------------------


@lru_cache(maxsize=1 << 18)
def _star_words(u: tuple, v: tuple) -> tuple:
    """Product of two words as a tuple of (word, int coefficient) pairs."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    a, w = u[0], u[1:]
    b, vv = v[0], v[1:]
    out: dict = {}
    for head, x, y in ((a, w, v), (b, u, vv), (_bracket2(a, b), w, vv)):
        for t, c in _star_words(x, y):
            key = (head,) + t
            out[key] = out.get(key, 0) + c
    return tuple(out.items())


def star_words(u: Iterable[Letter], v: Iterable[Letter], r: int | None = None) -> AlgebraElement:
    u, v = Word(u), Word(v)
    if u.r is not None and v.r is not None and u.r != v.r:
        raise DomainError("cannot multiply words with different r")
    r = r or u.r or v.r
    if r is None:
        return AlgebraElement.one(1)
    return AlgebraElement._trusted(
        {_raw_word(t): c for t, c in _star_words(tuple(u), tuple(v))}, r)


def _coerce_pair(x, y) -> tuple[AlgebraElement, AlgebraElement]:
    # a bare empty word takes r from the other operand
    rx = x.r if isinstance(x, AlgebraElement) else Word(x).r
    ry = y.r if isinstance(y, AlgebraElement) else Word(y).r
    x, y = as_element(x, rx or ry), as_element(y, ry or rx)
    if x.r != y.r:
        raise DomainError(f"cannot multiply elements with r={x.r} and r={y.r}")
    return x, y


def star(x, y) -> AlgebraElement:
    """Quasi-shuffle product, extended bilinearly."""
    x, y = _coerce_pair(x, y)
    out: dict = {}
    for u, c in x._terms.items():
        for v, d in y._terms.items():
            cd = c * d
            _accumulate(out, ((t, cd * e) for t, e in _star_words(tuple(u), tuple(v))))
    return AlgebraElement._trusted({_raw_word(t): c for t, c in out.items()}, x.r)


def star_all(factors: Iterable, r: int) -> AlgebraElement:
    result = AlgebraElement.one(r)
    for f in factors:
        result = star(result, f)
    return result


# -- coalgebra -------------------------------------------------------------


class TensorElement:
    """A linear combination of tensor products ``w_1 (x) ... (x) w_m``.

    Keys are tuples of words; the arity is the tuple length.
    """

    __slots__ = ("_terms", "r")

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None, r: int = 1):
        out: dict = {}
        _accumulate(out, ((tuple(Word(w) for w in k), c) for k, c in (terms or {}).items()))
        self._terms = out
        self.r = r

    @property
    def terms(self) -> Mapping[tuple, Scalar]:
        return dict(self._terms)

    def items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: tuple(word_sort_key(w) for w in kv[0]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.r == other.r and self._terms == other._terms

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self._terms)
        _accumulate(out, other._terms.items())
        t = TensorElement(r=self.r)
        t._terms = out
        return t

    def __len__(self) -> int:
        return len(self._terms)

    def __str__(self) -> str:
        items = self.items()
        if not items:
            return "0"
        parts = []
        for n, (key, c) in enumerate(items):
            c = Fraction(c)
            body = " ⊗ ".join(str(w) for w in key)
            coeff = "" if abs(c) == 1 else f"{abs(c)} "
            sign = "-" if c < 0 else "+"
            parts.append((("-" if sign == "-" else "") if n == 0 else f" {sign} ") + coeff + body)
        return "".join(parts)

    __repr__ = __str__

    def apply(self, maps: list[Callable]) -> "TensorElement":
        """Apply one linear word map per tensor factor and flatten.

        Each map may return a number (arity 0), an :class:`AlgebraElement`
        (arity 1) or a :class:`TensorElement`.
        """
        out: dict = {}
        for key, c in self._terms.items():
            partial = {(): c}
            for f, w in zip(maps, key, strict=True):
                partial = _combine(partial, _as_tensor_terms(f(w)))
            _accumulate(out, partial.items())
        t = TensorElement(r=self.r)
        t._terms = out
        return t

    def flip(self) -> "TensorElement":
        """Reverse the order of the tensor factors."""
        t = TensorElement(r=self.r)
        t._terms = {tuple(reversed(k)): c for k, c in self._terms.items()}
        return t

    def contract(self) -> AlgebraElement:
        """Multiply the factors of every term with ``*``."""
        out = AlgebraElement.zero(self.r)
        for key, c in self._terms.items():
            out = out + star_all(key, self.r).scale(c)
        return out

    def scalar(self) -> Scalar:
        """Value of an arity-0 tensor."""
        if any(self._terms) and any(len(k) for k in self._terms):
            raise DomainError("tensor is not a scalar")
        return self._terms.get((), 0)

    def element(self) -> AlgebraElement:
        """View an arity-1 tensor as an algebra element."""
        return AlgebraElement({k[0]: c for k, c in self._terms.items()}, self.r)


def _combine(partial: dict, image: dict) -> dict:
    out: dict = {}
    for k1, c1 in partial.items():
        _accumulate(out, ((k1 + k2, c1 * c2) for k2, c2 in image.items()))
    return out


def _as_tensor_terms(value) -> dict:
    if isinstance(value, TensorElement):
        return value._terms
    if isinstance(value, AlgebraElement):
        return {(w,): c for w, c in value._terms.items()}
    if isinstance(value, Rational):
        return {(): value} if value else {}
    raise DomainError(f"cannot use {value!r} as a tensor factor")


def tensor(*factors: AlgebraElement) -> TensorElement:
    """Tensor product of algebra elements."""
    r = factors[0].r
    partial: dict = {(): 1}
    for f in factors:
        partial = _combine(partial, _as_tensor_terms(f))
    t = TensorElement(r=r)
    t._terms = partial
    return t


def coproduct(x) -> TensorElement:
    """Deconcatenation coproduct."""
    x = as_element(x)
    out: dict = {}
    for w, c in x._terms.items():
        _accumulate(out, (((w[:p], w[p:]), c) for p in range(len(w) + 1)))
    t = TensorElement(r=x.r)
    t._terms = out
    return t


def counit(x) -> Scalar:
    """Coefficient of the empty word."""
    if isinstance(x, (Word, tuple)) and not isinstance(x, AlgebraElement):
        return 0 if len(x) else 1
    return as_element(x).coefficient(EMPTY)


def identity(x):
    return as_element(x)


# -- antipode, reversal, overline ------------------------------------------


@lru_cache(maxsize=1 << 16)
def _antipode_products(w: Word) -> AlgebraElement:
    r = w.r
    total = AlgebraElement.zero(r)
    for pieces in factorizations(w):
        sign = -1 if len(pieces) % 2 else 1
        total = total + star_all(pieces, r).scale(sign)
    return total


@lru_cache(maxsize=1 << 16)
def _antipode_compositions(w: Word) -> dict:
    sign = -1 if len(w) % 2 else 1
    out: dict = {}
    rw = tuple(reversed(w))
    for I in _compositions(len(w)):
        v = _act(I, rw)
        out[v] = out.get(v, 0) + sign
    return out


def antipode(x, r: int | None = None) -> AlgebraElement:
    """The antipode, extended linearly.

    Computed word by word from bracketings of the reversed word, see
    :func:`antipode_via_compositions`; :func:`antipode_by_products` gives
    the same map by an independent route.
    """
    x = as_element(x, r)
    out: dict = {}
    for w, c in x._terms.items():
        if not w:
            _accumulate(out, ((w, c),))
        else:
            _accumulate(out, ((v, c * d) for v, d in _antipode_compositions(w).items()))
    return AlgebraElement._trusted(out, x.r)


def antipode_by_products(w: Iterable[Letter], r: int | None = None) -> AlgebraElement:
    """Antipode of a word as a signed sum of iterated products over its cuttings.

    ``S(w) = sum over w = w_1 ... w_k of (-1)**k  w_1 * ... * w_k``.
    """
    w = Word(w)
    if not w:
        return AlgebraElement.one(r or 1)
    return _antipode_products(w)


def antipode_via_compositions(w: Iterable[Letter], r: int | None = None) -> AlgebraElement:
    """The antipode of a word from bracketings of its reversal.

    ``S(a_1 ... a_n) = (-1)**n sum_I I[a_n ... a_1]``.
    """
    w = Word(w)
    if not w:
        return AlgebraElement.one(r or 1)
    return AlgebraElement._trusted(dict(_antipode_compositions(w)), r or w.r)


def reverse_linear(x, r: int | None = None) -> AlgebraElement:
    x = as_element(x, r)
    return AlgebraElement._trusted({reverse(w): c for w, c in x._terms.items()}, x.r)


def overline(x, r: int | None = None) -> AlgebraElement:
    """Sum of all bracketings ``J[w]`` of each word, extended linearly.

    >>> from .words import word
    >>> print(overline(word((1, 0), (1, 0))))
    z[2,0] + z[1,0] z[1,0]
    """
    x = as_element(x, r)

    def one_word(w: Word) -> AlgebraElement:
        if not w:
            return AlgebraElement.one(x.r)
        out: dict = {}
        for I in _compositions(len(w)):
            v = _act(I, tuple(w))
            out[v] = out.get(v, 0) + 1
        return AlgebraElement._trusted(out, x.r)

    return x.map_words(one_word)


@lru_cache(maxsize=1 << 16)
def _overline_star_words(u: tuple, v: tuple) -> tuple:
    # same recursion as _star_words, with the merged term subtracted
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    a, w = u[0], u[1:]
    b, vv = v[0], v[1:]
    out: dict = {}
    for head, x, y, sign in ((a, w, v, 1), (b, u, vv, 1), (_bracket2(a, b), w, vv, -1)):
        for t, c in _overline_star_words(x, y):
            key = (head,) + t
            out[key] = out.get(key, 0) + sign * c
    return tuple((k, c) for k, c in out.items() if c)


def overline_star(x, y) -> AlgebraElement:
    """Product of two elements written in the overline basis.

    Inputs and output are coefficient vectors on the overline basis: the
    word ``w`` stands for ``overline(w)``.
    """
    x, y = _coerce_pair(x, y)
    out: dict = {}
    for u, c in x._terms.items():
        for v, d in y._terms.items():
            _accumulate(out, ((t, c * d * e) for t, e in _overline_star_words(tuple(u), tuple(v))))
    return AlgebraElement._trusted({_raw_word(t): c for t, c in out.items()}, x.r)


def overline_from_products(w: Iterable[Letter], r: int | None = None) -> AlgebraElement:
    """``overline(w)`` as a signed sum of products over cuttings of ``R(w)``."""
    w = Word(w)
    r = r or w.r or 1
    n = len(w)
    total = AlgebraElement.zero(r)
    for pieces in factorizations(reverse(w)):
        sign = -1 if (n - len(pieces)) % 2 else 1
        total = total + star_all(pieces, r).scale(sign)
    return total


def word_from_overlines(w: Iterable[Letter], r: int | None = None) -> AlgebraElement:
    """Recover ``w`` as a signed sum of products of overlines over cuttings of ``R(w)``."""
    w = Word(w)
    r = r or w.r or 1
    n = len(w)
    total = AlgebraElement.zero(r)
    for pieces in factorizations(reverse(w)):
        sign = -1 if (n - len(pieces)) % 2 else 1
        total = total + star_all([overline(p, r) for p in pieces], r).scale(sign)
    return total


def clear_caches() -> None:
    _star_words.cache_clear()
    _overline_star_words.cache_clear()
    _antipode_products.cache_clear()
    _antipode_compositions.cache_clear()
