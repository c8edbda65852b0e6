"""Letters, words and compositions for the Euler algebras.

A letter ``z[i,j]`` carries an exponent weight ``i >= 1`` and a root-of-unity
index ``0 <= j < r``.  Words are tuples of letters sharing the same ``r``;
the empty tuple is the unit word ``1``.

Compositions act on words by bracketing consecutive blocks of letters, which
is how the overline map, the second antipode formula and the S/A conversions
are all expressed.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from .errors import DomainError


class _LetterFields(NamedTuple):
    i: int
    j: int
    r: int


class Letter(_LetterFields):
    """The symbol ``z[i,j]`` of the algebra with index ``r``."""

    __slots__ = ()

    def __new__(cls, i: int, j: int = 0, r: int = 1) -> "Letter":
        if r < 1:
            raise DomainError(f"index r must be positive, got {r}")
        if i < 1:
            raise DomainError(f"letter weight must be positive, got z[{i},{j}]")
        if not 0 <= j < r:
            raise DomainError(f"letter z[{i},{j}] needs 0 <= j < r = {r}")
        return super().__new__(cls, i, j, r)

    def __repr__(self) -> str:
        return f"z[{self.i},{self.j}]"

    __str__ = __repr__


def _raw_word(letters: Iterable[Letter]) -> "Word":
    # skips validation; callers guarantee a common r
    return tuple.__new__(Word, letters)


class Word(tuple):
    """An immutable word in the letters ``z[i,j]``.

    >>> w = Word([Letter(1, 1, 3), Letter(2, 1, 3)])
    >>> w, w.degree, len(w)
    (z[1,1] z[2,1], 3, 2)
    """

    __slots__ = ()

    def __new__(cls, letters: Iterable[Letter] = ()) -> "Word":
        letters = tuple(letters)
        for a in letters:
            if not isinstance(a, Letter):
                raise DomainError(f"not a letter: {a!r}")
        if len({a.r for a in letters}) > 1:
            raise DomainError("letters of a word must share the same r")
        return tuple.__new__(cls, letters)

    @property
    def degree(self) -> int:
        return sum(a.i for a in self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def r(self) -> int | None:
        """Index of the letters, or ``None`` for the empty word."""
        return self[0].r if self else None

    def __add__(self, other):
        if isinstance(other, tuple):
            return Word(tuple(self) + tuple(other))
        return NotImplemented

    def __getitem__(self, key):
        item = tuple.__getitem__(self, key)
        if isinstance(key, slice):
            return _raw_word(item)
        return item

    def __repr__(self) -> str:
        if not self:
            return "1"
        return " ".join(map(repr, self))

    __str__ = __repr__


EMPTY = Word()


def word(*pairs: tuple[int, int], r: int = 1) -> Word:
    """Build a word from ``(i, j)`` pairs, e.g. ``word((1, 1), (2, 1), r=3)``."""
    return Word(Letter(i, j, r) for i, j in pairs)


def word_sort_key(w: Sequence[Letter]) -> tuple:
    """Graded lexicographic key: degree, then length, then letters."""
    return (sum(a.i for a in w), len(w), tuple((a.i, a.j) for a in w))


def _common_r(letters: Sequence[Letter]) -> int:
    rs = {a.r for a in letters}
    if len(rs) != 1:
        raise DomainError("letters must share the same r")
    return rs.pop()


@lru_cache(maxsize=None)
def _bracket2(a: Letter, b: Letter) -> Letter:
    return Letter(a.i + b.i, (a.j + b.j) % a.r, a.r)


def bracket(letters: Sequence[Letter]) -> Letter:
    """Merge letters by adding subscripts, the second one mod ``r``."""
    if not letters:
        raise DomainError("cannot bracket an empty sequence of letters")
    if len(letters) == 1:
        return letters[0]
    r = _common_r(letters)
    return Letter(sum(a.i for a in letters), sum(a.j for a in letters) % r, r)


# -- compositions -----------------------------------------------------------


class Composition(tuple):
    """A nonempty ordered tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int]) -> "Composition":
        parts = tuple(parts)
        if not parts:
            raise DomainError("a composition needs at least one part")
        if any(not isinstance(p, int) or p < 1 for p in parts):
            raise DomainError(f"composition parts must be positive integers: {parts}")
        return tuple.__new__(cls, parts)

    @property
    def total(self) -> int:
        return sum(self)

    def blocks(self) -> Iterator[range]:
        """Index ranges of the consecutive blocks."""
        start = 0
        for p in self:
            yield range(start, start + p)
            start += p


@lru_cache(maxsize=None)
def _compositions(n: int) -> tuple[Composition, ...]:
    # bit t of the mask merges the boundary n-1-t into its neighbour
    out = []
    for mask in range(1 << (n - 1)):
        parts, run = [], 1
        for pos in range(1, n):
            if mask >> (n - 1 - pos) & 1:
                run += 1
            else:
                parts.append(run)
                run = 1
        parts.append(run)
        out.append(tuple.__new__(Composition, parts))
    return tuple(out)


def enumerate_compositions(n: int) -> tuple[Composition, ...]:
    """All ``2**(n-1)`` compositions of ``n``.

    The order starts from the all-ones composition and ends with ``(n,)``:

    >>> enumerate_compositions(3)
    ((1, 1, 1), (1, 2), (2, 1), (3,))
    """
    if n < 1:
        raise DomainError(f"compositions need n >= 1, got {n}")
    return _compositions(n)


def compose_compositions(J: Sequence[int], I: Sequence[int]) -> Composition:
    """``J o I``: sum the parts of ``I`` over consecutive blocks of sizes ``J``."""
    J = Composition(J)
    I = Composition(I)
    if J.total != len(I):
        raise DomainError(f"{J} is a composition of {J.total}, but {I} has {len(I)} parts")
    return Composition(sum(I[t] for t in block) for block in J.blocks())


def act_on_args(J: Sequence[int], X: Sequence[int], r: int) -> tuple[int, ...]:
    """Multiply root-of-unity arguments ``e^X`` within each ``J``-block.

    Arguments are given by their exponents, so multiplication is addition
    mod ``r``.
    """
    J = Composition(J)
    if J.total != len(X):
        raise DomainError(f"{J} needs {J.total} arguments, got {len(X)}")
    return tuple(sum(X[t] for t in block) % r for block in J.blocks())


def act_on_word(I: Sequence[int], w: Sequence[Letter]) -> Word:
    """Bracket consecutive ``I``-blocks of the letters of ``w``."""
    I = Composition(I)
    if I.total != len(w):
        raise DomainError(f"{I} is a composition of {I.total}, word has length {len(w)}")
    return _act(I, tuple(w))


def _act(I: Composition, w: tuple) -> Word:
    out = []
    start = 0
    for p in I:
        if p == 1:
            out.append(w[start])
        else:
            a = w[start]
            for b in w[start + 1:start + p]:
                a = _bracket2(a, b)
            out.append(a)
        start += p
    return _raw_word(out)


def reverse(w: Sequence[Letter]) -> Word:
    return _raw_word(reversed(tuple(w)))


def coarsenings(w: Sequence[Letter]) -> list[Word]:
    """``[I[w] for I in compositions(len(w))]``, repeats kept.

    The empty word coarsens only to itself.
    """
    w = tuple(w)
    if not w:
        return [EMPTY]
    return [_act(I, w) for I in _compositions(len(w))]


def factorizations(w: Sequence[Letter]) -> list[tuple[Word, ...]]:
    """Every way of cutting ``w`` into consecutive nonempty subwords."""
    w = Word(w)
    if not w:
        return [()]
    return [tuple(w[b.start:b.stop] for b in I.blocks()) for I in _compositions(len(w))]


# -- Lyndon words -----------------------------------------------------------

LetterOrder = Callable[[Letter], object]


def default_letter_order(a: Letter) -> tuple[int, int]:
    return (a.i, a.j)


def is_lyndon(w: Sequence[Letter], order: LetterOrder = default_letter_order) -> bool:
    """True when ``w`` is strictly smaller than each of its proper right factors."""
    if not w:
        raise DomainError("the empty word is not a Lyndon candidate")
    keys = tuple(order(a) for a in w)
    return all(keys < keys[p:] for p in range(1, len(keys)))


def mobius(n: int) -> int:
    """Integer Moebius function by trial division."""
    if n < 1:
        raise DomainError(f"mobius needs n >= 1, got {n}")
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def lyndon_count(n: int, r: int) -> int:
    """Number of Lyndon words of degree ``n`` in the algebra of index ``r``.

    For ``n >= 2`` this is ``(1/n) sum_{d|n} mu(n/d) (r+1)**d``.  In degree 1
    the closed form overcounts by one; the true count is the ``r`` letters
    ``z[1,j]``.
    """
    if n < 1 or r < 1:
        raise DomainError(f"lyndon_count needs n, r >= 1, got n={n}, r={r}")
    if n == 1:
        return r
    total = sum(mobius(n // d) * (r + 1) ** d for d in range(1, n + 1) if n % d == 0)
    return total // n


def enumerate_words(n: int, r: int, max_length: int | None = None) -> list[Word]:
    """All words of degree exactly ``n`` (``r * (r+1)**(n-1)`` of them for n >= 1)."""
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    if r < 1:
        raise DomainError(f"index r must be positive, got {r}")
    if n == 0:
        return [EMPTY]
    out = []
    for I in _compositions(n):
        if max_length is not None and len(I) > max_length:
            continue
        for js in product(range(r), repeat=len(I)):
            out.append(_raw_word(Letter(i, j, r) for i, j in zip(I, js)))
    return out


def words_up_to(max_degree: int, r: int, max_length: int | None = None) -> list[Word]:
    """Nonempty words with degree at most ``max_degree``, in graded order."""
    out = []
    for n in range(1, max_degree + 1):
        out.extend(enumerate_words(n, r, max_length))
    return out
