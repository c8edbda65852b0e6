"""Set partitions and symmetrized harmonic sums.

Symmetrizing a word over all permutations of its letters gives a
combination that collapses to products of depth-one sums, with weights from
the Moebius function of the partition lattice.

Refinement is oriented so that the partition into singletons is the top
element: ``B <= C`` means every block of ``B`` is a union of blocks of ``C``.
With this orientation ``mu(B, singletons)`` is the signed factorial
coefficient returned by :func:`c_coefficient`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Iterator, Sequence

from .algebra import AlgebraElement, overline, star_all
from .cyclotomic import CyclotomicNumber
from .errors import DomainError
from .harmonic import eval_A, eval_S
from .words import Letter, Word, _raw_word, bracket

MAX_SET_PARTITION_SIZE = 10


@dataclass(frozen=True)
class SetPartition:
    """A partition of ``{1, ..., k}``; blocks sorted, ordered by least element."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        if any(not b for b in blocks):
            raise DomainError("set partition blocks must be nonempty")
        elems = [x for b in blocks for x in b]
        if sorted(elems) != list(range(1, len(elems) + 1)):
            raise DomainError(f"{self.blocks} is not a partition of {{1..{len(elems)}}}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    @classmethod
    def singletons(cls, k: int) -> "SetPartition":
        return cls(tuple((x,) for x in range(1, k + 1)))

    @classmethod
    def single_block(cls, k: int) -> "SetPartition":
        return cls((tuple(range(1, k + 1)),))

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


def _restricted_growth(k: int) -> Iterator[list[int]]:
    a = [0] * k

    def rec(pos: int, top: int):
        if pos == k:
            yield list(a)
            return
        for v in range(top + 2):
            a[pos] = v
            yield from rec(pos + 1, max(top, v))

    if k == 0:
        yield []
        return
    a[0] = 0
    yield from rec(1, 0)


def enumerate_set_partitions(k: int) -> Iterator[SetPartition]:
    """All partitions of ``{1..k}``, in restricted-growth-string order."""
    if not 1 <= k <= MAX_SET_PARTITION_SIZE:
        raise DomainError(f"set partitions supported for 1 <= k <= {MAX_SET_PARTITION_SIZE}, got {k}")
    for rgs in _restricted_growth(k):
        blocks: dict[int, list[int]] = {}
        for x, label in enumerate(rgs, start=1):
            blocks.setdefault(label, []).append(x)
        yield SetPartition(tuple(tuple(b) for b in blocks.values()))


def refines(B: SetPartition, C: SetPartition) -> bool:
    """True when ``B <= C``: each block of ``B`` is a union of blocks of ``C``."""
    if B.size != C.size:
        return False
    owner = {x: n for n, b in enumerate(B.blocks) for x in b}
    return all(len({owner[x] for x in c}) == 1 for c in C.blocks)


def c_coefficient(B: SetPartition) -> int:
    """``(-1)**(k-q) prod (|B_t| - 1)!`` for a partition with q blocks of ``{1..k}``."""
    sign = -1 if (B.size - len(B)) % 2 else 1
    return sign * math.prod(math.factorial(len(b) - 1) for b in B.blocks)


def partition_mobius(B: SetPartition, C: SetPartition) -> int:
    """Moebius function ``mu(B, C)`` of the partition lattice, for ``B <= C``."""
    if not refines(B, C):
        raise DomainError(f"{B} is not coarser than {C}")
    owner = {x: n for n, b in enumerate(B.blocks) for x in b}
    counts = [0] * len(B)
    for c in C.blocks:
        counts[owner[c[0]]] += 1
    return math.prod((-1) ** (m - 1) * math.factorial(m - 1) for m in counts)


def coarsenings_of(C: SetPartition) -> Iterator[SetPartition]:
    """Every ``B`` with ``B <= C``, obtained by merging blocks of ``C``."""
    p = len(C)
    for merge in enumerate_set_partitions(p) if p else ():
        yield SetPartition(tuple(
            tuple(x for t in group for x in C.blocks[t - 1]) for group in merge.blocks))


@dataclass(frozen=True)
class IntegerPartition:
    """Parts in weakly decreasing order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts) or list(self.parts) != sorted(self.parts, reverse=True):
            raise DomainError(f"not an integer partition: {self.parts}")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def set_partition_count(self) -> int:
        """Number of set partitions of ``{1..k}`` with these block sizes."""
        k = self.total
        denom = math.prod(math.factorial(m) for m in self.multiplicities().values())
        denom *= math.prod(math.factorial(b) for b in self.parts)
        return math.factorial(k) // denom


def integer_partitions(k: int) -> Iterator[IntegerPartition]:
    """Partitions of ``k`` in reverse lexicographic order, starting with ``(k,)``."""
    if k < 1:
        raise DomainError(f"integer partitions need k >= 1, got {k}")

    def rec(rest: int, cap: int):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for parts in rec(k, k):
        yield IntegerPartition(parts)


# -- symmetrized sums --------------------------------------------------------


def block_letter(w: Sequence[Letter], block: Sequence[int]) -> Letter:
    """``[a_i, i in block]`` with 1-based positions."""
    return bracket([w[i - 1] for i in block])


def permuted_words(letters: Sequence[Letter]) -> Iterator[Word]:
    """``sigma . w`` for every permutation sigma, repeats included."""
    for perm in itertools.permutations(letters):
        yield _raw_word(perm)


def _check_word(w: Sequence[Letter]) -> Word:
    w = Word(w)
    if not w:
        raise DomainError("symmetrization needs a nonempty word")
    return w


def symmetrize_A(w: Sequence[Letter], n: int) -> tuple[CyclotomicNumber, CyclotomicNumber]:
    """Both sides of ``sum_sigma A_{sigma.w}(n) = sum_B c(B) prod_t A_{[B_t]}(n)``."""
    w = _check_word(w)
    r = w.r
    lhs = CyclotomicNumber.rational(r, 0)
    for v in permuted_words(w):
        lhs = lhs + eval_A(v, n, r)
    rhs = CyclotomicNumber.rational(r, 0)
    for B in enumerate_set_partitions(len(w)):
        term = CyclotomicNumber.rational(r, c_coefficient(B))
        for b in B.blocks:
            term = term * eval_A(_raw_word([block_letter(w, b)]), n, r)
        rhs = rhs + term
    return lhs, rhs


def symmetrize_S(w: Sequence[Letter], n: int) -> tuple[CyclotomicNumber, CyclotomicNumber]:
    """Both sides of ``sum_sigma S_{sigma.w}(n) = sum_B |c(B)| prod_t A_{[B_t]}(n)``."""
    w = _check_word(w)
    r = w.r
    lhs = CyclotomicNumber.rational(r, 0)
    for v in permuted_words(w):
        lhs = lhs + eval_S(v, n, r)
    rhs = CyclotomicNumber.rational(r, 0)
    for B in enumerate_set_partitions(len(w)):
        term = CyclotomicNumber.rational(r, abs(c_coefficient(B)))
        for b in B.blocks:
            term = term * eval_A(_raw_word([block_letter(w, b)]), n, r)
        rhs = rhs + term
    return lhs, rhs


def symmetrized_words(w: Sequence[Letter], bar: bool = False) -> tuple[AlgebraElement, AlgebraElement]:
    """The algebra-level identity behind :func:`symmetrize_A` / :func:`symmetrize_S`.

    Returns ``(sum_sigma sigma.w, sum_B c(B) [B_1] * ... * [B_q])``; with
    ``bar=True`` the left side uses overlines and the weights ``|c(B)|``.
    """
    w = _check_word(w)
    r = w.r
    lhs = AlgebraElement.zero(r)
    for v in permuted_words(w):
        lhs = lhs + (overline(v) if bar else AlgebraElement.from_word(v))
    rhs = AlgebraElement.zero(r)
    for B in enumerate_set_partitions(len(w)):
        c = c_coefficient(B)
        factors = [_raw_word([block_letter(w, b)]) for b in B.blocks]
        rhs = rhs + star_all(factors, r).scale(abs(c) if bar else c)
    return lhs, rhs


def general_symmetrization(C: SetPartition, w: Sequence[Letter], n: int) -> tuple[CyclotomicNumber, CyclotomicNumber]:
    """Both sides of the symmetrization identity for an arbitrary partition ``C``.

    The left side permutes the block letters ``[C_1], ..., [C_p]``; the right
    side sums ``mu(B, C) rho_n([B_1] * ... * [B_q])`` over ``B <= C``, with the
    star product formed before evaluation.
    """
    w = _check_word(w)
    if C.size != len(w):
        raise DomainError(f"{C} does not partition the {len(w)} letter positions of {w}")
    r = w.r
    letters = [block_letter(w, c) for c in C.blocks]
    lhs = CyclotomicNumber.rational(r, 0)
    for v in permuted_words(letters):
        lhs = lhs + eval_A(v, n, r)
    rhs = CyclotomicNumber.rational(r, 0)
    for B in coarsenings_of(C):
        product = star_all([_raw_word([block_letter(w, b)]) for b in B.blocks], r)
        rhs = rhs + eval_A(product, n) * partition_mobius(B, C)
    return lhs, rhs


# -- powers of a single letter -------------------------------------------------


def _power_sum(a: Letter, k: int, n: int, signed: bool) -> CyclotomicNumber:
    if k < 1:
        raise DomainError(f"power sums need k >= 1, got {k}")
    r = a.r
    total = CyclotomicNumber.rational(r, 0)
    for lam in integer_partitions(k):
        weight = Fraction(1, math.prod(math.factorial(m) for m in lam.multiplicities().values()))
        term = None
        for b in lam.parts:
            weight /= b
            if signed and b % 2 == 0:
                weight = -weight
            value = eval_A(_raw_word([bracket([a] * b)]), n, r)
            term = value if term is None else term * value
        total = total + term * weight
    return total


def power_sum_S(a: Letter, k: int, n: int) -> CyclotomicNumber:
    """``S_{a^k}(n)`` from depth-one sums, summing over integer partitions of ``k``."""
    return _power_sum(a, k, n, signed=False)


@cache
def confirm_power_sum_A_signs(max_k: int = 5, max_n: int = 7) -> bool:
    """Check the signed power-sum formula against brute force on small cases.

    Sampled letters cover r = 1, 2, 3; the result is cached, so the check
    runs once per process.
    """
    from .harmonic import eval_A_bruteforce

    for a in (Letter(1, 0, 1), Letter(2, 0, 1), Letter(1, 1, 2), Letter(1, 2, 3), Letter(2, 1, 3)):
        for k in range(1, max_k + 1):
            for n in range(max_n + 1):
                if _power_sum(a, k, n, signed=True) != eval_A_bruteforce(_raw_word([a] * k), n):
                    return False
    return True


def power_sum_A(a: Letter, k: int, n: int) -> CyclotomicNumber:
    """``A_{a^k}(n)``: as :func:`power_sum_S` with a factor ``(-1)**(b-1)`` per part ``b``.

    Refuses to run unless :func:`confirm_power_sum_A_signs` passes.
    """
    if not confirm_power_sum_A_signs():
        raise RuntimeError("signed power-sum formula failed its brute-force confirmation")
    return _power_sum(a, k, n, signed=True)
