import itertools
import math
from fractions import Fraction

import pytest

from eulerhopf.cyclotomic import CyclotomicNumber
from eulerhopf.errors import DomainError
from eulerhopf.harmonic import eval_A, eval_A_bruteforce, eval_S, eval_S_bruteforce
from eulerhopf.symmetric import (
    IntegerPartition,
    SetPartition,
    c_coefficient,
    coarsenings_of,
    confirm_power_sum_A_signs,
    enumerate_set_partitions,
    general_symmetrization,
    integer_partitions,
    partition_mobius,
    power_sum_A,
    power_sum_S,
    refines,
    symmetrize_A,
    symmetrize_S,
    symmetrized_words,
)
from eulerhopf.words import EMPTY, Letter, Word, word, words_up_to


def bell(k):
    # oracle: Bell numbers by the binomial recurrence
    b = [1]
    for m in range(k):
        b.append(sum(math.comb(m, t) * b[t] for t in range(m + 1)))
    return b[k]


def P(*blocks):
    return SetPartition(tuple(tuple(b) for b in blocks))


# -- set partitions ----------------------------------------------------------------------


def test_set_partition_validation():
    assert P([2, 3], [1]).blocks == ((1,), (2, 3))
    with pytest.raises(DomainError):
        P([1, 2], [2, 3])
    with pytest.raises(DomainError):
        P([1], [3])


@pytest.mark.parametrize("k", range(1, 9))
def test_bell_counts(k):
    parts = list(enumerate_set_partitions(k))
    assert len(parts) == len(set(parts)) == bell(k)
    assert all(p.size == k for p in parts)


def test_enumeration_range():
    assert len(list(enumerate_set_partitions(3))) == 5
    assert len(list(enumerate_set_partitions(5))) == 52
    with pytest.raises(DomainError):
        list(enumerate_set_partitions(0))
    with pytest.raises(DomainError):
        list(enumerate_set_partitions(11))


def test_enumeration_is_deterministic():
    assert list(enumerate_set_partitions(4)) == list(enumerate_set_partitions(4))


def test_c_coefficient_examples():
    assert c_coefficient(SetPartition.singletons(4)) == 1
    assert c_coefficient(SetPartition.single_block(2)) == -1
    assert c_coefficient(SetPartition.single_block(3)) == 2
    assert c_coefficient(P([1, 3], [2], [4])) == -1


def test_refinement_orientation():
    top = SetPartition.singletons(3)
    bottom = SetPartition.single_block(3)
    assert refines(bottom, top) and not refines(top, bottom)
    assert refines(P([1, 2], [3]), top)
    assert not refines(P([1, 2], [3]), P([1, 3], [2]))


def brute_mobius(k):
    # oracle: Moebius function of the lattice from its defining recurrence
    parts = list(enumerate_set_partitions(k))
    mu = {}
    for C in parts:
        below = sorted((B for B in parts if refines(B, C)), key=len, reverse=True)
        for B in below:
            if B == C:
                mu[B, C] = 1
            else:
                mu[B, C] = -sum(mu[D, C] for D in below if D != B and refines(B, D) and (D, C) in mu)
    return mu


@pytest.mark.parametrize("k", range(1, 5))
def test_mobius_matches_recurrence(k):
    for (B, C), value in brute_mobius(k).items():
        assert partition_mobius(B, C) == value, (B, C)


@pytest.mark.parametrize("k", range(1, 5))
def test_mobius_chain_sums_vanish(k):
    parts = list(enumerate_set_partitions(k))
    for B, C in itertools.product(parts, parts):
        if B != C and refines(B, C):
            assert sum(partition_mobius(D, C) for D in parts if refines(B, D) and refines(D, C)) == 0


def test_mobius_examples_and_errors():
    B = P([1, 2])
    assert partition_mobius(B, B) == 1
    assert partition_mobius(B, SetPartition.singletons(2)) == -1
    for Bp in enumerate_set_partitions(4):
        assert partition_mobius(Bp, SetPartition.singletons(4)) == c_coefficient(Bp)
    with pytest.raises(DomainError):
        partition_mobius(SetPartition.singletons(2), B)


def test_coarsenings_of():
    C = P([1, 2], [3])
    got = set(coarsenings_of(C))
    assert got == {C, SetPartition.single_block(3)}
    assert len(list(coarsenings_of(SetPartition.singletons(4)))) == bell(4)


# -- integer partitions ------------------------------------------------------------------------


def test_integer_partitions():
    assert [p.parts for p in integer_partitions(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [len(list(integer_partitions(k))) for k in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]
    with pytest.raises(DomainError):
        IntegerPartition((1, 2))


@pytest.mark.parametrize("k", range(1, 7))
def test_block_count_identity(k):
    by_shape = {}
    for B in enumerate_set_partitions(k):
        shape = tuple(sorted(B.block_sizes(), reverse=True))
        by_shape[shape] = by_shape.get(shape, 0) + 1
    for lam in integer_partitions(k):
        assert lam.set_partition_count() == by_shape[lam.parts]


# -- symmetrized sums ---------------------------------------------------------------------------


def test_symmetrize_examples():
    z10 = word((1, 0), (1, 0))
    lhs, rhs = symmetrize_A(z10, 2)
    assert lhs == rhs == 1
    lhs, rhs = symmetrize_S(z10, 2)
    assert lhs == rhs == Fraction(7, 2)
    a = word((2, 1), r=3)
    assert symmetrize_A(a, 4) == (eval_A(a, 4), eval_A(a, 4))
    lhs, rhs = symmetrize_S(word((1, 1), (1, 0), r=2), 4)
    w = word((1, 1), (1, 0), r=2)
    assert lhs == rhs == eval_S_bruteforce(w, 4) + eval_S_bruteforce(word((1, 0), (1, 1), r=2), 4)
    with pytest.raises(DomainError):
        symmetrize_A(EMPTY, 3)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_symmetrize_all_small_words(r):
    for w in words_up_to(5, r, 3):
        if not w:
            continue
        for n in (0, 3, 6):
            assert symmetrize_A(w, n)[0] == symmetrize_A(w, n)[1]
            assert symmetrize_S(w, n)[0] == symmetrize_S(w, n)[1]


def test_symmetrize_three_letters_oracle():
    w = word((1, 1), (2, 0), (1, 2), r=3)
    lhs, rhs = symmetrize_A(w, 6)
    oracle = sum((eval_A_bruteforce(Word(p), 6) for p in itertools.permutations(w)), CyclotomicNumber.rational(3, 0))
    assert lhs == rhs == oracle


def test_symmetrized_words_identity():
    for w in words_up_to(4, 2, 3):
        if not w:
            continue
        for bar in (False, True):
            lhs, rhs = symmetrized_words(w, bar)
            assert lhs == rhs, (w, bar)


def test_general_symmetrization():
    w = word((1, 1), (2, 0), (1, 2), r=3)
    single = general_symmetrization(SetPartition.single_block(3), w, 5)
    assert single[0] == single[1]
    C = P([1, 2], [3])
    lhs, rhs = general_symmetrization(C, w, 5)
    assert lhs == rhs
    for n in (0, 2, 5):
        assert general_symmetrization(SetPartition.singletons(3), w, n) == symmetrize_A(w, n)
    for C in enumerate_set_partitions(4):
        v = word((1, 0), (1, 1), (2, 0), (1, 1), r=2)
        lhs, rhs = general_symmetrization(C, v, 6)
        assert lhs == rhs, C
    with pytest.raises(DomainError):
        general_symmetrization(SetPartition.singletons(2), w, 3)


# -- power sums ---------------------------------------------------------------------------------


def test_power_sum_examples():
    a = Letter(1, 0, 1)
    assert power_sum_S(a, 1, 5) == eval_A(Word([a]), 5)
    assert power_sum_S(a, 2, 2) == Fraction(7, 4)
    assert power_sum_A(a, 2, 2) == Fraction(1, 2)
    b = Letter(1, 1, 2)
    assert power_sum_S(b, 3, 5) == eval_S_bruteforce(Word([b] * 3), 5)
    assert power_sum_A(a, 4, 6) == eval_A_bruteforce(Word([a] * 4), 6)
    with pytest.raises(DomainError):
        power_sum_S(a, 0, 3)


def test_sign_gate_passes():
    assert confirm_power_sum_A_signs() is True


@pytest.mark.parametrize("a", [Letter(1, 0, 1), Letter(2, 0, 1), Letter(1, 1, 2), Letter(1, 2, 3), Letter(3, 1, 4)])
def test_power_sums_match_direct_evaluation(a):
    for k in range(1, 6):
        for n in range(0, 11):
            assert power_sum_S(a, k, n) == eval_S(Word([a] * k), n)
            assert power_sum_A(a, k, n) == eval_A(Word([a] * k), n)


def test_unsigned_formula_would_fail_for_A():
    # the sign pattern matters: the unsigned weights give S, not A
    a = Letter(1, 0, 1)
    assert power_sum_S(a, 2, 3) != eval_A(Word([a, a]), 3)
