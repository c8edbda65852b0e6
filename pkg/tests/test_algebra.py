import itertools

import pytest
from hypothesis import given, settings, strategies as st

from eulerhopf.algebra import (
    AlgebraElement,
    antipode,
    antipode_by_products,
    antipode_via_compositions,
    coproduct,
    counit,
    overline,
    overline_from_products,
    overline_star,
    reverse_linear,
    star,
    tensor,
    word_from_overlines,
)
from eulerhopf.errors import DomainError
from eulerhopf.words import EMPTY, Letter, Word, bracket, enumerate_compositions, word, words_up_to


def quasi_shuffle_oracle(u, v, r):
    """Closed-form quasi-shuffle: sum over pairs of increasing maps covering 1..m."""
    out = {}
    p, q = len(u), len(v)
    for m in range(max(p, q), p + q + 1):
        for S in itertools.combinations(range(m), p):
            rest = [k for k in range(m) if k not in S]
            need = q - len(rest)
            if need < 0:
                continue
            for extra in itertools.combinations(S, need):
                T = sorted(rest + list(extra))
                letters = []
                iu = dict(zip(S, u))
                iv = dict(zip(T, v))
                for k in range(m):
                    present = [x for x in (iu.get(k), iv.get(k)) if x is not None]
                    letters.append(bracket(present))
                w = Word(letters)
                out[w] = out.get(w, 0) + 1
    return AlgebraElement(out, r)


def E(w, r=None):
    return AlgebraElement.from_word(w, r)


def letters(r):
    return st.builds(lambda i, j: Letter(i, j % r, r), st.integers(1, 3), st.integers(0, r - 1))


def words_st(r, max_len=4):
    return st.lists(letters(r), max_size=max_len).map(Word)


def elements_st(r, max_len=3):
    return st.dictionaries(words_st(r, max_len), st.integers(-3, 3), max_size=3).map(
        lambda d: AlgebraElement(d, r))


# -- product -------------------------------------------------------------------------


def test_worked_product_r3():
    r = 3
    got = star(word((1, 1), r=r), word((1, 2), (2, 1), r=r))
    expected = AlgebraElement({
        word((1, 1), (1, 2), (2, 1), r=r): 1,
        word((1, 2), (1, 1), (2, 1), r=r): 1,
        word((1, 2), (2, 1), (1, 1), r=r): 1,
        word((1, 2), (3, 2), r=r): 1,
        word((2, 0), (2, 1), r=r): 1,
    })
    assert got == expected


def test_unit_and_square():
    w = word((1, 0), (2, 0))
    assert star(AlgebraElement.one(1), w) == E(w)
    assert star(w, EMPTY) == E(w)
    z1 = word((1, 0))
    assert star(z1, z1) == AlgebraElement({word((1, 0), (1, 0)): 2, word((2, 0)): 1})


def test_mismatched_r():
    with pytest.raises(DomainError):
        star(word((1, 0), r=2), word((1, 0), r=3))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_star_matches_oracle_exhaustively(r):
    pool = words_up_to(3, r, 3)
    for u in pool:
        for v in pool:
            assert star(u, v) == quasi_shuffle_oracle(u, v, r), (u, v)


@settings(max_examples=60, deadline=None)
@given(words_st(3), words_st(3))
def test_star_matches_oracle_random(u, v):
    assert (u or v) and star(u, v) == quasi_shuffle_oracle(u, v, 3) or not (u or v)


@settings(max_examples=40, deadline=None)
@given(elements_st(2), elements_st(2), elements_st(2))
def test_commutative_associative(x, y, t):
    assert star(x, y) == star(y, x)
    assert star(star(x, y), t) == star(x, star(y, t))
    assert star(x, y + t) == star(x, y) + star(x, t)


@settings(max_examples=40, deadline=None)
@given(words_st(3), words_st(3))
def test_grading(u, v):
    assert {w.degree for w in star(E(u, 3), E(v, 3)).terms} == {u.degree + v.degree}


# -- coalgebra ---------------------------------------------------------------------------


def test_coproduct_examples():
    one = AlgebraElement.one(2)
    a, b = word((1, 1), r=2), word((2, 0), r=2)
    assert coproduct(one) == tensor(one, one)
    assert coproduct(a) == tensor(E(a), one) + tensor(one, E(a))
    ab = a + b
    assert coproduct(ab) == tensor(E(ab), one) + tensor(E(a), E(b)) + tensor(one, E(ab))


def test_counit():
    assert counit(AlgebraElement.one(1)) == 1
    assert counit(word((1, 0))) == 0
    x = AlgebraElement({EMPTY: 3, word((1, 0)): 2}, 1)
    assert counit(x) == 3


def _ident(r):
    return lambda w: E(w, r)


@pytest.mark.parametrize("r", [1, 2])
def test_coassociativity_and_counit(r):
    ident = _ident(r)
    delta = lambda w: coproduct(E(w, r))  # noqa: E731
    for w in [EMPTY] + words_up_to(5, r, 4):
        d = coproduct(E(w, r))
        assert d.apply([delta, ident]) == d.apply([ident, delta])
        assert d.apply([counit, ident]).element() == E(w, r)
        assert d.apply([ident, counit]).element() == E(w, r)


# -- antipode ------------------------------------------------------------------------------


def test_antipode_examples():
    a = word((2, 1), r=3)
    assert antipode(AlgebraElement.one(3)) == AlgebraElement.one(3)
    assert antipode(a) == -E(a)
    w = word((1, 0), (2, 0))
    expected = AlgebraElement({word((2, 0), (1, 0)): 1, word((3, 0)): 1})
    assert antipode_by_products(w) == expected
    assert antipode_via_compositions(w) == expected
    assert antipode(w) == expected
    w3 = word((1, 0), (2, 1), (1, 1), r=2)
    s3 = antipode_via_compositions(w3)
    assert all(c == -1 for c in s3.terms.values()) and len(s3) == 4


@pytest.mark.parametrize("r", [1, 2, 3])
def test_two_antipode_formulas_agree(r):
    for w in words_up_to(6, r, 4):
        assert antipode_by_products(w) == antipode_via_compositions(w), w


@pytest.mark.parametrize("r", [1, 2])
def test_antipode_axiom(r):
    ident = _ident(r)
    S = lambda w: antipode(w, r)  # noqa: E731
    for w in [EMPTY] + words_up_to(5, r, 4):
        d = coproduct(E(w, r))
        unit = AlgebraElement.one(r).scale(counit(E(w, r)))
        assert d.apply([S, ident]).contract() == unit
        assert d.apply([ident, S]).contract() == unit


@settings(max_examples=40, deadline=None)
@given(elements_st(3), elements_st(3))
def test_antipode_involutive_and_multiplicative(x, y):
    assert antipode(antipode(x)) == x
    assert antipode(star(x, y)) == star(antipode(x), antipode(y))


# -- reversal ---------------------------------------------------------------------------------


def test_reverse_linear():
    one = AlgebraElement.one(3)
    assert reverse_linear(one) == one
    u, v = word((1, 1), r=3), word((1, 2), (2, 1), r=3)
    assert reverse_linear(star(u, v)) == star(reverse_linear(E(u)), reverse_linear(E(v)))


@settings(max_examples=40, deadline=None)
@given(elements_st(3), elements_st(3))
def test_reverse_is_multiplicative(x, y):
    assert reverse_linear(reverse_linear(x)) == x
    assert reverse_linear(star(x, y)) == star(reverse_linear(x), reverse_linear(y))


def test_reversal_reverses_the_coproduct():
    # Delta R = flip (R x R) Delta; without the flip the identity fails once the word has two different letters
    r = 2
    R = lambda w: reverse_linear(w, r)  # noqa: E731
    for w in words_up_to(5, r, 4):
        d = coproduct(E(w))
        assert coproduct(reverse_linear(E(w))) == d.apply([R, R]).flip()
    ab = word((1, 0), (2, 0), r=r)
    assert coproduct(reverse_linear(E(ab))) != coproduct(E(ab)).apply([R, R])


# -- overline --------------------------------------------------------------------------------


def test_overline_examples():
    a, b = Letter(1, 1, 2), Letter(2, 1, 2)
    assert overline(Word([a])) == E(Word([a]))
    assert overline(Word([a, b])) == E(Word([a, b])) + E(Word([bracket([a, b])]))
    assert overline(word((1, 0), (1, 0))) == AlgebraElement({word((1, 0), (1, 0)): 1, word((2, 0)): 1})
    assert overline(AlgebraElement.one(2)) == AlgebraElement.one(2)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_overline_identities(r):
    for w in words_up_to(5, r, 4):
        sign = -1 if len(w) % 2 else 1
        assert overline(w) == antipode(reverse_linear(E(w))).scale(sign)
        assert overline_from_products(w) == overline(w)
        assert word_from_overlines(w) == E(w)


def test_overline_star_examples():
    z1 = word((1, 0))
    assert overline_star(AlgebraElement.one(1), z1) == E(z1)
    assert overline_star(z1, z1) == AlgebraElement({word((1, 0), (1, 0)): 2, word((2, 0)): -1})
    a, b = Letter(1, 1, 3), Letter(2, 2, 3)
    expected = AlgebraElement({Word([a, b]): 1, Word([b, a]): 1, Word([bracket([a, b])]): -1})
    assert overline_star(Word([a]), Word([b])) == expected


@settings(max_examples=60, deadline=None)
@given(words_st(3), words_st(3))
def test_overline_star_consistent_with_star(u, v):
    if not (u or v):
        return
    assert overline(overline_star(u, v)) == star(overline(u, 3), overline(v, 3))


def test_element_arithmetic():
    x = AlgebraElement({word((1, 0)): 2, word((2, 0)): -1})
    assert x - x == AlgebraElement.zero(1)
    assert not (x - x)
    assert 2 * x == x + x
    assert x * 3 == x.scale(3)
    assert str(AlgebraElement.zero(2)) == "0"
    assert str(x) == "2 z[1,0] - z[2,0]"


def test_compositions_drive_antipode_length():
    for n in range(1, 6):
        w = Word(Letter(1, 0, 1) for _ in range(n))
        total = sum(abs(c) for c in antipode_via_compositions(w).terms.values())
        assert total == len(enumerate_compositions(n))
