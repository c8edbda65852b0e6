"""Property suites that machine-check the algebraic identities.

Each suite walks all words up to a degree and length bound (exhaustive
checks) plus a batch of seeded random pairs (sampled checks).  Sampling uses
:class:`LinearCongruential`, a fixed 64-bit generator, so a given seed gives
the same report on every platform.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .algebra import (
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
    word_from_overlines,
)
from .harmonic import (
    a_from_s_by_compositions,
    a_from_s_expansion,
    duality_reduction,
    eval_A,
    eval_A_bruteforce,
    eval_S,
    eval_S_bruteforce,
    product_expansion_A,
    product_expansion_S,
    s_from_a_by_compositions,
    s_from_a_expansion,
)
from .symmetric import (
    enumerate_set_partitions,
    general_symmetrization,
    power_sum_A,
    power_sum_S,
    symmetrize_A,
    symmetrize_S,
    symmetrized_words,
)
from .words import (
    EMPTY,
    Letter,
    Word,
    enumerate_words,
    is_lyndon,
    lyndon_count,
    reverse,
    words_up_to,
)


class LinearCongruential:
    """Knuth's MMIX generator: ``x -> (6364136223846793005 x + 1442695040888963407) mod 2**64``.

    Outputs are the top 31 bits of the state.
    """

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.MULTIPLIER * self.state + self.INCREMENT) & self.MASK
        return self.state >> 33

    def below(self, n: int) -> int:
        return self.next() % n

    def choice(self, seq):
        return seq[self.below(len(seq))]


@dataclass
class VerifyConfig:
    r: int
    max_degree: int = 6
    max_length: int = 4
    max_n: int = 8
    seed: int = 0
    samples: int = 50


@dataclass
class Failure:
    check: str
    inputs: str
    lhs: str
    rhs: str

    def as_dict(self) -> dict:
        return {"check": self.check, "inputs": self.inputs, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class SuiteReport:
    suite: str
    cases: int = 0
    failures: list[Failure] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, name: str, inputs, lhs, rhs) -> bool:
        self.cases += 1
        if lhs == rhs:
            return True
        self.failures.append(Failure(name, str(inputs), str(lhs), str(rhs)))
        return False

    def as_dict(self) -> dict:
        # wall time is left out so reports for a fixed seed are reproducible
        return {
            "suite": self.suite,
            "cases": self.cases,
            "failures": [f.as_dict() for f in self.failures],
        }


def _words(cfg: VerifyConfig) -> list[Word]:
    return words_up_to(cfg.max_degree, cfg.r, cfg.max_length)


def sample_tuples(rng: LinearCongruential, pool: list[Word], count: int, size: int,
                  max_total_degree: int) -> list[tuple[Word, ...]]:
    """Draw ``count`` tuples from ``pool``, rejecting those above the degree budget."""
    if not any(w.degree * size <= max_total_degree for w in pool):
        return []
    out = []
    while len(out) < count:
        picked = tuple(rng.choice(pool) for _ in range(size))
        if sum(w.degree for w in picked) <= max_total_degree:
            out.append(picked)
    return out


def _pairs(cfg: VerifyConfig, pool: list[Word], count: int, salt: int = 0) -> list[tuple[Word, ...]]:
    return sample_tuples(LinearCongruential(cfg.seed + salt), pool, count, 2, cfg.max_degree + 2)


def _elt(w: Word, r: int) -> AlgebraElement:
    return AlgebraElement.from_word(w, r)


def hopf_axioms(w: Word, r: int, report: SuiteReport) -> None:
    """Coassociativity, counit laws, antipode axioms and reversal vs coproduct for one word."""
    x = _elt(w, r)

    def ident(v):
        return _elt(v, r)

    def delta(v):
        return coproduct(_elt(v, r))

    def S(v):
        return antipode(v, r)

    def R(v):
        return reverse_linear(v, r)

    d = coproduct(x)
    report.check("coassociativity", w, d.apply([delta, ident]), d.apply([ident, delta]))
    report.check("left counit", w, d.apply([counit, ident]).element(), x)
    report.check("right counit", w, d.apply([ident, counit]).element(), x)
    unit = AlgebraElement.one(r).scale(counit(x))
    report.check("antipode (S x id)", w, d.apply([S, ident]).contract(), unit)
    report.check("antipode (id x S)", w, d.apply([ident, S]).contract(), unit)
    report.check("coproduct reverses under R", w, coproduct(reverse_linear(x)), d.apply([R, R]).flip())


def suite_hopf(cfg: VerifyConfig) -> SuiteReport:
    report = SuiteReport("hopf")
    r = cfg.r
    pool = _words(cfg)
    for w in [EMPTY] + pool:
        hopf_axioms(w, r, report)
    for u, v in _pairs(cfg, pool, cfg.samples):
        uv = star(u, v)
        report.check("commutativity", (u, v), uv, star(v, u))
        report.check("reversal is multiplicative", (u, v), reverse_linear(uv),
                     star(reverse_linear(_elt(u, r)), reverse_linear(_elt(v, r))))
        report.check("grading", (u, v), {t.degree for t in uv.terms}, {u.degree + v.degree})
    rng = LinearCongruential(cfg.seed + 1)
    for u, v, t in sample_tuples(rng, pool, cfg.samples, 3, cfg.max_degree + 2):
        report.check("associativity", (u, v, t), star(star(u, v), t), star(u, star(v, t)))
    for n in range(2, min(cfg.max_degree, 6) + 1):
        count = sum(1 for w in enumerate_words(n, r) if is_lyndon(w))
        report.check("lyndon count", (n, r), count, lyndon_count(n, r))
    return report


def suite_antipode(cfg: VerifyConfig) -> SuiteReport:
    report = SuiteReport("antipode")
    r = cfg.r
    pool = _words(cfg)
    for w in pool:
        s = antipode(w, r)
        report.check("two antipode formulas", w, antipode_by_products(w, r), antipode_via_compositions(w, r))
        report.check("antipode is an involution", w, antipode(s), _elt(w, r))
        sign = -1 if len(w) % 2 else 1
        report.check("overline = (-1)^l S R", w, overline(w, r), antipode(reverse(w), r).scale(sign))
        report.check("overline from products", w, overline_from_products(w, r), overline(w, r))
        report.check("word from overlines", w, word_from_overlines(w, r), _elt(w, r))
    for u, v in _pairs(cfg, pool, cfg.samples):
        report.check("antipode is multiplicative", (u, v), antipode(star(u, v)),
                     star(antipode(u, r), antipode(v, r)))
        report.check("overline product rule", (u, v), overline(overline_star(u, v)),
                     star(overline(u, r), overline(v, r)))
    return report


def suite_homomorphism(cfg: VerifyConfig) -> SuiteReport:
    report = SuiteReport("homomorphism")
    pool = _words(cfg)
    for u, v in _pairs(cfg, pool, cfg.samples):
        uv = star(u, v)
        for n in range(cfg.max_n + 1):
            report.check("rho_n(u*v) = rho_n(u) rho_n(v)", (u, v, n),
                         eval_A(uv, n), eval_A(u, n, cfg.r) * eval_A(v, n, cfg.r))
    return report


def suite_duality(cfg: VerifyConfig) -> SuiteReport:
    report = SuiteReport("duality")
    r = cfg.r
    for w in _words(cfg):
        exps = [a.i for a in w]
        args = [a.j for a in w]
        expansions = [
            ("S from A", eval_S, s_from_a_expansion(w, r)),
            ("A from S", eval_A, a_from_s_expansion(w, r)),
            ("S as products of A", eval_S, product_expansion_S(w, r)),
            ("A as products of S", eval_A, product_expansion_A(w, r)),
        ]
        reduction = duality_reduction(w, r) if len(w) >= 2 else None
        if reduction is not None:
            report.check("reduction lowers length", w, reduction.rhs.max_length() < len(w), True)
        # the two conversions compose to the identity on the formal level
        back = AlgebraElement.zero(r)
        for c, (v,) in a_from_s_expansion(w, r).terms:
            back = back + overline(v, r).scale(c)
        report.check("A<->S round trip", w, back, _elt(w, r))
        for n in range(cfg.max_n + 1):
            a_val = eval_A(w, n, r)
            s_val = eval_S(w, n, r)
            report.check("A vs brute force", (w, n), a_val, eval_A_bruteforce(w, n, r))
            report.check("S vs brute force", (w, n), s_val, eval_S_bruteforce(w, n, r))
            report.check("S_I(X) by compositions", (w, n), s_from_a_by_compositions(exps, args, n, r), s_val)
            report.check("A_I(X) by compositions", (w, n), a_from_s_by_compositions(exps, args, n, r), a_val)
            for name, f, expr in expansions:
                report.check(name, (w, n), expr.evaluate(n), f(w, n, r))
            if reduction is not None:
                lhs, rhs = reduction.sides(n)
                report.check("duality reduction", (w, n), lhs, rhs)
    return report


def suite_symmetric(cfg: VerifyConfig) -> SuiteReport:
    report = SuiteReport("symmetric")
    r = cfg.r
    pool = _words(cfg)
    n = cfg.max_n
    for w in pool:
        report.check("symmetrized A", (w, n), *symmetrize_A(w, n))
        report.check("symmetrized S", (w, n), *symmetrize_S(w, n))
        report.check("symmetrized words", w, *symmetrized_words(w))
        report.check("symmetrized overlines", w, *symmetrized_words(w, bar=True))
    letters = [Letter(i, j, r) for i in (1, 2) for j in range(r)]
    for a in letters:
        for k in range(1, 6):
            for m in range(cfg.max_n + 1):
                report.check("power sum S", (a, k, m), power_sum_S(a, k, m), eval_S(Word([a] * k), m, r))
                report.check("power sum A", (a, k, m), power_sum_A(a, k, m), eval_A(Word([a] * k), m, r))
    short = [w for w in pool if 2 <= len(w) <= 3]
    rng = LinearCongruential(cfg.seed + 2)
    for _ in range(min(cfg.samples, len(short))):
        w = rng.choice(short)
        for C in enumerate_set_partitions(len(w)):
            report.check("general symmetrization", (C, w, n), *general_symmetrization(C, w, n))
    return report


SUITES: dict[str, Callable[[VerifyConfig], SuiteReport]] = {
    "hopf": suite_hopf,
    "antipode": suite_antipode,
    "homomorphism": suite_homomorphism,
    "duality": suite_duality,
    "symmetric": suite_symmetric,
}


def run_suites(names: Iterable[str], cfg: VerifyConfig) -> list[SuiteReport]:
    reports = []
    for name in names:
        start = time.perf_counter()
        report = SUITES[name](cfg)
        report.wall_time = time.perf_counter() - start
        reports.append(report)
    return reports
