"""Seeded random generators for elements, quadruples, and expressions; used
by the self-test command and the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional

from .algebra import GroupAlgebraElement, ga_mul
from .criterion import Quadruple
from .expressions import Add, Expression, Inv, Leaf, Mul, Neg, ScalarMul
from .scalars import ExactComplex
from .words import GeneratorSet, ReducedWord, identity, multiply, generator


def random_word(rng: random.Random, gens: GeneratorSet, max_len: int) -> ReducedWord:
    w = identity(gens)
    for _ in range(rng.randint(0, max_len)):
        k = rng.randint(1, gens.rank)
        w = multiply(w, generator(gens, k if rng.random() < 0.5 else -k))
    return w


def random_scalar(rng: random.Random, allow_imaginary: bool = True) -> ExactComplex:
    def q():
        return Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2, 3]))

    im = q() if allow_imaginary and rng.random() < 0.3 else Fraction(0)
    return ExactComplex(q(), im)


def random_element(
    rng: random.Random,
    gens: GeneratorSet,
    max_terms: int = 2,
    max_len: int = 2,
    nonzero: bool = False,
) -> GroupAlgebraElement:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        terms[random_word(rng, gens, max_len)] = random_scalar(rng)
    el = GroupAlgebraElement(gens, terms)
    if nonzero and el.is_zero():
        w = random_word(rng, gens, max_len)
        el = GroupAlgebraElement(gens, {w: ExactComplex(1)})
    return el


def random_quadruple(rng: random.Random, gens: GeneratorSet, max_len: int = 2) -> Quadruple:
    """(s*z, z*t, s, t) for random nonzero s, t, z: always satisfies the
    defining identity with nonzero denominators."""
    s = random_element(rng, gens, max_terms=2, max_len=max_len, nonzero=True)
    t = random_element(rng, gens, max_terms=2, max_len=max_len, nonzero=True)
    z = random_element(rng, gens, max_terms=2, max_len=max_len, nonzero=True)
    return Quadruple(ga_mul(s, z), ga_mul(z, t), s, t)


def random_shared_denominator_pair(rng: random.Random, gens: GeneratorSet, max_len: int = 2):
    s = random_element(rng, gens, max_terms=2, max_len=max_len, nonzero=True)
    t = random_element(rng, gens, max_terms=2, max_len=max_len, nonzero=True)
    z1 = random_element(rng, gens, max_terms=2, max_len=max_len, nonzero=True)
    z2 = random_element(rng, gens, max_terms=2, max_len=max_len, nonzero=True)
    q1 = Quadruple(ga_mul(s, z1), ga_mul(z1, t), s, t)
    q2 = Quadruple(ga_mul(s, z2), ga_mul(z2, t), s, t)
    return q1, q2


def random_chained_pair(rng: random.Random, gens: GeneratorSet, max_len: int = 2):
    """Left-multiple chains p, p*d1, p*d1*d2 give valid chained quadruples
    q1 = (q, x, p, y), q2 = (r, y, q, z) with q2.s = q1.a, q2.b = q1.t."""
    p = random_element(rng, gens, max_terms=2, max_len=max_len, nonzero=True)
    d1 = random_element(rng, gens, max_terms=2, max_len=max_len, nonzero=True)
    d2 = random_element(rng, gens, max_terms=2, max_len=max_len, nonzero=True)
    z = random_element(rng, gens, max_terms=2, max_len=max_len, nonzero=True)
    q_el = ga_mul(p, d1)
    r_el = ga_mul(q_el, d2)
    y_el = ga_mul(d2, z)
    x_el = ga_mul(d1, y_el)
    q1 = Quadruple(q_el, x_el, p, y_el)
    q2 = Quadruple(r_el, y_el, q_el, z)
    return q1, q2


def random_positive_element(
    rng: random.Random, gens: GeneratorSet, max_terms: int = 2, max_len: int = 2
) -> GroupAlgebraElement:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        letters = tuple(rng.randint(1, gens.rank) for _ in range(rng.randint(1, max_len)))
        terms[ReducedWord(gens, letters)] = random_scalar(rng, allow_imaginary=False)
    return GroupAlgebraElement(gens, terms)


def random_expandable_expression(
    rng: random.Random, gens: GeneratorSet, depth: int = 2, allow_inv: bool = True
) -> Expression:
    """Random tree whose inverses are over 1 + (small positive part): always
    exactly expandable."""
    if depth <= 0 or rng.random() < 0.3:
        return Leaf(random_element(rng, gens, max_terms=2, max_len=1, nonzero=True))
    roll = rng.random()
    if roll < 0.3:
        return Add(
            random_expandable_expression(rng, gens, depth - 1, allow_inv),
            random_expandable_expression(rng, gens, depth - 1, allow_inv),
        )
    if roll < 0.55:
        return Mul(
            random_expandable_expression(rng, gens, depth - 1, allow_inv),
            random_expandable_expression(rng, gens, depth - 1, allow_inv),
        )
    if roll < 0.7:
        return Neg(random_expandable_expression(rng, gens, depth - 1, allow_inv))
    if roll < 0.8:
        return ScalarMul(random_scalar(rng), random_expandable_expression(rng, gens, depth - 1, allow_inv))
    if allow_inv:
        pos = random_positive_element(rng, gens, max_terms=2, max_len=2)
        one_plus = GroupAlgebraElement(
            gens, {**pos.terms, identity(gens): ExactComplex(1)}
        )
        return Inv(Leaf(one_plus))
    return Leaf(random_element(rng, gens, max_terms=2, max_len=1, nonzero=True))


def random_laurent_expression(rng: random.Random, gens: GeneratorSet, depth: int = 3) -> Expression:
    """Random rank-1 expression that is expandable and stays a nonzero
    fraction (inverses are over 1 + positive parts or nonzero monomials)."""
    assert gens.rank == 1
    return random_expandable_expression(rng, gens, depth)
