import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from charlab.demazure import (
    LOWERING,
    RAISING,
    apply_operators,
    demazure_op,
    ebar,
    finite_weyl_images,
    is_finite_weyl_invariant,
    local_weyl_character,
    thin_character,
    vacuum_character,
)
from charlab.root_datum import AffineWeight, build_datum, finite_form, weights_in_box
from charlab.series import CharSeries
from charlab.weyl import all_min_words

Q = sympy.Symbol("Q")  # q^(1/2)


def to_sympy(f: CharSeries):
    xs = sympy.symbols(f"x0:{f.rank}")
    return sum(
        sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        * Q**h
        * sympy.Mul(*[v**e for v, e in zip(xs, x)])
        for (x, h), c in f.terms()
    )


def division_oracle(datum, i, f: CharSeries):
    """``(f - X^{-alpha} s_i f) / (1 - X^{-alpha})`` by literal polynomial division."""
    xs = sympy.symbols(f"x0:{f.rank}")
    alpha = datum.simple_roots[i]
    reflected = CharSeries.from_terms(
        f.rank,
        (
            ((w.finite, w.q_half()), c)
            for (x, h), c in f.terms()
            for w in [datum.reflect(i, AffineWeight.make(x, f.level, Fraction(h, 2)))]
        ),
        f.level,
    )
    neg = (-alpha).q_half()
    mono = Q**neg * sympy.Mul(*[v ** (-int(a)) for v, a in zip(xs, alpha.finite)])
    num = to_sympy(f) - mono * to_sympy(reflected)
    return sympy.cancel(num / (1 - mono))


def random_level_one(rng, rank, n=3):
    terms = []
    for _ in range(n):
        x = tuple(rng.randint(-2, 2) for _ in range(rank))
        h = sum(c * c for c in x) + 2 * rng.randint(0, 2)  # integral pairings with alpha_0
        terms.append(((x, h), rng.randint(-2, 3)))
    return CharSeries.from_terms(rank, terms, 1)


@pytest.mark.parametrize("rank", [1, 2])
def test_operator_matches_polynomial_division(rank):
    d = build_datum(rank)
    rng = random.Random(rank)
    for _ in range(15):
        f = random_level_one(rng, rank)
        for i in range(rank + 1):
            got = to_sympy(demazure_op(d, i, f))
            assert sympy.expand(got - division_oracle(d, i, f)) == 0


def test_operator_string_cases():
    d = build_datum(1)
    one = CharSeries.one(1, level=1)
    # n = 1: string of length two
    assert sorted(demazure_op(d, 0, one).terms()) == [(((0,), 0), 1), (((1,), 1), 1)]
    # n = -1 gives zero: x^{-1} pairs to -1 with the coroot of alpha_1
    f = CharSeries.monomial(1, (-1,), 0, 1, 1)
    assert demazure_op(d, 1, f).is_zero()
    # n = -2: minus the interior
    g = CharSeries.monomial(1, (-2,), 0, 1, 1)
    assert list(demazure_op(d, 1, g).terms()) == [(((0,), 0), -1)]


@pytest.mark.parametrize("rank", [1, 2])
def test_operators_are_idempotent(rank):
    d = build_datum(rank)
    rng = random.Random(10 + rank)
    for _ in range(10):
        f = random_level_one(rng, rank)
        for i in range(rank + 1):
            once = demazure_op(d, i, f)
            assert demazure_op(d, i, once) == once


def test_braid_relations_rank_two():
    d = build_datum(2)
    rng = random.Random(5)
    for _ in range(5):
        f = random_level_one(rng, 2, 2)
        for i, j in [(0, 1), (1, 2)]:
            assert apply_operators(d, [i, j, i, j], f) == apply_operators(d, [j, i, j, i], f)
    # nodes 0 and 2 commute
    f = random_level_one(rng, 2, 2)
    assert apply_operators(d, [0, 2], f) == apply_operators(d, [2, 0], f)


def test_raising_form_fails_calibration():
    d = build_datum(1)
    assert demazure_op(d, 0, CharSeries.one(1, level=1), RAISING).is_zero()
    assert not demazure_op(d, 0, CharSeries.one(1, level=1), LOWERING).is_zero()


def test_thin_examples():
    d = build_datum(1)
    assert thin_character(d, (0,)) == CharSeries.one(1, level=1)
    assert sorted(thin_character(d, (1,)).terms()) == [(((0,), 0), 1), (((1,), 1), 1)]
    assert sorted(thin_character(d, (-1,)).terms()) == [
        (((-1,), 1), 1),
        (((0,), 0), 1),
        (((1,), 1), 1),
    ]


@pytest.mark.parametrize("rank,bound", [(1, 3), (2, 2)])
def test_thin_characters_nonnegative_and_word_independent(rank, bound):
    d = build_datum(rank)
    for lam in weights_in_box(rank, bound):
        f = thin_character(d, lam)
        assert f.is_exact and f.level == 1
        assert all(c > 0 and Fraction(c).denominator == 1 for _, c in f.terms())
        assert f.coeff(lam, int(finite_form(lam, lam))) == 1
        # the extremal term has the largest q-degree
        assert max(f.q_degrees()) == int(finite_form(lam, lam))
        for w in all_min_words(d, lam):
            assert thin_character(d, lam, word=w) == f


def test_thin_dimensions_rank_one():
    # x = q = 1 gives the dimension
    # lambda = 2 by hand: 1 + q^(1/2)(x + 1/x) + q + q^(3/2) x + q^2 x^2
    d = build_datum(1)
    dims = [sum(c for _, c in thin_character(d, (k,)).terms()) for k in (0, 1, -1, 2, -2)]
    assert dims == [1, 2, 3, 6, 9]


def test_local_weyl_examples():
    d = build_datum(1)
    assert local_weyl_character(d, (0,)) == CharSeries.one(1)
    f = local_weyl_character(d, (1,))
    assert sorted(f.terms()) == [(((-1,), 0), 1), (((0,), -1), 1), (((1,), 0), 1)]
    with pytest.raises(ValueError):
        local_weyl_character(d, (-1,))


@pytest.mark.parametrize("rank,bound", [(1, 3), (2, 2)])
def test_local_weyl_invariant(rank, bound):
    d = build_datum(rank)
    for lam in weights_in_box(rank, bound):
        if lam == tuple(sorted((abs(c) for c in lam), reverse=True)):
            f = local_weyl_character(d, lam)
            assert is_finite_weyl_invariant(f)
            assert f.coeff(lam, 0) == 1


def test_local_weyl_dimensions_rank_two():
    d = build_datum(2)
    assert local_weyl_character(d, (1, 0)).eval_x_one().terms() == {-1: 1, 0: 4}
    assert sum(local_weyl_character(d, (1, 1)).eval_x_one().terms().values()) == 10


def test_weyl_images():
    assert sorted(set(finite_weyl_images((1, 0)))) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert not is_finite_weyl_invariant(CharSeries.monomial(1, (1,)))


def test_vacuum_low_terms():
    v = vacuum_character(1, 8)
    assert v.coeff((0,), 0) == 1
    assert v.x_coefficient((0,)).coeff(2) == 1
    assert {x for x in v.graded_pieces()[1]} == {(1,), (-1,)}
    assert v.level == 1 and v.max_half == 8


def test_vacuum_against_direct_product():
    # theta function times prod (1-q^n)^{-l}, expanded by brute force for l = 2
    v = vacuum_character(2, 8)
    direct = CharSeries.zero(2, level=1)
    for lam in weights_in_box(2, 3):
        h = int(finite_form(lam, lam))
        if h <= 8:
            direct = direct + CharSeries.monomial(2, lam, h, 1, 1)
    eta = CharSeries.one(2).truncate(8)
    for n in (1, 2, 3, 4):
        geom = CharSeries.from_terms(2, [(((0, 0), 2 * n * k), 1) for k in range(0, 5)], 0)
        eta = eta * geom * geom
    assert (direct * eta).truncate(8) == v


def test_ebar_examples():
    d = build_datum(1)
    assert ebar(d, (0,)) == CharSeries.one(1)
    assert sorted(ebar(d, (1,)).terms()) == [(((-1,), 0), 1), (((0,), 1), 1)]


@given(st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
@settings(max_examples=25, deadline=None)
def test_ebar_is_monic_and_triangular(lam):
    from charlab.root_datum import macdonald_gt

    d = build_datum(2)
    e = ebar(d, lam)
    neg = tuple(-c for c in lam)
    assert e.x_coefficient(neg).terms() == {0: 1}
    for x in e.x_support():
        mu = tuple(-c for c in x)
        assert mu == lam or macdonald_gt(mu, lam)
