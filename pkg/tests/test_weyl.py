from fractions import Fraction

import pytest

from charlab.root_datum import AffineWeight, build_datum, lambda0, weights_in_box
from charlab.weyl import (
    SearchBudgetExceeded,
    all_min_words,
    apply_word,
    order_compatibility_check,
    pi_lambda,
    translation_weight,
)


def test_apply_word_examples():
    d = build_datum(1)
    mu = AffineWeight.make((1,), 2, Fraction(3, 2))
    assert apply_word(d, [], mu) == mu
    assert apply_word(d, [0], lambda0(1)) == AffineWeight.make((1,), 1, Fraction(1, 2))
    for i in range(2):
        assert apply_word(d, [i, i], mu) == mu


def test_pi_lambda_rank_one():
    d = build_datum(1)
    assert pi_lambda(d, (0,)) == []
    assert pi_lambda(d, (1,)) == [0]
    assert pi_lambda(d, (-1,)) == [1, 0]
    assert pi_lambda(d, (2,)) == [0, 1, 0]


def test_min_words():
    d = build_datum(2)
    assert all_min_words(d, (0, 0)) == [[]]
    words = all_min_words(d, (-1, -1))
    assert len(words) == 2
    assert len({len(w) for w in words}) == 1
    assert pi_lambda(d, (-1, -1)) in words


@pytest.mark.parametrize("l", [1, 2])
def test_translation_identity(l):
    d = build_datum(l)
    for lam in weights_in_box(l, 3):
        w = pi_lambda(d, lam)
        assert apply_word(d, w, lambda0(l)) == translation_weight(lam)
        for v in all_min_words(d, lam):
            assert len(v) == len(w)
            assert apply_word(d, v, lambda0(l)) == translation_weight(lam)


def test_lengths_grow_with_energy():
    # a minimal word is never shorter than any minimal word for a weight of lower energy
    d = build_datum(1)
    lengths = {lam: len(pi_lambda(d, lam)) for lam in weights_in_box(1, 4)}
    assert [lengths[(k,)] for k in (0, 1, -1, 2, -2, 3, -3)] == [0, 1, 2, 3, 4, 5, 6]


def test_budget():
    d = build_datum(1)
    with pytest.raises(SearchBudgetExceeded):
        pi_lambda(d, (3,), energy_bound=1)


def test_order_compatibility():
    assert order_compatibility_check(build_datum(1), sample_size=0).checked == 0
    first = order_compatibility_check(build_datum(1), sample_size=1)
    assert first.ok and first.checked == 1
    report = order_compatibility_check(build_datum(2), max_depth=5)
    assert report.ok and report.checked > 0
