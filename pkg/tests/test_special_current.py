import itertools
import math

import pytest
import sympy
from hypothesis import given, strategies as st

from charlab.special_current import (
    a_lambda_generators,
    a_lambda_hilbert,
    dim_local_weyl_special,
    free_rank_report,
    h_from_p,
    h_symbol,
    p_expansion,
    p_symbol,
)


@pytest.mark.parametrize(
    "labels,dim",
    [((0, 0), 1), ((1, 0), 5), ((0, 1), 4), ((0, 2), 10), ((1, 1), 20), ((1,), 2), ((2,), 3)],
)
def test_dimension_table(labels, dim):
    assert dim_local_weyl_special(labels) == dim


@given(st.lists(st.integers(0, 4), min_size=1, max_size=4))
def test_adding_two_last_labels_multiplies_by_middle_binomial(labels):
    l = len(labels)
    bumped = labels[:-1] + [labels[-1] + 2]
    assert dim_local_weyl_special(bumped) == dim_local_weyl_special(labels) * math.comb(2 * l + 1, l)


def test_branches():
    # odd branch m_l = 2k - 1 and even branch m_l = 2m at l = 3
    assert dim_local_weyl_special((1, 0, 3)) == 7 * math.comb(7, 3) * 2**3
    assert dim_local_weyl_special((0, 2, 4)) == math.comb(7, 2) ** 2 * math.comb(7, 3) ** 2


def test_big_integers_are_exact():
    assert dim_local_weyl_special((50, 0, 0)) == 7**50


def test_invalid_labels():
    with pytest.raises(ValueError):
        dim_local_weyl_special((1, -1))
    with pytest.raises(ValueError):
        a_lambda_generators(())


def test_generators():
    assert a_lambda_generators((0, 1)) == []
    assert a_lambda_generators((0, 2)) == [(2, 1)]
    assert a_lambda_generators((1, 0)) == [(1, 1)]
    assert a_lambda_generators((2, 5)) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def partitions_oracle(parts, n):
    """Count multisets from ``parts`` (a list with repeats) summing to ``n`` by enumeration."""
    count = 0
    ranges = [range(n // p + 1) for p in parts]
    for mult in itertools.product(*ranges):
        if sum(m * p for m, p in zip(mult, parts)) == n:
            count += 1
    return count


def test_hilbert_examples():
    assert a_lambda_hilbert((0, 1), 5).terms() == {0: 1}
    assert a_lambda_hilbert((1, 0), 4).terms() == {0: 1, 2: 1, 4: 1, 6: 1, 8: 1}
    assert a_lambda_hilbert((2, 0), 4).coeff(4) == 2


@given(st.lists(st.integers(0, 3), min_size=1, max_size=3))
def test_hilbert_against_enumeration(labels):
    gens = a_lambda_generators(labels)
    h = a_lambda_hilbert(labels, 6)
    for n in range(7):
        assert h.coeff(2 * n) == partitions_oracle([r for _, r in gens], n)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=3), st.integers(0, 2))
def test_hilbert_monotone_in_labels(labels, i):
    i = min(i, len(labels) - 1)
    bigger = list(labels)
    bigger[i] += 1
    a, b = a_lambda_hilbert(labels, 6), a_lambda_hilbert(bigger, 6)
    assert all(b.coeff(2 * n) >= a.coeff(2 * n) >= 0 for n in range(7))


def test_p_expansion_low_degree():
    p = p_expansion(2, 1, 3)
    assert p[0] == 1
    assert p[1] == -h_symbol(1, 1)
    q = p_expansion(2, 2, 3)
    assert q[1] == h_symbol(2, 1)
    assert q[2] == h_symbol(2, 1) ** 2 / 2 - h_symbol(2, 2) / 4


def test_p_expansion_is_exponential():
    # compare with a direct series expansion of exp for the middle node of rank 3
    z = sympy.Symbol("z")
    g = sum(-h_symbol(1, s) / s * z**s for s in range(1, 6))
    direct = sympy.series(sympy.exp(g), z, 0, 6).removeO()
    p = p_expansion(3, 1, 5)
    for r in range(6):
        assert sympy.expand(direct.coeff(z, r) - p[r]) == 0
    gl = sum(
        (h_symbol(3, s) / s if s % 2 else -h_symbol(3, s) / (2 * s)) * z**s for s in range(1, 6)
    )
    direct = sympy.series(sympy.exp(gl), z, 0, 6).removeO()
    p = p_expansion(3, 3, 5)
    for r in range(6):
        assert sympy.expand(direct.coeff(z, r) - p[r]) == 0


def test_h_from_p_low_degree():
    assert h_from_p(2, 1, 1)[1] == -p_symbol(1, 1)
    assert h_from_p(2, 2, 1)[1] == p_symbol(2, 1)


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_round_trip(rank):
    for i in range(1, rank + 1):
        hp = h_from_p(rank, i, 8)
        pe = p_expansion(rank, i, 8)
        back_sub = {h_symbol(i, s): hp[s] for s in range(1, 9)}
        for s in range(1, 9):
            assert hp[s].coeff(p_symbol(i, s)) != 0
            got = sympy.expand(hp[s].subs({p_symbol(i, r): pe[r] for r in range(1, 9)}, simultaneous=True))
            assert got == h_symbol(i, s)
            # the other direction: p in terms of h in terms of p
            assert sympy.expand(pe[s].subs(back_sub, simultaneous=True)) == p_symbol(i, s)


def test_report():
    rep = free_rank_report((0, 2), 3)
    assert rep["lambda"] == [0, 2]
    assert rep["rank"] == "10"
    assert rep["generators"] == [[2, 1]]
    assert rep["hilbert"]["terms"][0] == {"q_half": 0, "coeff": "1"}
    assert free_rank_report((0, 0), 3)["rank"] == "1"
    assert free_rank_report((0, 1), 3)["generators"] == []
