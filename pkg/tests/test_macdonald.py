import itertools
from fractions import Fraction

import pytest

from charlab.demazure import ebar, invert_variables, local_weyl_character, thin_character
from charlab.macdonald import (
    biorthogonal_family,
    ct_product,
    edag_inverted,
    finite_positive_factor,
    global_weyl_character,
    kernel_t0,
    pair_ext,
    pair_sym,
    slice_character,
    slice_norm,
    symmetric_kernel_t0,
    upper_set,
)
from charlab.root_datum import (
    AffineWeight,
    build_datum,
    finite_form,
    macdonald_geq,
    neg_roots_upto,
    order_key_alt,
    orbit,
    weights_in_box,
    weyl_group_order,
)
from charlab.series import CharSeries, PrecisionError, QSeries


def real_roots_by_reflection(datum, max_half, finite_bound=2):
    """Real affine roots from the Weyl orbit of the simple roots, inside a window."""
    seen = set(datum.simple_roots)
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for i in range(datum.rank + 1):
                b = datum.reflect(i, a)
                if b in seen or abs(b.q_half()) > max_half:
                    continue
                if any(abs(c) > finite_bound for c in b.finite):
                    continue
                seen.add(b)
                nxt.append(b)
        frontier = nxt
    return seen


@pytest.mark.parametrize("rank", [1, 2])
def test_negative_real_roots_match_reflection_orbit(rank):
    d = build_datum(rank)
    window = 6
    orbit_roots = real_roots_by_reflection(d, window + 4)
    negatives = set()
    for a in orbit_roots:
        # negative: delta-coefficient below zero, or zero with negative finite part
        c = -a.q_half()  # delta-coefficient in half units
        if -window <= c < 0 or (c == 0 and a not in _positive_finite(rank)):
            negatives.add((a.finite, c))
    listed = {(r.finite, r.delta_half) for r in neg_roots_upto(rank, window) if not r.is_imaginary}
    assert listed == negatives


def _positive_finite(rank):
    from charlab.root_datum import finite_positive_roots

    return {AffineWeight.make(r) for r in finite_positive_roots(rank)}


def test_kernel_lowest_part_rank_one():
    k = kernel_t0(1, 6)
    assert k.graded_pieces()[0] == {(0,): 1, (-2,): -1}


@pytest.mark.parametrize("rank", [1, 2])
def test_kernel_constant_term(rank):
    ct = kernel_t0(rank, 16).x_coefficient((0,) * rank)
    assert ct.equal_through(QSeries.constant(1), 16)
    assert ct.max_half == 16


def test_kernel_windows_are_consistent():
    small, big = kernel_t0(2, 6), kernel_t0(2, 10)
    assert big.truncate(6) == small


def test_symmetric_kernel_is_product():
    for rank in (1, 2):
        sym = symmetric_kernel_t0(rank, 6)
        assert sym == kernel_t0(rank, 6) * finite_positive_factor(rank)
        # the q^0 part is the finite Weyl denominator, invariant under x -> 1/x
        p0 = sym.graded_pieces()[0]
        assert p0 == {tuple(-c for c in x): v for x, v in p0.items()}


def test_pair_trivial():
    one = CharSeries.one(1)
    assert pair_ext(one, one, 10).equal_through(QSeries.constant(1), 10)
    s = pair_sym(one, one, 6)
    assert s.coeff(0) == 2  # |W| for rank one


def test_pair_errors():
    one = CharSeries.one(1)
    with pytest.raises(ValueError):
        pair_ext(one, CharSeries.one(1, level=1), 4)
    with pytest.raises(PrecisionError):
        pair_ext(one, one.truncate(4), 4)


def test_pair_window_follows_left_argument():
    d = build_datum(1)
    s = slice_character(d, (1,), 8)
    val = pair_ext(s, thin_character(d, (1,)))
    assert val.max_half is not None and val.max_half <= s.max_half


def test_ct_product_matches_full_product():
    f = CharSeries.from_terms(1, [(((1,), 0), 2), (((-1,), 1), 3), (((0,), 2), -1)])
    g = kernel_t0(1, 6)
    assert ct_product(f, g) == (f * g).x_coefficient((0,))


def test_upper_set():
    assert upper_set((0, 0)) == [(0, 0)]
    ups = upper_set((-1, 0))
    assert ups[0] == (0, 0) and ups[-1] == (-1, 0)
    assert all(macdonald_geq(mu, (-1, 0)) for mu in ups)


# frozen rank-one norms, CT(ebar * edag_inverted * kernel)
RANK_ONE_NORMS = {
    (0,): {0: 1},
    (1,): {0: 1},
    (-1,): {0: 1, 2: -1},
    (2,): {0: 1, 2: -1},
    (-2,): {0: 1, 2: -1, 4: -1, 6: 1},
}


@pytest.mark.parametrize("lam", sorted(RANK_ONE_NORMS))
def test_rank_one_norms(lam):
    n = slice_norm(build_datum(1), lam, 12)
    assert n.truncate(12).terms() == RANK_ONE_NORMS[lam]


def test_slice_of_zero_is_unit():
    for rank in (1, 2):
        s = slice_character(build_datum(rank), (0,) * rank, 12)
        assert s.first_difference(CharSeries.one(rank, level=1), s.max_half) is None


@pytest.mark.parametrize("rank,bound,window", [(1, 2, 12), (2, 1, 12)])
def test_joint_solve_reproduces_ebar(rank, bound, window):
    d = build_datum(rank)
    fam = biorthogonal_family(d, bound, window)
    for lam in weights_in_box(rank, bound):
        e = fam.ebar[lam]
        assert e.first_difference(ebar(d, lam), e.max_half or window) is None
        a = fam.edag_inverted[lam]
        b = edag_inverted(d, lam, window)
        assert a.first_difference(b, min(a.max_half or window, b.max_half or window)) is None


def test_joint_solve_independent_of_order_refinement():
    d = build_datum(2)
    f1 = biorthogonal_family(d, 2, 8)
    f2 = biorthogonal_family(d, 2, 8, key=order_key_alt)
    assert f1.order != f2.order
    for lam in f1.order:
        for fam in ("ebar", "edag_inverted"):
            a, b = getattr(f1, fam)[lam], getattr(f2, fam)[lam]
            top = min(h for h in (a.max_half, b.max_half, 8) if h is not None)
            assert a.first_difference(b, top) is None


def test_edag_is_monic_and_triangular():
    d = build_datum(2)
    for lam in weights_in_box(2, 1):
        a = edag_inverted(d, lam, 10)
        assert a.x_coefficient(lam).truncate(8).terms() == {0: 1}
        for x in a.x_support():
            assert macdonald_geq(x, lam)


@pytest.mark.parametrize("rank,bound", [(1, 2), (2, 1)])
def test_biorthogonality(rank, bound):
    d = build_datum(rank)
    box = weights_in_box(rank, bound)
    for lam, mu in itertools.product(box, repeat=2):
        val = pair_ext(slice_character(d, lam, 16), thin_character(d, mu), 12)
        assert val.equal_through(QSeries.constant(int(lam == mu)), 12)


@pytest.mark.parametrize("rank,bound", [(1, 2), (2, 1)])
def test_slice_coefficients_nonnegative(rank, bound):
    d = build_datum(rank)
    for lam in weights_in_box(rank, bound):
        s = slice_character(d, lam, 12)
        h = int(finite_form(lam, lam))
        assert s.coeff(lam, h) == 1
        assert all(c >= 0 and Fraction(c).denominator == 1 for _, c in s.terms())


def test_global_weyl_examples():
    d = build_datum(1)
    assert global_weyl_character(d, (0,), 10) == slice_character(d, (0,), 10)
    g = global_weyl_character(d, (1,), 10)
    assert g == slice_character(d, (1,), 10) + slice_character(d, (-1,), 10)
    with pytest.raises(ValueError):
        global_weyl_character(d, (-1,), 10)


def test_global_weyl_is_invariant_in_low_degree():
    from charlab.demazure import is_finite_weyl_invariant

    d = build_datum(2)
    g = global_weyl_character(d, (1, 0), 12)
    top = g.max_half
    assert is_finite_weyl_invariant(g.truncate(top))


@pytest.mark.parametrize("rank", [1, 2])
def test_symmetric_orthogonality_of_local_weyl(rank):
    # q-inverted local Weyl characters are orthogonal for the symmetric pairing
    d = build_datum(rank)
    doms = [lam for lam in weights_in_box(rank, 2) if lam == tuple(sorted(map(abs, lam), reverse=True))]
    doms = doms[:4]
    polys = {lam: invert_variables(local_weyl_character(d, lam)) for lam in doms}
    w = weyl_group_order(rank)
    for a, b in itertools.product(doms, repeat=2):
        val = pair_sym(polys[a], polys[b], 10)
        if a != b:
            assert val.equal_through(QSeries(), 10)
        else:
            assert val.coeff(0) == w
            # diagonal equals |W| times the slice norm of the lowest weight
            n = slice_norm(d, tuple(-c for c in a), 14)
            assert val.equal_through(n.scale(w), 10)


def test_local_weyl_relates_to_ebar():
    d = build_datum(2)
    for lam in [(0, 0), (1, 0), (1, 1), (2, 1)]:
        low = tuple(-c for c in lam)
        assert invert_variables(local_weyl_character(d, lam)) == ebar(d, low)


def test_orbit_sum_sizes():
    d = build_datum(2)
    g = global_weyl_character(d, (1, 1), 10)
    # each orbit element contributes its extremal monomial with coefficient one
    for mu in orbit((1, 1)):
        assert g.coeff(mu, int(finite_form(mu, mu))) >= 1
