"""Self-checks shared by the command line and the test suite.

Every check returns an :class:`Outcome`.  A failing outcome carries the first
offending coefficient as ``detail``.  Checks raise
:class:`~charlab.series.PrecisionError` when the working window is too small
to decide the requested range.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .demazure import (
    is_finite_weyl_invariant,
    local_weyl_character,
    thin_character,
    vacuum_character,
)
from .macdonald import (
    global_weyl_character,
    kernel_t0,
    pair_ext,
    slice_character,
)
from .root_datum import (
    RootDatum,
    dominant_rep,
    finite_form,
    hull_member,
    is_dominant,
    cone_member_qprime_plus,
    macdonald_geq,
    neg_roots_upto,
    signed_permutations,
    apply_signed_permutation,
    weights_in_box,
)
from .series import CharSeries, PrecisionError, QSeries
from .special_current import h_from_p, h_symbol, p_expansion, p_symbol
from .weyl import all_min_words, apply_word, pi_lambda, translation_weight

__all__ = [
    "Outcome",
    "check_demazure",
    "check_local_symmetry",
    "check_biorthogonality",
    "check_weyl_orthogonality",
    "check_vacuum_sum",
    "check_kernel",
    "check_order_and_hull",
    "check_pseries",
    "check_realization",
]


@dataclass
class Outcome:
    name: str
    ok: bool
    checked: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f": {self.detail}" if self.detail else ""
        return f"{status} {self.name} ({self.checked} checks){tail}"


def _fail(name: str, checked: int, detail: str) -> Outcome:
    return Outcome(name, False, checked, detail)


def _scalar_diff(got: QSeries, want: int, max_half: int) -> str | None:
    if got.max_half is not None and got.max_half < max_half:
        raise PrecisionError(
            f"pairing known only through q^({got.max_half}/2), need q^({max_half}/2)"
        )
    for h in range(got.min_half, max_half + 1):
        expect = want if h == 0 else 0
        if got.coeff(h) != expect:
            return f"coefficient of q^({h}/2) is {got.coeff(h)}, expected {expect}"
    if want and got.min_half > 0:
        return f"coefficient of q^0 is 0, expected {want}"
    return None


def check_demazure(datum: RootDatum, bound: int) -> Outcome:
    """Thin characters: nonnegative integers, extremal coefficient 1, word independence."""
    name = "demazure"
    n = 0
    for lam in weights_in_box(datum.rank, bound):
        f = thin_character(datum, lam)
        n += 1
        for (x, h), c in f.terms():
            if c < 0 or Fraction(c).denominator != 1:
                return _fail(name, n, f"lambda={lam}: coefficient {c} at x^{x} q^({h}/2)")
        h0 = int(finite_form(lam, lam))
        if f.coeff(lam, h0) != 1:
            return _fail(name, n, f"lambda={lam}: extremal coefficient {f.coeff(lam, h0)}")
        for w in all_min_words(datum, lam):
            n += 1
            g = thin_character(datum, lam, word=w)
            if g != f:
                (x, h), a, b = f.first_difference(g, max(f.q_degrees() + g.q_degrees()))
                return _fail(name, n, f"lambda={lam}, word {w}: x^{x} q^({h}/2) {a} vs {b}")
    return Outcome(name, True, n)


def check_local_symmetry(datum: RootDatum, bound: int) -> Outcome:
    name = "local-weyl-symmetry"
    n = 0
    for lam in weights_in_box(datum.rank, bound):
        if not is_dominant(lam):
            continue
        n += 1
        if not is_finite_weyl_invariant(local_weyl_character(datum, lam)):
            return _fail(name, n, f"local Weyl character of {lam} is not invariant")
    return Outcome(name, True, n)


def check_biorthogonality(datum: RootDatum, bound: int, max_half: int, work_half: int) -> Outcome:
    """``<slice(lam), thin(mu)> = delta`` through ``q^(max_half/2)``."""
    name = "biorthogonality"
    box = weights_in_box(datum.rank, bound)
    n = 0
    for lam in box:
        s = slice_character(datum, lam, work_half)
        for mu in box:
            n += 1
            got = pair_ext(s, thin_character(datum, mu), max_half)
            d = _scalar_diff(got, int(lam == mu), max_half)
            if d:
                return _fail(name, n, f"<slice{lam}, thin{mu}>: {d}")
    return Outcome(name, True, n)


def _lowest_thin(datum: RootDatum, mu: tuple) -> CharSeries:
    # local Weyl character moved back to level one: the thin character of -mu
    return local_weyl_character(datum, mu).shift(
        (0,) * datum.rank, int(finite_form(mu, mu)), level=1
    )


def check_weyl_orthogonality(
    datum: RootDatum, bound: int, max_half: int, work_half: int
) -> Outcome:
    """``<global(lam), shifted local(mu)> = delta`` for dominant weights of the box."""
    name = "weyl-orthogonality"
    dom = [lam for lam in weights_in_box(datum.rank, bound) if is_dominant(lam)]
    n = 0
    for lam in dom:
        g = global_weyl_character(datum, lam, work_half)
        for mu in dom:
            n += 1
            got = pair_ext(g, _lowest_thin(datum, mu), max_half)
            d = _scalar_diff(got, int(lam == mu), max_half)
            if d:
                return _fail(name, n, f"<global{lam}, local{mu}>: {d}")
    return Outcome(name, True, n)


def vacuum_weights(rank: int, energy: int) -> list[tuple]:
    """All weights with ``(lam|lam)/2 <= energy``."""
    r = int((2 * energy) ** 0.5) + 1
    return [lam for lam in weights_in_box(rank, r) if finite_form(lam, lam) <= 2 * energy]


def check_vacuum_sum(datum: RootDatum, energy: int, work_half: int) -> Outcome:
    """Slices with ``(lam|lam)/2 <= energy`` sum to the vacuum character through ``q^(energy-1)``."""
    name = "vacuum-sum"
    target = 2 * (energy - 1)
    total = CharSeries.zero(datum.rank, level=1)
    weights = vacuum_weights(datum.rank, energy)
    for lam in weights:
        total = total + slice_character(datum, lam, work_half)
    if total.max_half is not None and total.max_half < target:
        raise PrecisionError(
            f"slice sum known only through q^({total.max_half}/2), need q^({target}/2)"
        )
    vac = vacuum_character(datum.rank, target)
    diff = total.first_difference(vac, target)
    if diff:
        (x, h), a, b = diff
        return _fail(name, len(weights), f"x^{x} q^({h}/2): slices give {a}, vacuum {b}")
    return Outcome(name, True, len(weights))


def check_kernel(datum: RootDatum, max_half: int) -> Outcome:
    """Constant term of the kernel is 1, and the slice of 0 is the unit character."""
    name = "kernel-normalization"
    ct = kernel_t0(datum.rank, max_half).x_coefficient((0,) * datum.rank)
    d = _scalar_diff(ct, 1, max_half)
    if d:
        return _fail(name, 1, f"constant term: {d}")
    s = slice_character(datum, (0,) * datum.rank, max_half)
    one = CharSeries.one(datum.rank, level=1)
    top = s.max_half if s.max_half is not None else max_half
    diff = s.first_difference(one, top)
    if diff:
        (x, h), a, b = diff
        return _fail(name, 2, f"slice of 0 at x^{x} q^({h}/2): {a}")
    return Outcome(name, True, 2)


def check_order_and_hull(rank: int, bound: int) -> Outcome:
    """Partial-order axioms and the hull inclusion on a box, exhaustively."""
    name = "order-hull"
    box = weights_in_box(rank, bound)
    geq = {(a, b): macdonald_geq(a, b) for a in box for b in box}
    n = 0
    for a in box:
        n += 1
        if not geq[a, a]:
            return _fail(name, n, f"not reflexive at {a}")
    for a, b in itertools.combinations(box, 2):
        n += 1
        if geq[a, b] and geq[b, a]:
            return _fail(name, n, f"not antisymmetric: {a}, {b}")
    for a in box:
        ups = [b for b in box if geq[b, a]]
        for b in ups:
            for c in box:
                if geq[c, b]:
                    n += 1
                    if not geq[c, a]:
                        return _fail(name, n, f"not transitive: {c} >= {b} >= {a}")
    group = list(signed_permutations(rank))
    for mu in box:
        top, _ = dominant_rep(mu)
        for x in weights_in_box(rank, max((abs(c) for c in mu), default=0)):
            if not hull_member(mu, x):
                continue
            for g in group:
                n += 1
                y = apply_signed_permutation(g, x)
                if not cone_member_qprime_plus(tuple(t - s for t, s in zip(top, y))):
                    return _fail(name, n, f"hull point {x} of {mu}: {top} - {y} outside the cone")
    return Outcome(name, True, n)


def check_pseries(rank: int, smax: int) -> Outcome:
    """The ``h -> p -> h`` substitution is the identity through degree ``smax``."""
    name = "pseries"
    n = 0
    for i in range(1, rank + 1):
        hp = h_from_p(rank, i, smax)
        pe = p_expansion(rank, i, smax)
        sub = {p_symbol(i, r): pe[r] for r in range(1, smax + 1)}
        for s in range(1, smax + 1):
            n += 1
            back = sympy.expand(hp[s].subs(sub, simultaneous=True))
            if back != h_symbol(i, s):
                return _fail(name, n, f"node {i}, degree {s}: got {back}")
            if hp[s].coeff(p_symbol(i, s)) == 0:
                return _fail(name, n, f"node {i}, degree {s}: p_{i},{s} missing")
    return Outcome(name, True, n)


def check_realization(datum: RootDatum, bound: int) -> Outcome:
    """Cartan data, null root, and the translation identity on a box."""
    name = "realization"
    n = 0
    l = datum.rank
    d = datum.delta()
    for i, row in enumerate(datum.cartan):
        n += 1
        if row[i] != 2 or any(row[j] > 0 for j in range(l + 1) if j != i):
            return _fail(name, n, f"Cartan row {i}: {row}")
        for j in range(l + 1):
            exact = 2 * datum.bilinear(datum.simple_roots[i], datum.simple_roots[j])
            if exact / datum.sq_lengths[i] != row[j]:
                return _fail(name, n, f"Cartan entry ({i},{j}) is not integral")
        n += 1
        if datum.pair_coroot(d, i) != 0:
            return _fail(name, n, f"<delta, coroot {i}> != 0")
    n += 2
    if datum.bilinear(d, d) != 0:
        return _fail(name, n, "(delta|delta) != 0")
    a0 = datum.simple_roots[0]
    if datum.bilinear(a0, a0) != 1:
        return _fail(name, n, f"(alpha_0|alpha_0) = {datum.bilinear(a0, a0)}")
    n += 1
    imag = [r for r in neg_roots_upto(l, 8) if r.is_imaginary]
    if not imag or any(r.multiplicity != l for r in imag):
        return _fail(name, n, "imaginary multiplicity differs from the rank")
    for lam in weights_in_box(l, bound):
        n += 1
        got = apply_word(datum, pi_lambda(datum, lam), datum.lambda0())
        if got != translation_weight(lam):
            return _fail(name, n, f"translation identity fails at {lam}: {got}")
    return Outcome(name, True, n)
