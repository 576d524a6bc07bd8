"""The ``t = 0`` kernel, constant-term pairings and Demazure-slice characters.

The pairing of two characters is the constant term (in ``x``) of
``f * star(g) * C`` where ``C`` is the product of ``(1 - X^alpha)^mult`` over
all negative roots.  Slice characters are the dual family to thin Demazure
characters under this pairing; they are obtained by a triangular solve
against the Macdonald order.

Two polynomial families take part in the solve:

``ebar(lam)``
    read off from the thin character; extremal monomial ``X^{-lam}``, all
    other monomials ``X^{-mu}`` with ``mu`` above ``lam``.
``edag_inverted(lam)``
    the dual polynomial written in inverted variables; monic at ``X^lam``
    with all other monomials ``X^mu`` for ``mu`` above ``lam``.

They satisfy ``CT(ebar(mu) * edag_inverted(lam) * C) = 0`` for ``mu != lam``.
The slice character is ``q^{(lam|lam)/2} edag_inverted(lam) / norm(lam)`` at
level one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .demazure import ebar
from .root_datum import (
    RootDatum,
    finite_form,
    finite_positive_roots,
    is_dominant,
    macdonald_geq,
    neg_roots_upto,
    order_key,
    orbit,
    weights_in_box,
)
from .series import CharSeries, PrecisionError, QSeries, _product_max, solve_linear, star

__all__ = [
    "kernel_t0",
    "symmetric_kernel_t0",
    "finite_positive_factor",
    "ct_product",
    "pair_ext",
    "pair_sym",
    "upper_set",
    "edag_inverted",
    "slice_norm",
    "slice_character",
    "global_weyl_character",
    "BiorthogonalFamily",
    "biorthogonal_family",
]


@lru_cache(maxsize=None)
def kernel_t0(rank: int, max_half: int) -> CharSeries:
    """``prod_{alpha negative} (1 - X^alpha)^{mult}`` known through ``q^(max_half/2)``."""
    f = CharSeries.one(rank).truncate(max_half)
    one = CharSeries.one(rank)
    for root in neg_roots_upto(rank, max_half):
        factor = one - CharSeries.monomial(rank, root.finite, -root.delta_half)
        for _ in range(root.multiplicity):
            f = f * factor
    return f


def finite_positive_factor(rank: int) -> CharSeries:
    """``prod_{alpha finite positive} (1 - X^alpha)``, exact."""
    f = CharSeries.one(rank)
    for r in finite_positive_roots(rank):
        f = f * (CharSeries.one(rank) - CharSeries.monomial(rank, r))
    return f


@lru_cache(maxsize=None)
def symmetric_kernel_t0(rank: int, max_half: int) -> CharSeries:
    """Product over all roots with nonpositive ``delta``-coefficient."""
    return kernel_t0(rank, max_half) * finite_positive_factor(rank)


def ct_product(f: CharSeries, g: CharSeries) -> QSeries:
    """Constant term in ``x`` of ``f * g`` without forming the whole product."""
    if f.rank != g.rank:
        raise ValueError("rank mismatch")
    top = _product_max(f.min_half, f.max_half, g.min_half, g.max_half)
    lo = f.min_half + g.min_half
    if top is not None and top < lo:
        raise PrecisionError("pairing window is empty")
    if len(g.q_degrees()) < len(f.q_degrees()):
        f, g = g, f
    gp = g.graded_pieces()
    gdeg = sorted(gp)
    out: dict[int, object] = {}
    for a, p in f.graded_pieces().items():
        for b in gdeg:
            h = a + b
            if top is not None and h > top:
                break
            r = gp[b]
            acc = 0
            for x, c in p.items():
                d = r.get(tuple(-i for i in x))
                if d:
                    acc += c * d
            if acc:
                out[h] = out.get(h, 0) + acc
    return QSeries(out, lo, top)


def pair_ext(f: CharSeries, g: CharSeries, max_half: int | None = None) -> QSeries:
    """``CT(f * star(g) * C)``.

    ``g`` must be exact (a finite character).  Levels of ``f`` and ``g`` must
    agree.  The kernel is expanded far enough to determine the result through
    ``max_half`` (default: as far as ``f`` allows); if ``f`` is too short for
    that, the returned window is smaller and callers should check it.
    """
    if f.level != g.level:
        raise ValueError(f"levels differ ({f.level} vs {g.level})")
    if not g.is_exact:
        raise PrecisionError("the right argument must be a finite character")
    h = f * star(g)
    if max_half is None:
        if h.max_half is None:
            raise ValueError("both arguments are exact; give a target window")
        max_half = h.max_half
    need = max(max_half - h.min_half, 0)
    return ct_product(h, kernel_t0(f.rank, need)).truncate(max_half)


def pair_sym(f: CharSeries, g: CharSeries, max_half: int) -> QSeries:
    """``CT(f * g * Delta)`` with ``Delta`` the product over ``alpha(d) <= 0``."""
    h = f * g
    need = max(max_half - h.min_half, 0)
    return ct_product(h, symmetric_kernel_t0(f.rank, need)).truncate(max_half)


def upper_set(lam: Sequence, key: Callable = order_key) -> list[tuple]:
    """All ``mu`` with ``mu >= lam`` in the Macdonald order, largest first."""
    lam = tuple(lam)
    bound = max((abs(c) for c in lam), default=0)
    ups = [mu for mu in weights_in_box(len(lam), bound) if macdonald_geq(mu, lam)]
    return sorted(ups, key=key)


def _neg(x: Sequence) -> tuple:
    return tuple(-c for c in x)


@lru_cache(maxsize=None)
def _ebar_kernel(datum: RootDatum, mu: tuple, max_half: int) -> CharSeries:
    return ebar(datum, mu) * kernel_t0(datum.rank, max_half)


def _monomial_sum(rank: int, lead: tuple, coeffs: dict) -> CharSeries:
    data: dict[int, dict] = {0: {lead: 1}}
    lo, top = 0, None
    for x, s in coeffs.items():
        for h, c in s.terms().items():
            data.setdefault(h, {})[x] = data.get(h, {}).get(x, 0) + c
        lo = min(lo, s.min_half)
        if s.max_half is not None:
            top = s.max_half if top is None else min(top, s.max_half)
    return CharSeries(rank, data, 0, lo, top)


@lru_cache(maxsize=None)
def edag_inverted(datum: RootDatum, lam: tuple, max_half: int) -> CharSeries:
    """The dual polynomial of ``lam`` in inverted variables, through ``q^(max_half/2)``.

    Monic at ``X^lam`` with remaining support strictly above ``lam``; fixed
    by ``CT(ebar(mu) * result * C) = 0`` for every ``mu`` strictly above ``lam``.
    """
    lam = tuple(lam)
    above = [mu for mu in upper_set(lam) if mu != lam]
    if not above:
        return CharSeries.one(datum.rank).shift(lam)
    rows = [_ebar_kernel(datum, mu, max_half) for mu in above]
    matrix = [[k.x_coefficient(_neg(nu)) for nu in above] for k in rows]
    rhs = [-k.x_coefficient(_neg(lam)) for k in rows]
    sol = solve_linear(matrix, rhs)
    return _monomial_sum(datum.rank, lam, dict(zip(above, sol)))


@lru_cache(maxsize=None)
def slice_norm(datum: RootDatum, lam: tuple, max_half: int) -> QSeries:
    """``CT(ebar(lam) * edag_inverted(lam) * C)``; its lowest term is 1."""
    lam = tuple(lam)
    a = edag_inverted(datum, lam, max_half)
    n = ct_product(a * ebar(datum, lam), kernel_t0(datum.rank, max_half))
    v = n.valuation()
    if v is None:
        raise PrecisionError(f"norm of {lam} vanishes within the window")
    if v != 0 or n.coeff(0) != 1:
        raise AssertionError(f"norm of {lam} does not start with 1: {n}")
    return n


@lru_cache(maxsize=None)
def slice_character(datum: RootDatum, lam: tuple, max_half: int) -> CharSeries:
    """Graded character of the Demazure slice with extremal weight ``pi_lam Lambda_0``.

    Level one, extremal term ``q^{(lam|lam)/2} x^lam`` with coefficient 1.
    ``max_half`` is the working precision of the kernel; the result carries
    its own guaranteed window.
    """
    lam = tuple(lam)
    a = edag_inverted(datum, lam, max_half)
    n = slice_norm(datum, lam, max_half)
    h = int(finite_form(lam, lam))
    return a.mul_q(n.inverse()).shift((0,) * datum.rank, h, level=1)


def global_weyl_character(datum: RootDatum, lam: Sequence, max_half: int) -> CharSeries:
    """Sum of slice characters over the finite Weyl orbit of a dominant weight."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    total = None
    for mu in orbit(lam):
        s = slice_character(datum, mu, max_half)
        total = s if total is None else total + s
    return total


@dataclass
class BiorthogonalFamily:
    """Output of the joint triangular solve.

    ``ebar`` and ``edag_inverted`` map weights to characters, ``norms`` maps
    weights to ``CT(ebar * edag_inverted * C)``; ``order`` is the processing
    order (a total refinement of the Macdonald order, largest first).
    """

    rank: int
    max_half: int
    order: list = field(default_factory=list)
    ebar: dict = field(default_factory=dict)
    edag_inverted: dict = field(default_factory=dict)
    norms: dict = field(default_factory=dict)


def biorthogonal_family(
    datum: RootDatum, support_bound: int, max_half: int, key: Callable = order_key
) -> BiorthogonalFamily:
    """Solve for both families at once, without using any Demazure character.

    The index set is every weight above some weight of the box
    ``|coords| <= support_bound``.  Weights are processed in the order given
    by ``key``; for each one both polynomials are fixed by orthogonality
    against all previously processed weights strictly above it.
    """
    rank = datum.rank
    index = set()
    for lam in weights_in_box(rank, support_bound):
        index.update(upper_set(lam))
    order = sorted(index, key=key)
    fam = BiorthogonalFamily(rank, max_half, order)
    kern = kernel_t0(rank, max_half)
    with_kernel_e: dict = {}
    with_kernel_d: dict = {}
    for lam in order:
        above = [mu for mu in order if mu in fam.ebar and mu != lam and macdonald_geq(mu, lam)]
        if above:
            rows_e = [with_kernel_e[mu] for mu in above]
            rows_d = [with_kernel_d[mu] for mu in above]
            # edag side: CT(ebar(mu) * edag(lam) * C) = 0
            sol_d = solve_linear(
                [[k.x_coefficient(_neg(nu)) for nu in above] for k in rows_e],
                [-k.x_coefficient(_neg(lam)) for k in rows_e],
            )
            # ebar side: CT(ebar(lam) * edag(mu) * C) = 0, support on -nu
            sol_e = solve_linear(
                [[k.x_coefficient(nu) for nu in above] for k in rows_d],
                [-k.x_coefficient(lam) for k in rows_d],
            )
            d = _monomial_sum(rank, lam, dict(zip(above, sol_d)))
            e = _monomial_sum(rank, _neg(lam), {_neg(nu): s for nu, s in zip(above, sol_e)})
        else:
            d = CharSeries.one(rank).shift(lam)
            e = CharSeries.one(rank).shift(_neg(lam))
        fam.ebar[lam] = e
        fam.edag_inverted[lam] = d
        with_kernel_e[lam] = e * kern
        with_kernel_d[lam] = d * kern
        fam.norms[lam] = ct_product(e * d, kern)
    return fam
