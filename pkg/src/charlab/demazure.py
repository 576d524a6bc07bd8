"""Level-one Demazure operators and the characters they generate.

A monomial ``q^(h/2) x^a`` of a level ``k`` character stands for the weight
``a + k Lambda_0 - (h/2) delta``.  The operator for ``alpha_i`` is the
isobaric divided difference

    pi_i f = (f - X^{-alpha_i} s_i f) / (1 - X^{-alpha_i}),

evaluated monomial by monomial: on a weight ``mu`` with ``n = <mu, coroot_i>``
it returns the ``alpha_i``-string ``mu, mu - alpha_i, ..., s_i mu`` (``n >= 0``),
zero (``n = -1``) or minus the interior of the reversed string (``n <= -2``).
Each case is the exact quotient, so there is never a remainder.

>>> d = build_datum(1)
>>> sorted(demazure_op(d, 0, CharSeries.one(1, level=1)).terms())
[(((0,), 0), 1), (((1,), 1), 1)]
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Sequence

from .root_datum import (
    RootDatum,
    build_datum,
    finite_form,
    is_dominant,
)
from .series import CharSeries, star
from .weyl import pi_lambda

__all__ = [
    "LOWERING",
    "RAISING",
    "demazure_op",
    "apply_operators",
    "demazure_character",
    "thin_character",
    "local_weyl_character",
    "vacuum_character",
    "ebar",
    "invert_variables",
    "finite_weyl_images",
    "is_finite_weyl_invariant",
]

# The two operator conventions: divide by (1 - X^{-alpha}) or by (1 - X^{alpha}).
LOWERING = "lowering"
RAISING = "raising"


def _root_data(datum: RootDatum, i: int):
    """Integer data of ``alpha_i``: finite part, q-exponent in half units, squared length."""
    a = datum.simple_roots[i]
    return tuple(int(c) for c in a.finite), a.q_half(), int(datum.sq_lengths[i])


def demazure_op(datum: RootDatum, i: int, f: CharSeries, form: str = LOWERING) -> CharSeries:
    """Apply the Demazure operator for ``alpha_i`` to a character.

    ``form`` selects which monomial the divided difference uses:
    ``LOWERING`` divides by ``1 - X^{-alpha_i}`` (the default) and ``RAISING``
    by ``1 - X^{alpha_i}``.
    """
    if not f.is_exact:
        raise ValueError("Demazure operators act on finite characters")
    a, qa, length = _root_data(datum, i)
    k = f.level
    # step along the string: -alpha_i for LOWERING, +alpha_i for RAISING
    sign = -1 if form == LOWERING else 1
    step_x = tuple(sign * c for c in a)
    step_h = sign * qa
    out: dict[int, dict] = {}
    for (x, h), c in f.terms():
        # 2 (mu|alpha) with mu = x + k Lambda_0 - (h/2) delta
        num = 2 * sum(u * v for u, v in zip(x, a)) - k * qa
        n, rem = divmod(num, length)
        if rem:
            raise ArithmeticError(f"non-integral pairing {num}/{length}: the division is not exact")
        j = n + 1 if form == LOWERING else 1 - n
        if j >= 0:
            ts, coeff = range(j), c
        else:
            ts, coeff = range(j, 0), -c
        for t in ts:
            hh = h + t * step_h
            key = tuple(u + t * v for u, v in zip(x, step_x))
            piece = out.setdefault(hh, {})
            v = piece.get(key, 0) + coeff
            if v:
                piece[key] = v
            else:
                del piece[key]
    return CharSeries(f.rank, out, f.level)


def apply_operators(
    datum: RootDatum, word: Sequence[int], f: CharSeries, form: str = LOWERING
) -> CharSeries:
    """Apply ``pi_{w_1} ... pi_{w_k}`` to ``f``; the rightmost operator acts first."""
    for i in reversed(word):
        f = demazure_op(datum, i, f, form)
    return f


def demazure_character(
    datum: RootDatum, word: Sequence[int], form: str = LOWERING
) -> CharSeries:
    """Character generated from the level-one vacuum monomial along ``word``."""
    return apply_operators(datum, word, CharSeries.one(datum.rank, level=1), form)


@lru_cache(maxsize=None)
def _thin_cached(rank: int, lam: tuple, form: str) -> CharSeries:
    datum = build_datum(rank)
    return demazure_character(datum, pi_lambda(datum, lam), form)


def thin_character(
    datum: RootDatum, lam: Sequence, word: Sequence[int] | None = None, form: str = LOWERING
) -> CharSeries:
    """Character of the thin Demazure module with extremal weight ``pi_lam Lambda_0``.

    Finite, level one, with extremal term ``q^{(lam|lam)/2} x^lam``.  A
    specific minimal ``word`` may be supplied to test word independence.
    """
    lam = tuple(lam)
    if word is None:
        return _thin_cached(datum.rank, lam, form)
    return demazure_character(datum, word, form)


def local_weyl_character(datum: RootDatum, lam: Sequence) -> CharSeries:
    """Character of the local Weyl module with highest weight ``lam`` (dominant).

    The module is the thin Demazure module whose extremal weight is the
    lowest weight ``w_0 lam = -lam`` of the finite module ``V(lam)``, tensored
    with the one-dimensional module of weight ``(lam|lam)/2 delta - Lambda_0``.
    The result has level zero and is invariant under signed permutations.
    """
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    lowest = tuple(-c for c in lam)
    return _shift_out(thin_character(datum, lowest), lowest)


def _shift_out(f: CharSeries, lam: tuple) -> CharSeries:
    # multiply by the monomial of (lam|lam)/2 delta - Lambda_0
    return f.shift((0,) * f.rank, -int(finite_form(lam, lam)), level=-1)


def vacuum_character(rank: int, max_half: int) -> CharSeries:
    """Character of the basic representation via its lattice-times-Heisenberg realization.

    ``sum_lam q^{(lam|lam)/2} x^lam`` times ``prod_{n>=1} (1 - q^n)^{-rank}``,
    known through ``q^(max_half/2)``.
    """
    # lattice part: |lam|^2 <= max_half
    bound = math.isqrt(max(max_half, 0)) + 1
    theta: dict[int, dict] = {}
    for lam in itertools.product(range(-bound, bound + 1), repeat=rank):
        h = sum(c * c for c in lam)
        if h <= max_half:
            theta.setdefault(h, {})[lam] = 1
    # partitions into ``rank`` colours, integer degrees only
    nmax = max_half // 2
    part = [0] * (nmax + 1)
    part[0] = 1
    for _ in range(rank):
        for n in range(1, nmax + 1):
            for k in range(n, nmax + 1):
                part[k] += part[k - n]
    heis = CharSeries(
        rank, {2 * k: {(0,) * rank: part[k]} for k in range(nmax + 1)}, 0, 0, max_half
    )
    return (CharSeries(rank, theta, 1, 0, max_half) * heis).truncate(max_half)


def invert_variables(f: CharSeries) -> CharSeries:
    """``f(X^{-1}, q^{-1})`` keeping the level tag."""
    return star(f).with_level(f.level)


def ebar(datum: RootDatum, lam: Sequence) -> CharSeries:
    """The ``t = 0`` polynomial read off from the thin character.

    Strip ``q^{(lam|lam)/2} X^{Lambda_0}`` and invert ``x`` and ``q``.  The
    result is a finite level-zero Laurent polynomial whose extremal monomial
    is ``X^{-lam}`` with coefficient 1; every other monomial is ``X^{-mu}``
    with ``mu`` strictly above ``lam`` in the Macdonald order.
    """
    lam = tuple(lam)
    return invert_variables(_shift_out(thin_character(datum, lam), lam))


def finite_weyl_images(x: tuple):
    l = len(x)
    for perm in itertools.permutations(range(l)):
        for signs in itertools.product((1, -1), repeat=l):
            yield tuple(signs[k] * x[perm[k]] for k in range(l))


def is_finite_weyl_invariant(f: CharSeries) -> bool:
    """Every graded piece is invariant under signed permutations of ``x``."""
    for h, p in f.graded_pieces().items():
        for x, c in p.items():
            for y in finite_weyl_images(x):
                if p.get(y, 0) != c:
                    return False
    return True
