"""Formula-level computations for the special current algebra (finite part of type B).

Weights are Dynkin labels ``(m_1, ..., m_l)`` on the fundamental weights of
the ``B_l`` subalgebra.  Nothing here builds a module: dimensions, generator
ranges and Hilbert series come from closed formulas, and the change of
generators between the imaginary Cartan currents and the ``p_{i,r}`` is done
with symbolic power series.

>>> dim_local_weyl_special((0, 1))
4
>>> a_lambda_generators((0, 2))
[(2, 1)]
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import sympy

from .series import QSeries

__all__ = [
    "dim_local_weyl_special",
    "a_lambda_generators",
    "a_lambda_hilbert",
    "h_symbol",
    "p_symbol",
    "p_expansion",
    "h_from_p",
    "free_rank_report",
]


def _check_labels(labels: Sequence[int]) -> tuple[int, ...]:
    labels = tuple(int(m) for m in labels)
    if not labels:
        raise ValueError("at least one label is required")
    if any(m < 0 for m in labels):
        raise ValueError(f"labels must be nonnegative: {labels}")
    return labels


def dim_local_weyl_special(labels: Sequence[int]) -> int:
    """Dimension of the local Weyl module of the special current algebra."""
    labels = _check_labels(labels)
    l = len(labels)
    n = 2 * l + 1
    out = 1
    for i, m in enumerate(labels[:-1], start=1):
        out *= math.comb(n, i) ** m
    last = labels[-1]
    if last % 2:
        k = (last + 1) // 2
        out *= math.comb(n, l) ** (k - 1) * 2**l
    else:
        out *= math.comb(n, l) ** (last // 2)
    return out


def a_lambda_generators(labels: Sequence[int]) -> list[tuple[int, int]]:
    """Generators ``(node, degree)`` of the polynomial algebra acting on the global module."""
    labels = _check_labels(labels)
    l = len(labels)
    gens = []
    for i, m in enumerate(labels, start=1):
        top = m // 2 if i == l else m
        gens.extend((i, r) for r in range(1, top + 1))
    return gens


def a_lambda_hilbert(labels: Sequence[int], max_degree: int) -> QSeries:
    """``prod (1 - q^r)^{-1}`` over the generators, known through ``q^max_degree``."""
    coeffs = [0] * (max_degree + 1)
    coeffs[0] = 1
    for _, r in a_lambda_generators(labels):
        for n in range(r, max_degree + 1):
            coeffs[n] += coeffs[n - r]
    return QSeries({2 * n: c for n, c in enumerate(coeffs) if c}, 0, 2 * max_degree)


def h_symbol(i: int, s: int) -> sympy.Symbol:
    """The Cartan current ``h_{i, s mod 2}`` in degree ``-s``."""
    return sympy.Symbol(f"h_{i}_{s}")


def p_symbol(i: int, r: int) -> sympy.Symbol:
    return sympy.Symbol(f"p_{i}_{r}")


def _log_coefficient(rank: int, i: int, s: int) -> sympy.Expr:
    # coefficient of z^s in the exponent of the generating series
    h = h_symbol(i, s)
    if i != rank:
        return -h / s
    if s % 2:
        return h / s
    return -(h / 2) / s


def _check_node(rank: int, i: int) -> None:
    if not 1 <= i <= rank:
        raise ValueError(f"node {i} outside 1..{rank}")


@lru_cache(maxsize=None)
def p_expansion(rank: int, i: int, rmax: int) -> dict[int, sympy.Expr]:
    """``p_{i,r}`` for ``0 <= r <= rmax`` as polynomials in the ``h`` symbols.

    Uses ``r p_r = sum_{k=1}^r k g_k p_{r-k}`` for ``P = exp(G)``.
    """
    _check_node(rank, i)
    g = {s: _log_coefficient(rank, i, s) for s in range(1, rmax + 1)}
    p = {0: sympy.Integer(1)}
    for r in range(1, rmax + 1):
        acc = sum((k * g[k] * p[r - k] for k in range(1, r + 1)), sympy.Integer(0))
        p[r] = sympy.expand(acc / r)
    return p


@lru_cache(maxsize=None)
def h_from_p(rank: int, i: int, smax: int) -> dict[int, sympy.Expr]:
    """Each ``h`` symbol of degree ``s <= smax`` as a polynomial in ``p_{i,1..s}``."""
    _check_node(rank, i)
    p = p_expansion(rank, i, smax)
    out: dict[int, sympy.Expr] = {}
    for s in range(1, smax + 1):
        h = h_symbol(i, s)
        lead = p[s].coeff(h)
        if lead == 0:
            raise ArithmeticError(f"p_{i},{s} does not involve {h}")
        rest = sympy.expand(p[s] - lead * h)
        rest = rest.subs({h_symbol(i, j): out[j] for j in range(1, s)}, simultaneous=True)
        out[s] = sympy.expand((p_symbol(i, s) - rest) / lead)
    return out


def free_rank_report(labels: Sequence[int], max_degree: int) -> dict:
    """JSON-ready summary: free rank, generators and Hilbert series."""
    labels = _check_labels(labels)
    return {
        "lambda": list(labels),
        "rank": str(dim_local_weyl_special(labels)),
        "generators": [list(g) for g in a_lambda_generators(labels)],
        "hilbert": a_lambda_hilbert(labels, max_degree).to_json(),
    }
