"""Affine Weyl group words acting on the level-one orbit of ``Lambda_0``.

Group elements are never multiplied abstractly.  Everything needed here is
read off from the orbit of ``Lambda_0``: a state is the pair ``(finite part,
energy)`` of ``w Lambda_0`` and a breadth-first search over states yields
minimal words.

Words are lists of indices in ``0..l``; the rightmost letter acts first.

>>> from charlab.root_datum import build_datum
>>> d = build_datum(1)
>>> pi_lambda(d, (1,)), pi_lambda(d, (-1,))
([0], [1, 0])
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .root_datum import AffineWeight, RootDatum, finite_form, lambda0, macdonald_geq

__all__ = [
    "SearchBudgetExceeded",
    "apply_word",
    "translation_weight",
    "pi_lambda",
    "all_min_words",
    "orbit_bfs",
    "order_compatibility_check",
    "OrderReport",
]


class SearchBudgetExceeded(RuntimeError):
    """The orbit search hit its energy bound without reaching the target."""


def apply_word(datum: RootDatum, word: Sequence[int], mu: AffineWeight) -> AffineWeight:
    for i in reversed(word):
        mu = datum.reflect(i, mu)
    return mu


def translation_weight(lam: Sequence) -> AffineWeight:
    """``lam + Lambda_0 - (lam|lam)/2 delta``: where the translation by ``lam`` sends ``Lambda_0``."""
    return AffineWeight.make(lam, 1, Fraction(finite_form(lam, lam)) / 2)


def _state(mu: AffineWeight) -> tuple:
    return (mu.finite, mu.energy)


def _default_bound(lam: Sequence) -> Fraction:
    return Fraction(finite_form(lam, lam)) / 2 + 2


def orbit_bfs(datum: RootDatum, energy_bound: Fraction):
    """Layered BFS over the orbit of ``Lambda_0`` restricted to energies ``<= energy_bound``.

    Returns ``(depth, parents, first)`` where ``parents[state]`` lists every
    ``(previous_state, letter)`` on a shortest path and ``first[state]`` is the
    canonical one (generators expanded in the order ``0..l``).
    """
    start = lambda0(datum.rank)
    s0 = _state(start)
    depth = {s0: 0}
    parents: dict = {s0: []}
    first: dict = {s0: None}
    weights = {s0: start}
    queue = deque([s0])
    while queue:
        s = queue.popleft()
        mu = weights[s]
        for i in range(datum.rank + 1):
            nu = datum.reflect(i, mu)
            if nu.energy > energy_bound:
                continue
            t = _state(nu)
            if t not in depth:
                depth[t] = depth[s] + 1
                parents[t] = [(s, i)]
                first[t] = (s, i)
                weights[t] = nu
                queue.append(t)
            elif depth[t] == depth[s] + 1:
                parents[t].append((s, i))
    return depth, parents, first


def _target_state(lam: Sequence) -> tuple:
    w = translation_weight(lam)
    return (w.finite, w.energy)


def pi_lambda(datum: RootDatum, lam: Sequence, energy_bound=None) -> list[int]:
    """Canonical minimal word ``w`` with finite part of ``w Lambda_0`` equal to ``lam``."""
    lam = tuple(lam)
    bound = _default_bound(lam) if energy_bound is None else Fraction(energy_bound)
    _, _, first = orbit_bfs(datum, bound)
    target = _find_target(first, lam, bound)
    letters = []
    s = target
    while first[s] is not None:
        s, i = first[s]
        letters.append(i)
    # letters were collected from the target backwards: the first one collected
    # is the last reflection applied, i.e. the leftmost letter.
    return letters


def _find_target(table: dict, lam: tuple, bound) -> tuple:
    hits = [s for s in table if s[0] == lam]
    if not hits:
        raise SearchBudgetExceeded(f"no orbit state with finite part {lam} up to energy {bound}")
    if len(hits) > 1:
        raise AssertionError("finite part does not determine the orbit state")
    return hits[0]


def all_min_words(datum: RootDatum, lam: Sequence, energy_bound=None) -> list[list[int]]:
    """Every minimal word reaching the orbit state with finite part ``lam``, sorted."""
    lam = tuple(lam)
    bound = _default_bound(lam) if energy_bound is None else Fraction(energy_bound)
    _, parents, _ = orbit_bfs(datum, bound)
    target = _find_target(parents, lam, bound)
    out: list[list[int]] = []

    def walk(s, acc):
        if not parents[s]:
            out.append(list(acc))
            return
        for prev, i in parents[s]:
            acc.append(i)
            walk(prev, acc)
            acc.pop()

    walk(target, [])
    return sorted(out)


@dataclass
class OrderReport:
    checked: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def order_compatibility_check(
    datum: RootDatum, sample_size: int | None = None, max_depth: int = 5
) -> OrderReport:
    """Check ``v((0)) >= (s_i v)((0))`` on BFS edges that increase length.

    Edges are taken in BFS order up to ``max_depth``; ``sample_size`` caps the
    number checked (``None`` means all).
    """
    report = OrderReport()
    if sample_size == 0:
        return report
    start = lambda0(datum.rank)
    depth = {_state(start): 0}
    frontier = [start]
    for d in range(max_depth):
        nxt = []
        for mu in frontier:
            for i in range(datum.rank + 1):
                nu = datum.reflect(i, mu)
                t = _state(nu)
                if t in depth and depth[t] <= d:
                    continue
                if t not in depth:
                    depth[t] = d + 1
                    nxt.append(nu)
                report.checked += 1
                if macdonald_geq(mu.finite, nu.finite):
                    report.passed += 1
                else:
                    report.failures.append((mu.finite, i, nu.finite))
                if sample_size is not None and report.checked >= sample_size:
                    return report
        frontier = nxt
    return report
