"""The twisted affine root datum of type ``A_{2l}^{(2)}`` and its finite lattices.

Coordinates
-----------
Finite weights are tuples of ``l`` integers or fractions in the orthonormal
basis ``eps_1, ..., eps_l``.  An :class:`AffineWeight` ``(finite, level,
energy)`` stands for ``finite + level*Lambda_0 - energy*delta``, so a weight
with energy ``m`` contributes ``q^m`` to a graded character.

The simple roots are realized as::

    alpha_0 = delta/2 - eps_1
    alpha_i = eps_i - eps_{i+1}     (1 <= i < l)
    alpha_l = 2 eps_l

giving squared lengths ``1, 2, ..., 2, 4`` and
``delta = 2 alpha_0 + 2 alpha_1 + ... + 2 alpha_{l-1} + alpha_l``.

>>> d = build_datum(1)
>>> d.bilinear(d.simple_roots[0], d.simple_roots[0])
Fraction(1, 1)
>>> d.reflect(0, lambda0(1))
AffineWeight(finite=(1,), level=1, energy=Fraction(1, 2))
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "AffineWeight",
    "AffineRoot",
    "RootDatum",
    "build_datum",
    "lambda0",
    "delta",
    "finite_form",
    "finite_reflect",
    "finite_pair_coroot",
    "dominant_rep",
    "is_dominant",
    "orbit",
    "weyl_group_order",
    "signed_permutations",
    "cone_member_qprime_plus",
    "root_cone_member",
    "simple_root_coefficients",
    "macdonald_geq",
    "macdonald_gt",
    "order_key",
    "order_key_alt",
    "neg_roots_upto",
    "hull_member",
    "weights_in_box",
    "dynkin_to_eps",
    "eps_to_dynkin",
]

FiniteWeight = tuple


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _clean(v):
    v = _frac(v)
    return v.numerator if v.denominator == 1 else v


class AffineWeight(NamedTuple):
    """``finite + level*Lambda_0 - energy*delta``."""

    finite: tuple
    level: int
    energy: Fraction

    @classmethod
    def make(cls, finite: Iterable, level: int = 0, energy=0) -> "AffineWeight":
        return cls(tuple(_clean(c) for c in finite), int(level), _frac(energy))

    def __add__(self, other: "AffineWeight") -> "AffineWeight":  # type: ignore[override]
        return AffineWeight(
            tuple(_clean(a + b) for a, b in zip(self.finite, other.finite)),
            self.level + other.level,
            self.energy + other.energy,
        )

    def scaled(self, c) -> "AffineWeight":
        c = _frac(c)
        if self.level * c != int(self.level * c):
            raise ValueError("level must stay integral")
        return AffineWeight(
            tuple(_clean(a * c) for a in self.finite), int(self.level * c), self.energy * c
        )

    def __neg__(self) -> "AffineWeight":
        return self.scaled(-1)

    def __sub__(self, other: "AffineWeight") -> "AffineWeight":
        return self + (-other)

    def q_half(self) -> int:
        """Energy in half units; the exponent of ``q^(1/2)`` of this weight."""
        h = self.energy * 2
        if h.denominator != 1:
            raise ValueError("energy is not a half-integer")
        return int(h)


class AffineRoot(NamedTuple):
    """A root ``finite + (delta_half/2) * delta`` with its multiplicity."""

    finite: tuple
    delta_half: int
    multiplicity: int

    @property
    def is_imaginary(self) -> bool:
        return not any(self.finite)

    def as_weight(self) -> AffineWeight:
        return AffineWeight.make(self.finite, 0, Fraction(-self.delta_half, 2))


def lambda0(rank: int) -> AffineWeight:
    return AffineWeight((0,) * rank, 1, Fraction(0))


def delta(rank: int) -> AffineWeight:
    return AffineWeight((0,) * rank, 0, Fraction(-1))


def finite_form(a: Sequence, b: Sequence):
    return _clean(sum(_frac(x) * y for x, y in zip(a, b)))


@dataclass(frozen=True)
class RootDatum:
    """Simple roots, Cartan matrix and marks of ``A_{2l}^{(2)}``."""

    rank: int
    simple_roots: tuple
    sq_lengths: tuple
    cartan: tuple
    marks: tuple  # delta = sum marks[i] * alpha_i
    comarks: tuple  # K = sum comarks[i] * coroot_i
    imaginary_multiplicity: int

    def bilinear(self, mu: AffineWeight, nu: AffineWeight) -> Fraction:
        """Invariant form: orthonormal eps, ``(Lambda_0|delta) = 1``, others zero."""
        return (
            _frac(finite_form(mu.finite, nu.finite))
            - mu.level * nu.energy
            - nu.level * mu.energy
        )

    def pair_coroot(self, mu: AffineWeight, i: int) -> Fraction:
        a = self.simple_roots[i]
        return 2 * self.bilinear(mu, a) / self.sq_lengths[i]

    def reflect(self, i: int, mu: AffineWeight) -> AffineWeight:
        n = self.pair_coroot(mu, i)
        a = self.simple_roots[i]
        return AffineWeight(
            tuple(_clean(m - n * c) for m, c in zip(mu.finite, a.finite)),
            mu.level,
            mu.energy - n * a.energy,
        )

    def delta(self) -> AffineWeight:
        return delta(self.rank)

    def lambda0(self) -> AffineWeight:
        return lambda0(self.rank)

    def central_pairing(self, mu: AffineWeight) -> Fraction:
        """``<mu, K>`` with ``K = sum comarks[i] * coroot_i``."""
        return self.coroot_combination(mu, self.comarks)

    def coroot_combination(self, mu: AffineWeight, coeffs: Sequence) -> Fraction:
        """``<mu, sum coeffs[i] * coroot_i>``."""
        return sum((c * self.pair_coroot(mu, i) for i, c in enumerate(coeffs)), Fraction(0))


def build_datum(l: int) -> RootDatum:
    """Construct the root datum of rank ``l >= 1``."""
    if not isinstance(l, int) or l < 1:
        raise ValueError("rank must be a positive integer")
    e = lambda i: tuple(1 if j == i else 0 for j in range(l))  # noqa: E731
    roots = [AffineWeight.make(tuple(-c for c in e(0)), 0, Fraction(-1, 2))]
    for i in range(l - 1):
        roots.append(AffineWeight.make(tuple(a - b for a, b in zip(e(i), e(i + 1))), 0, 0))
    roots.append(AffineWeight.make(tuple(2 * c for c in e(l - 1)), 0, 0))
    sq = tuple(1 if i == 0 else (4 if i == l else 2) for i in range(l + 1))

    def form(a, b):
        return _frac(finite_form(a.finite, b.finite)) - a.level * b.energy - b.level * a.energy

    cartan = tuple(
        tuple(int(2 * form(roots[i], roots[j]) / sq[i]) for j in range(l + 1)) for i in range(l + 1)
    )
    marks = (2,) * l + (1,)
    comarks = (1,) + (2,) * l
    return RootDatum(l, tuple(roots), sq, cartan, marks, comarks, l)


# ---------------------------------------------------------------------------
# finite lattice: type C_l with W = signed permutations


def finite_pair_coroot(lam: Sequence, i: int):
    """``<lam, coroot_i>`` for a finite simple root, ``1 <= i <= l``."""
    l = len(lam)
    if not 1 <= i <= l:
        raise ValueError("finite simple roots are indexed 1..l")
    if i < l:
        return _clean(_frac(lam[i - 1]) - lam[i])
    return _clean(lam[l - 1])


def finite_reflect(i: int, lam: Sequence) -> tuple:
    l = len(lam)
    lam = list(lam)
    if i < l:
        lam[i - 1], lam[i] = lam[i], lam[i - 1]
    else:
        lam[l - 1] = -lam[l - 1]
    return tuple(lam)


def is_dominant(lam: Sequence) -> bool:
    return all(finite_pair_coroot(lam, i) >= 0 for i in range(1, len(lam) + 1))


def dominant_rep(lam: Sequence) -> tuple[tuple, list[int]]:
    """Dominant representative and a word ``w`` (over 1..l) with ``w(lam) = lam_+``.

    Letters act right to left, so the last letter is applied first.

    >>> dominant_rep((-1, 0))
    ((1, 0), [1, 2, 1])
    """
    lam = tuple(lam)
    applied: list[int] = []
    while True:
        for i in range(1, len(lam) + 1):
            if finite_pair_coroot(lam, i) < 0:
                lam = finite_reflect(i, lam)
                applied.append(i)
                break
        else:
            return lam, applied[::-1]


def weyl_group_order(l: int) -> int:
    return 2**l * math.factorial(l)


def signed_permutations(l: int):
    """All elements of the finite Weyl group as ``(perm, signs)`` pairs."""
    for perm in itertools.permutations(range(l)):
        for signs in itertools.product((1, -1), repeat=l):
            yield perm, signs


def apply_signed_permutation(g, lam: Sequence) -> tuple:
    perm, signs = g
    return tuple(signs[k] * lam[perm[k]] for k in range(len(lam)))


def orbit(lam: Sequence) -> list[tuple]:
    """The finite Weyl orbit, sorted for determinism."""
    lam = tuple(lam)
    seen = {lam}
    stack = [lam]
    while stack:
        v = stack.pop()
        for i in range(1, len(lam) + 1):
            w = finite_reflect(i, v)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return sorted(seen)


def _partial_sums(nu: Sequence) -> list:
    return list(itertools.accumulate(_frac(c) for c in nu))


def _require_integral(nu: Sequence) -> None:
    if any(_frac(c).denominator != 1 for c in nu):
        raise ValueError(f"{tuple(nu)} is not in the integral lattice")


def cone_member_qprime_plus(nu: Sequence) -> bool:
    """Is ``nu`` a nonnegative integer combination of ``alpha_1..alpha_l`` and ``eps_1..eps_l``?

    The generators ``alpha_1, ..., alpha_{l-1}, eps_l`` already form a lattice
    basis of ``Z^l`` spanning the same cone (the other generators are sums of
    them), so the coefficients are the partial sums of ``nu``.
    """
    _require_integral(nu)
    return all(s >= 0 for s in _partial_sums(nu))


def simple_root_coefficients(nu: Sequence) -> list[Fraction]:
    """Coefficients of ``nu`` in ``alpha_1, ..., alpha_l``."""
    s = _partial_sums(nu)
    return s[:-1] + [s[-1] / 2]


def root_cone_member(nu: Sequence) -> bool:
    """Membership in the positive root cone ``Q_+`` (nonnegative integer span of ``alpha_1..alpha_l``)."""
    c = simple_root_coefficients(nu)
    return all(v >= 0 and v.denominator == 1 for v in c)


def macdonald_geq(mu: Sequence, lam: Sequence) -> bool:
    """The Macdonald order ``mu >= lam``; ``0`` is the maximum.

    Within one orbit, ``mu - lam`` must lie in ``Q_+``; across orbits the
    dominant representatives are compared through the cone of
    :func:`cone_member_qprime_plus`, with the smaller one counted as larger.
    """
    mu, lam = tuple(mu), tuple(lam)
    mu_p, _ = dominant_rep(mu)
    lam_p, _ = dominant_rep(lam)
    if mu_p == lam_p:
        return root_cone_member(tuple(a - b for a, b in zip(mu, lam)))
    return cone_member_qprime_plus(tuple(a - b for a, b in zip(lam_p, mu_p)))


def macdonald_gt(mu: Sequence, lam: Sequence) -> bool:
    return tuple(mu) != tuple(lam) and macdonald_geq(mu, lam)


def order_key(lam: Sequence) -> tuple:
    """Sort key of a total order refining the Macdonald order (largest first)."""
    lam = tuple(lam)
    lp, _ = dominant_rep(lam)
    outer = sum(_partial_sums(lp))
    inner = sum(simple_root_coefficients(tuple(a - b for a, b in zip(lp, lam))))
    return (outer, inner, lam)


def order_key_alt(lam: Sequence) -> tuple:
    """A second refinement: different functionals and reversed tie-breaking."""
    lam = tuple(lam)
    lp, _ = dominant_rep(lam)
    outer = sum((k + 1) * s for k, s in enumerate(_partial_sums(lp)))
    diff = tuple(a - b for a, b in zip(lp, lam))
    inner = sum((len(lam) - k) * c for k, c in enumerate(simple_root_coefficients(diff)))
    return (outer, inner, tuple(-c for c in lam))


def weights_in_box(l: int, bound: int) -> list[tuple]:
    return list(itertools.product(range(-bound, bound + 1), repeat=l))


def hull_member(mu: Sequence, x: Sequence) -> bool:
    """Is ``x`` in the convex hull of the finite Weyl orbit of ``mu``?

    For signed permutations this hull is described by weak submajorization:
    the decreasing rearrangement of ``|x|`` has partial sums bounded by those
    of the dominant representative of ``mu``.
    """
    mp, _ = dominant_rep(mu)
    xs = sorted((abs(_frac(c)) for c in x), reverse=True)
    return all(a <= b for a, b in zip(_partial_sums(xs), _partial_sums(mp)))


# ---------------------------------------------------------------------------
# roots


def _finite_roots(l: int):
    """Short roots ``+-eps_i +- eps_j`` and long roots ``+-2 eps_i``."""
    short, long_ = [], []
    for i in range(l):
        for s in (1, -1):
            v = [0] * l
            v[i] = 2 * s
            long_.append(tuple(v))
        for j in range(i + 1, l):
            for s, t in itertools.product((1, -1), repeat=2):
                v = [0] * l
                v[i], v[j] = s, t
                short.append(tuple(v))
    return short, long_


def finite_positive_roots(l: int) -> list[tuple]:
    short, long_ = _finite_roots(l)
    return sorted(r for r in short + long_ if root_cone_member(r))


def neg_roots_upto(l: int, qmax_half: int) -> list[AffineRoot]:
    """Negative roots with ``delta``-coefficient ``c`` in ``[-qmax, 0]``.

    ``qmax_half`` is ``2*qmax``.  The ``c = 0`` part is the negative finite
    roots; for ``c < 0`` every real root family contributes, and ``n delta``
    carries multiplicity ``l``.
    """
    if qmax_half < 0:
        raise ValueError("qmax must be nonnegative")
    short, long_ = _finite_roots(l)
    out = [AffineRoot(r, 0, 1) for r in sorted(short + long_) if not root_cone_member(r)]
    unit = [tuple(s if j == i else 0 for j in range(l)) for i in range(l) for s in (1, -1)]
    for ch in range(1, qmax_half + 1):
        c = -ch  # delta coefficient in half units
        if ch % 2 == 1:
            out.extend(AffineRoot(r, c, 1) for r in sorted(unit))
            continue
        out.extend(AffineRoot(r, c, 1) for r in sorted(short))
        if ch % 4 == 0:
            out.extend(AffineRoot(r, c, 1) for r in sorted(long_))
        out.append(AffineRoot((0,) * l, c, l))
    return out


# ---------------------------------------------------------------------------
# label conversions


def dynkin_to_eps(labels: Sequence[int]) -> tuple:
    """Fundamental-weight coordinates to eps-coordinates (``varpi_i = eps_1 + ... + eps_i``)."""
    l = len(labels)
    return tuple(sum(labels[j] for j in range(i, l)) for i in range(l))


def eps_to_dynkin(lam: Sequence) -> tuple:
    return tuple(finite_pair_coroot(lam, i) for i in range(1, len(lam) + 1))
