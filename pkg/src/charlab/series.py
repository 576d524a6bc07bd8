"""Truncated Laurent series in ``q^(1/2)`` and graded characters over them.

Two value types live here:

* :class:`QSeries` -- a one-variable truncated Laurent series in ``q^(1/2)``
  with exact rational coefficients.
* :class:`CharSeries` -- a Laurent polynomial in ``x_1, ..., x_l`` for every
  power of ``q^(1/2)``, with a level tag.

All exponents of ``q`` are stored in half units (``q_half = 2 * exponent``).
Every value carries a window ``(min_half, max_half)``: no term sits below
``min_half`` and every coefficient up to and including ``max_half`` is known
exactly.  ``max_half = None`` marks an exact object (a finite polynomial
known in all degrees).  Arithmetic computes the window that is guaranteed
by its inputs instead of assuming exactness.

>>> one = CharSeries.one(1)
>>> f = CharSeries.monomial(1, (1,), 1)
>>> (one + f) * (one - f) == one - CharSeries.monomial(1, (2,), 2)
True
>>> g = invert_unit(one - CharSeries.monomial(1, (1,), 2), max_half=4)
>>> sorted(g.terms())
[(((0,), 0), 1), (((1,), 2), 1), (((2,), 4), 1)]
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Union

__all__ = [
    "Coeff",
    "PrecisionError",
    "QSeries",
    "CharSeries",
    "mul",
    "star",
    "constant_term_x",
    "invert_unit",
    "format_rational",
    "parse_rational",
    "solve_linear",
]

Coeff = Union[int, Fraction]
XExp = tuple


class PrecisionError(ArithmeticError):
    """Raised when a requested result is not determined by the known window."""


def _clean(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def format_rational(c: Coeff) -> str:
    """Render an exact rational as ``"p"`` or ``"p/q"``."""
    c = _clean(c)
    return str(c)


def parse_rational(s: str | int) -> Coeff:
    return _clean(Fraction(s))


def _min_opt(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add_opt(a: int | None, b: int) -> int | None:
    return None if a is None else a + b


def _product_max(amin: int, amax: int | None, bmin: int, bmax: int | None) -> int | None:
    # f known through amax with support >= amin, g likewise; the product is
    # determined through min(amax + bmin, bmax + amin).
    return _min_opt(_add_opt(amax, bmin), _add_opt(bmax, amin))


def _q_str(h: int) -> str:
    if h == 0:
        return ""
    if h == 2:
        return "q"
    if h % 2 == 0:
        return f"q^{h // 2}"
    return f"q^({h}/2)"


class QSeries:
    """Truncated Laurent series in ``q^(1/2)`` with rational coefficients.

    ``terms`` maps half-exponents to coefficients.  Zero coefficients are
    dropped on construction.
    """

    __slots__ = ("_terms", "min_half", "max_half")

    def __init__(
        self,
        terms: Mapping[int, Coeff] | None = None,
        min_half: int | None = None,
        max_half: int | None = None,
    ):
        data = {}
        for h, c in (terms or {}).items():
            if c:
                if max_half is not None and h > max_half:
                    continue
                data[int(h)] = _clean(c)
        if min_half is None:
            min_half = min(data) if data else 0
        elif data and min(data) < min_half:
            raise ValueError("term below the declared window")
        self._terms = data
        self.min_half = min_half
        self.max_half = max_half

    @classmethod
    def constant(cls, c: Coeff = 1, max_half: int | None = None) -> "QSeries":
        return cls({0: c}, min_half=0 if c else None, max_half=max_half)

    @property
    def is_exact(self) -> bool:
        return self.max_half is None

    def terms(self) -> dict[int, Coeff]:
        return dict(self._terms)

    def coeff(self, h: int) -> Coeff:
        if self.max_half is not None and h > self.max_half:
            raise PrecisionError(f"coefficient of {_q_str(h) or '1'} lies beyond the window")
        return self._terms.get(h, 0)

    def valuation(self) -> int | None:
        return min(self._terms) if self._terms else None

    def truncate(self, max_half: int) -> "QSeries":
        new_max = max_half if self.max_half is None else min(self.max_half, max_half)
        return QSeries(self._terms, min(self.min_half, new_max), new_max)

    def __add__(self, other: "QSeries") -> "QSeries":
        other = _as_qseries(other)
        out = dict(self._terms)
        for h, c in other._terms.items():
            out[h] = out.get(h, 0) + c
        return QSeries(out, min(self.min_half, other.min_half), _min_opt(self.max_half, other.max_half))

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries({h: -c for h, c in self._terms.items()}, self.min_half, self.max_half)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-_as_qseries(other))

    def __rsub__(self, other) -> "QSeries":
        return _as_qseries(other) - self

    def scale(self, c: Coeff) -> "QSeries":
        return QSeries({h: v * c for h, v in self._terms.items()}, self.min_half, self.max_half)

    def shift(self, h: int) -> "QSeries":
        """Multiply by ``q^(h/2)``."""
        return QSeries(
            {k + h: v for k, v in self._terms.items()}, self.min_half + h, _add_opt(self.max_half, h)
        )

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = _as_qseries(other)
        top = _product_max(self.min_half, self.max_half, other.min_half, other.max_half)
        out: dict[int, Coeff] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                h = a + b
                if top is not None and h > top:
                    continue
                out[h] = out.get(h, 0) + ca * cb
        lo = self.min_half + other.min_half
        if top is not None and top < lo:
            raise PrecisionError("product window is empty")
        return QSeries(out, lo, top)

    __rmul__ = __mul__

    def inverse(self, max_half: int | None = None) -> "QSeries":
        """Multiplicative inverse, expanded from the lowest-order term."""
        v = self.valuation()
        if v is None:
            raise PrecisionError("series has no nonzero term within its window")
        lead = Fraction(self._terms[v])
        if self.max_half is None and len(self._terms) == 1:
            exact = QSeries({-v: 1 / lead}, -v, None)
            return exact if max_half is None else exact.truncate(max_half)
        if self.max_half is None:
            if max_half is None:
                raise ValueError("inverting an exact series needs a target window")
            rel = max_half + v
        else:
            rel = self.max_half - v
            if max_half is not None:
                rel = min(rel, max_half + v)
        if rel < 0:
            raise PrecisionError("not enough precision to invert")
        h = {k - v: c / lead for k, c in self._terms.items() if k != v and k - v <= rel}
        g = {0: Fraction(1)}
        for n in range(1, rel + 1):
            acc = Fraction(0)
            for k, c in h.items():
                if k <= n and (n - k) in g:
                    acc -= c * g[n - k]
            if acc:
                g[n] = acc
        return QSeries({k - v: c / lead for k, c in g.items()}, -v, rel - v)

    def equal_through(self, other: "QSeries", max_half: int) -> bool:
        """Coefficientwise equality for exponents ``<= max_half``."""
        other = _as_qseries(other)
        for s in (self, other):
            if s.max_half is not None and s.max_half < max_half:
                raise PrecisionError("comparison beyond the known window")
        keys = {h for h in self._terms if h <= max_half} | {h for h in other._terms if h <= max_half}
        return all(self._terms.get(h, 0) == other._terms.get(h, 0) for h in keys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self._terms, self._window()) == (other._terms, other._window())

    def _window(self):
        # the lower bound of an exact series carries no information
        return None if self.max_half is None else (self.min_half, self.max_half)

    def __hash__(self):
        return hash((tuple(sorted(self._terms.items())), self._window()))

    def __str__(self) -> str:
        parts = []
        for h in sorted(self._terms):
            c = self._terms[h]
            mono = _q_str(h)
            if not mono:
                body = format_rational(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{format_rational(abs(c))}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        text = ""
        for k, (sign, body) in enumerate(parts):
            if k == 0:
                text = ("-" if sign == "-" else "") + body
            else:
                text += f" {sign} {body}"
        if self.max_half is not None:
            tail = f"O({_q_str(self.max_half + 1)})"
            text = f"{text} + {tail}" if text else tail
        return text or "0"

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "window": {"min_half": self.min_half, "max_half": self.max_half},
            "terms": [
                {"q_half": h, "coeff": format_rational(self._terms[h])} for h in sorted(self._terms)
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "QSeries":
        w = obj["window"]
        return cls(
            {int(t["q_half"]): parse_rational(t["coeff"]) for t in obj["terms"]},
            w["min_half"],
            w["max_half"],
        )


def _as_qseries(x) -> QSeries:
    if isinstance(x, QSeries):
        return x
    if isinstance(x, (int, Fraction)):
        return QSeries.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a q-series")


def _poly_add(out: dict, p: Mapping, scale: Coeff = 1) -> None:
    for x, c in p.items():
        v = out.get(x, 0) + c * scale
        if v:
            out[x] = v
        else:
            out.pop(x, None)


def _xadd(a: tuple, b: tuple) -> tuple:
    return tuple(i + j for i, j in zip(a, b))


class CharSeries:
    """Graded character: Laurent polynomials in ``x`` graded by ``q^(1/2)``.

    Internally a dict ``q_half -> {x_exponent_tuple: coefficient}``.
    """

    __slots__ = ("rank", "level", "_data", "min_half", "max_half")

    def __init__(
        self,
        rank: int,
        data: Mapping[int, Mapping[tuple, Coeff]] | None = None,
        level: int = 0,
        min_half: int | None = None,
        max_half: int | None = None,
    ):
        clean: dict[int, dict[tuple, Coeff]] = {}
        for h, poly in (data or {}).items():
            if max_half is not None and h > max_half:
                continue
            p = {}
            for x, c in poly.items():
                if c:
                    if len(x) != rank:
                        raise ValueError(f"exponent {x} does not have length {rank}")
                    p[tuple(x)] = _clean(c)
            if p:
                clean[int(h)] = p
        if min_half is None:
            min_half = min(clean) if clean else 0
        elif clean and min(clean) < min_half:
            raise ValueError("term below the declared window")
        self.rank = rank
        self.level = level
        self._data = clean
        self.min_half = min_half
        self.max_half = max_half

    # construction -----------------------------------------------------
    @classmethod
    def from_terms(
        cls,
        rank: int,
        terms: Iterable[tuple[tuple[tuple, int], Coeff]],
        level: int = 0,
        min_half: int | None = None,
        max_half: int | None = None,
    ) -> "CharSeries":
        data: dict[int, dict] = {}
        for (x, h), c in terms:
            p = data.setdefault(h, {})
            p[tuple(x)] = p.get(tuple(x), 0) + c
        return cls(rank, data, level, min_half, max_half)

    @classmethod
    def monomial(
        cls, rank: int, x: Iterable, q_half: int = 0, coeff: Coeff = 1, level: int = 0
    ) -> "CharSeries":
        return cls(rank, {q_half: {tuple(x): coeff}}, level)

    @classmethod
    def one(cls, rank: int, level: int = 0) -> "CharSeries":
        return cls.monomial(rank, (0,) * rank, 0, 1, level)

    @classmethod
    def zero(cls, rank: int, level: int = 0) -> "CharSeries":
        return cls(rank, {}, level)

    # inspection -------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.max_half is None

    def is_zero(self) -> bool:
        return not self._data

    def graded_pieces(self) -> dict[int, dict[tuple, Coeff]]:
        return {h: dict(p) for h, p in self._data.items()}

    def terms(self) -> Iterator[tuple[tuple[tuple, int], Coeff]]:
        """Terms ``((x, q_half), coeff)`` ordered by ``q`` then lex ``x``."""
        for h in sorted(self._data):
            p = self._data[h]
            for x in sorted(p):
                yield (x, h), p[x]

    def coeff(self, x: Iterable, q_half: int) -> Coeff:
        if self.max_half is not None and q_half > self.max_half:
            raise PrecisionError("coefficient lies beyond the window")
        return self._data.get(q_half, {}).get(tuple(x), 0)

    def x_coefficient(self, x: Iterable) -> QSeries:
        """The q-series multiplying ``x^x`` across all degrees."""
        x = tuple(x)
        return QSeries(
            {h: p[x] for h, p in self._data.items() if x in p}, self.min_half, self.max_half
        )

    def x_support(self) -> set:
        return {x for p in self._data.values() for x in p}

    def q_degrees(self) -> list[int]:
        return sorted(self._data)

    def num_terms(self) -> int:
        return sum(len(p) for p in self._data.values())

    # arithmetic -------------------------------------------------------
    def _check_rank(self, other: "CharSeries") -> None:
        if other.rank != self.rank:
            raise ValueError("rank mismatch")

    def __add__(self, other: "CharSeries") -> "CharSeries":
        self._check_rank(other)
        if other.level != self.level and not (other.is_zero() or self.is_zero()):
            raise ValueError(f"cannot add level {self.level} and level {other.level}")
        level = self.level if not self.is_zero() else other.level
        data = {h: dict(p) for h, p in self._data.items()}
        for h, p in other._data.items():
            _poly_add(data.setdefault(h, {}), p)
        return CharSeries(
            self.rank,
            data,
            level,
            min(self.min_half, other.min_half),
            _min_opt(self.max_half, other.max_half),
        )

    def __neg__(self) -> "CharSeries":
        return self.scale(-1)

    def __sub__(self, other: "CharSeries") -> "CharSeries":
        return self + (-other)

    def scale(self, c: Coeff) -> "CharSeries":
        return CharSeries(
            self.rank,
            {h: {x: v * c for x, v in p.items()} for h, p in self._data.items()},
            self.level,
            self.min_half,
            self.max_half,
        )

    def __mul__(self, other) -> "CharSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, QSeries):
            return self.mul_q(other)
        return mul(self, other)

    __rmul__ = __mul__

    def mul_q(self, s: QSeries) -> "CharSeries":
        """Multiply by a scalar q-series."""
        top = _product_max(self.min_half, self.max_half, s.min_half, s.max_half)
        st = s.terms()
        data: dict[int, dict] = {}
        for a, p in self._data.items():
            for b, c in st.items():
                h = a + b
                if top is not None and h > top:
                    continue
                _poly_add(data.setdefault(h, {}), p, c)
        return CharSeries(self.rank, data, self.level, self.min_half + s.min_half, top)

    def shift(self, x: Iterable, q_half: int = 0, level: int = 0) -> "CharSeries":
        """Multiply by the monomial ``q^(q_half/2) x^x`` carrying ``level``."""
        x = tuple(x)
        return CharSeries(
            self.rank,
            {h + q_half: {_xadd(e, x): c for e, c in p.items()} for h, p in self._data.items()},
            self.level + level,
            self.min_half + q_half,
            _add_opt(self.max_half, q_half),
        )

    def map_x(self, fn: Callable[[tuple], tuple]) -> "CharSeries":
        """Apply a bijection to the x-exponents (e.g. a finite Weyl group element)."""
        data = {}
        for h, p in self._data.items():
            q = {}
            for x, c in p.items():
                y = tuple(fn(x))
                q[y] = q.get(y, 0) + c
            data[h] = q
        return CharSeries(self.rank, data, self.level, self.min_half, self.max_half)

    def truncate(self, max_half: int) -> "CharSeries":
        new_max = max_half if self.max_half is None else min(self.max_half, max_half)
        return CharSeries(self.rank, self._data, self.level, min(self.min_half, new_max), new_max)

    def with_level(self, level: int) -> "CharSeries":
        return CharSeries(self.rank, self._data, level, self.min_half, self.max_half)

    def eval_x_one(self) -> QSeries:
        """Specialize every ``x_i`` to 1."""
        return QSeries(
            {h: sum(p.values()) for h, p in self._data.items()}, self.min_half, self.max_half
        )

    # comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, CharSeries):
            return NotImplemented
        return (self.rank, self.level, self._data, self._window()) == (
            other.rank,
            other.level,
            other._data,
            other._window(),
        )

    def _window(self):
        return None if self.max_half is None else (self.min_half, self.max_half)

    def __hash__(self):
        return hash((self.rank, self.level, tuple(self.terms()), self._window()))

    def equal_through(self, other: "CharSeries", max_half: int) -> bool:
        """Coefficientwise equality of all terms with ``q_half <= max_half``."""
        return self.first_difference(other, max_half) is None

    def first_difference(self, other: "CharSeries", max_half: int):
        """First ``((x, q_half), mine, theirs)`` that differs up to ``max_half``, or None."""
        self._check_rank(other)
        for s in (self, other):
            if s.max_half is not None and s.max_half < max_half:
                raise PrecisionError(
                    f"comparison through q_half={max_half} exceeds window max_half={s.max_half}"
                )
        for h in sorted(set(self._data) | set(other._data)):
            if h > max_half:
                break
            a, b = self._data.get(h, {}), other._data.get(h, {})
            for x in sorted(set(a) | set(b)):
                if a.get(x, 0) != b.get(x, 0):
                    return (x, h), a.get(x, 0), b.get(x, 0)
        return None

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*q^({h}/2)*x^{x}" for (x, h), c in self.terms()) or "0"
        return f"CharSeries(rank={self.rank}, level={self.level}, [{self.min_half},{self.max_half}]: {body})"

    # serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "level": self.level,
            "window": {"min_half": self.min_half, "max_half": self.max_half},
            "terms": [
                {"x": list(x), "q_half": h, "coeff": format_rational(c)} for (x, h), c in self.terms()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, obj: Mapping) -> "CharSeries":
        w = obj["window"]
        return cls.from_terms(
            int(obj["rank"]),
            (
                ((tuple(int(v) for v in t["x"]), int(t["q_half"])), parse_rational(t["coeff"]))
                for t in obj["terms"]
            ),
            int(obj["level"]),
            w["min_half"],
            w["max_half"],
        )


def mul(f: CharSeries, g: CharSeries) -> CharSeries:
    """Product with the tightest window guaranteed by both factors."""
    f._check_rank(g)
    top = _product_max(f.min_half, f.max_half, g.min_half, g.max_half)
    lo = f.min_half + g.min_half
    if top is not None and top < lo:
        raise PrecisionError("product window is empty")
    data: dict[int, dict] = {}
    g_items = sorted(g._data.items())
    for a, p in sorted(f._data.items()):
        for b, r in g_items:
            h = a + b
            if top is not None and h > top:
                break
            out = data.setdefault(h, {})
            for x, c in p.items():
                for y, d in r.items():
                    z = tuple(i + j for i, j in zip(x, y))
                    v = out.get(z, 0) + c * d
                    if v:
                        out[z] = v
                    else:
                        del out[z]
    return CharSeries(f.rank, data, f.level + g.level, lo, top)


def star(f: CharSeries) -> CharSeries:
    """Negate every x- and q-exponent and the level.

    Only exact series can be starred: the star of a series that is unknown
    above some power of ``q`` is unknown below a negative power, which is not
    an element of this ring.
    """
    if not f.is_exact:
        raise PrecisionError("star of a truncated series is not a truncated series")
    data = {-h: {tuple(-i for i in x): c for x, c in p.items()} for h, p in f._data.items()}
    return CharSeries(f.rank, data, -f.level)


def constant_term_x(f: CharSeries) -> QSeries:
    """The coefficient of ``x^0`` in every degree, as a q-series."""
    return f.x_coefficient((0,) * f.rank)


def invert_unit(f: CharSeries, max_half: int | None = None) -> CharSeries:
    """Inverse of a series whose lowest q-degree is a single monomial.

    For exact input a target ``max_half`` is required, since the inverse is
    an infinite series.  The result's extremal monomial is the inverse of the
    input's.
    """
    if f.is_zero():
        raise PrecisionError("zero is not a unit")
    v = min(f._data)
    lead_poly = f._data[v]
    if len(lead_poly) != 1:
        raise ValueError("lowest q-degree is not a single monomial; not a unit in this ring")
    ((a, c),) = lead_poly.items()
    c = Fraction(c)
    if f.max_half is None:
        if max_half is None:
            raise ValueError("inverting an exact series needs a target window")
        rel = max_half + v
    else:
        rel = f.max_half - v
        if max_half is not None:
            rel = min(rel, max_half + v)
    if rel < 0:
        raise PrecisionError("not enough precision to invert")
    neg_a = tuple(-i for i in a)
    # u = f / (c x^a q^v) = 1 + h with h in positive degrees
    h: dict[int, dict] = {}
    for k, p in f._data.items():
        if k == v or k - v > rel:
            continue
        h[k - v] = {_xadd(x, neg_a): d / c for x, d in p.items()}
    zero = (0,) * f.rank
    g: dict[int, dict] = {0: {zero: Fraction(1)}}
    for n in range(1, rel + 1):
        acc: dict = {}
        for k, hp in h.items():
            if k > n or (n - k) not in g:
                continue
            gp = g[n - k]
            for x, d in hp.items():
                for y, e in gp.items():
                    z = _xadd(x, y)
                    val = acc.get(z, 0) - d * e
                    if val:
                        acc[z] = val
                    else:
                        del acc[z]
        if acc:
            g[n] = acc
    data = {n - v: {_xadd(x, neg_a): e / c for x, e in p.items()} for n, p in g.items()}
    return CharSeries(f.rank, data, -f.level, -v, rel - v)


def solve_linear(matrix: list[list[QSeries]], rhs: list[QSeries]) -> list[QSeries]:
    """Solve ``matrix @ a = rhs`` over truncated q-series.

    Gauss-Jordan elimination choosing, in each column, the entry of lowest
    q-valuation as pivot.  A column with no nonzero entry inside the known
    window raises :class:`PrecisionError`.
    """
    n = len(rhs)
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    for col in range(n):
        best = None
        for r in range(col, n):
            v = rows[r][col].valuation()
            if v is not None and (best is None or v < best[0]):
                best = (v, r)
        if best is None:
            raise PrecisionError("singular pivot within the window; use a larger window")
        rows[col], rows[best[1]] = rows[best[1]], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col].valuation() is not None:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]
