"""Totally ordered index sets ``X = X- ⊔ X+`` and their positions.

Each side of a domain is a *stratum*.  Points of a stratum carry an ordinal
*coordinate* starting at 1, and the stratum's points are exactly the
coordinates in ``[1, top)``.  Depending on the domain the X-order runs with
the coordinates (``reversed=False``) or against them, which lets every
built-in order be handled by the same interval bookkeeping:

* ``ReversedIntegers``: ``X = Z*`` with the reverse of the usual order,
  so ``... < 2 < 1 < -1 < -2 < ...``.  ``-n`` has coordinate ``n`` on the minus
  side; ``n`` has coordinate ``n`` on the (reversed) plus side.
* ``OrdinalSum``: ``X = L-* ⊔ L+*``, plus points below minus points, minus
  points in ordinal order and plus points in reverse ordinal order.
* ``FiniteExplicit``: finitely many labels ordered by rank, sides arbitrarily
  interleaved; coordinates count the labels of a side in rank order.
"""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Union

from .errors import DomainMismatch
from .ordinals import ONE, OMEGA, Ordinal


class Side(enum.Enum):
    MINUS = "minus"
    PLUS = "plus"

    @property
    def other(self) -> Side:
        return Side.PLUS if self is Side.MINUS else Side.MINUS


class Bound(enum.Enum):
    NEG_INF = "-inf"
    POS_INF = "+inf"


NEG_INF = Bound.NEG_INF
POS_INF = Bound.POS_INF


class Stratum(enum.Enum):
    """Which part of X an interval count ranges over."""

    SEA = "sea"
    COMPLEMENT = "complement"
    WHOLE = "whole"

    @property
    def sides(self) -> tuple[Side, ...]:
        if self is Stratum.SEA:
            return (Side.MINUS,)
        if self is Stratum.COMPLEMENT:
            return (Side.PLUS,)
        return (Side.MINUS, Side.PLUS)


class Order(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class SignedInteger:
    n: int

    def __post_init__(self):
        if self.n == 0:
            raise ValueError("SignedInteger excludes 0")

    def __str__(self):
        return str(self.n)


@dataclass(frozen=True)
class OrdinalPoint:
    side: Side
    ordinal: Ordinal

    def __post_init__(self):
        if self.ordinal.is_zero:
            raise ValueError("ordinal points exclude 0")

    def __str__(self):
        return f"{'-' if self.side is Side.MINUS else '+'}{self.ordinal}"


@dataclass(frozen=True)
class Label:
    name: str
    rank: int
    side: Side

    def __str__(self):
        return self.name


Position = Union[SignedInteger, OrdinalPoint, Label]
Endpoint = Union[SignedInteger, OrdinalPoint, Label, Bound]


def interval_length(lo: Ordinal, hi: Ordinal) -> Union[int, float]:
    """Number of coordinates in ``[lo, hi)``; ``math.inf`` when infinite."""
    if hi <= lo:
        return 0
    if lo.same_block(hi):
        return hi.finite_part - lo.finite_part
    return math.inf


class IndexDomain:
    """Common interface of the built-in domains.  Instances are immutable."""

    kind: str = ""

    # -- per-domain hooks -------------------------------------------------
    def contains(self, x) -> bool:
        raise NotImplementedError

    def side(self, x: Position) -> Side:
        raise NotImplementedError

    def coord(self, x: Position) -> Ordinal:
        raise NotImplementedError

    def point(self, side: Side, coord: Ordinal) -> Position:
        raise NotImplementedError

    def top(self, side: Side) -> Ordinal:
        raise NotImplementedError

    def reversed(self, side: Side) -> bool:
        raise NotImplementedError

    def key(self, x: Position):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def _down_anchor(self, side: Side, x: Position) -> Ordinal:
        """Boundary coordinate of ``{y in side : y <= x}`` for a position x."""
        raise NotImplementedError

    # -- shared machinery -------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.top(Side.MINUS).is_finite and self.top(Side.PLUS).is_finite

    def check(self, x) -> Position:
        if not self.contains(x):
            raise DomainMismatch(f"{x!r} is not a position of {self.kind} domain")
        return x

    def compare(self, x: Position, y: Position) -> Order:
        kx, ky = self.key(self.check(x)), self.key(self.check(y))
        if kx < ky:
            return Order.LESS
        if kx > ky:
            return Order.GREATER
        return Order.EQUAL

    def sorted(self, points: Iterable[Position]) -> tuple[Position, ...]:
        return tuple(sorted(points, key=self.key))

    def down_coords(self, side: Side, x: Endpoint) -> tuple[Ordinal, Ordinal]:
        """Coordinate interval ``[a, b)`` of the points of ``side`` that are ``<= x``."""
        top = self.top(side)
        if x is NEG_INF:
            return (ONE, ONE) if not self.reversed(side) else (top, top)
        if x is POS_INF:
            return (ONE, top)
        self.check(x)
        anchor = self._down_anchor(side, x)
        if self.reversed(side):
            return (anchor, top)
        return (ONE, anchor)

    def segment_coords(self, side: Side, lo: Endpoint, hi: Endpoint) -> tuple[Ordinal, Ordinal]:
        """Coordinate interval of the points of ``side`` in the X-interval ``(lo, hi]``."""
        d_lo, d_hi = self.down_coords(side, lo), self.down_coords(side, hi)
        if self.reversed(side):
            return (d_hi[0], max(d_hi[0], d_lo[0]))
        return (d_lo[1], max(d_lo[1], d_hi[1]))

    def endpoint_le(self, lo: Endpoint, hi: Endpoint) -> bool:
        if lo is NEG_INF or hi is POS_INF:
            return True
        if lo is POS_INF or hi is NEG_INF:
            return lo == hi
        return self.key(self.check(lo)) <= self.key(self.check(hi))

    def interval_count_in(self, stratum: Stratum, lo: Endpoint, hi: Endpoint):
        """Size of ``{x in stratum : lo < x <= hi}``; ``math.inf`` if infinite.

        The interval is open at ``lo`` and closed at ``hi`` so that
        ``(NEG_INF, x]`` is the down-set of ``x``, endpoint included.
        """
        if not self.endpoint_le(lo, hi):
            raise ValueError(f"empty range: {lo} > {hi}")
        total = 0
        for side in Stratum(stratum).sides:
            a, b = self.segment_coords(side, lo, hi)
            total += interval_length(a, b)
        return total

    def sample_coords(self, side: Side) -> tuple[Ordinal, ...]:
        """Small representative set of coordinates, including ones at limit points."""
        top = self.top(side)
        if top.is_finite:
            return tuple(Ordinal.of(i) for i in range(1, top.finite_part))
        cands = {Ordinal.of(i) for i in range(1, 5)}
        limits = [OMEGA, Ordinal.omega(1, 2), Ordinal.omega(2), Ordinal.omega(2) + OMEGA,
                  Ordinal.omega(3), Ordinal.omega(4)]
        for lam in limits:
            for k in range(3):
                cands.add(lam + k)
        return tuple(sorted(c for c in cands if c < top))

    def boundary_candidates(self, side: Side) -> tuple[Ordinal, ...]:
        top = self.top(side)
        cands = set(self.sample_coords(side))
        cands |= {c.successor() for c in cands}
        cands.add(top)
        cands.add(ONE)
        return tuple(sorted(c for c in cands if c <= top))

    def sample_positions(self) -> tuple[Position, ...]:
        return _sample_positions(self)


@lru_cache(maxsize=64)
def _sample_positions(d: IndexDomain) -> tuple[Position, ...]:
    return d.sorted(d.point(s, c) for s in Side for c in d.sample_coords(s))


@dataclass(frozen=True)
class ReversedIntegers(IndexDomain):
    """``Z*`` with the reverse of the usual order; the sea is ``Z-``."""

    kind = "reversed_integers"

    def contains(self, x) -> bool:
        return isinstance(x, SignedInteger)

    def side(self, x):
        return Side.MINUS if self.check(x).n < 0 else Side.PLUS

    def coord(self, x):
        return Ordinal.of(abs(self.check(x).n))

    def point(self, side, coord):
        if not coord.is_finite or coord.is_zero:
            raise DomainMismatch(f"coordinate {coord} is not a nonzero integer")
        n = coord.finite_part
        return SignedInteger(-n if side is Side.MINUS else n)

    def top(self, side):
        return OMEGA

    def reversed(self, side):
        return side is Side.PLUS

    def key(self, x):
        return -x.n

    def _down_anchor(self, side, x):
        n = x.n
        if side is Side.MINUS:
            return Ordinal.of(-n + 1) if n < 0 else ONE
        return Ordinal.of(n) if n > 0 else ONE

    def to_json(self):
        return {"kind": self.kind}

    def sample_coords(self, side):
        return tuple(Ordinal.of(i) for i in range(1, 9))


@dataclass(frozen=True)
class OrdinalSum(IndexDomain):
    """``L-* ⊔ L+*`` with every plus point below every minus point."""

    minus: Ordinal = Ordinal.omega(2)
    plus: Ordinal = OMEGA
    max_exponent: int = 5

    kind = "ordinal_sum"

    def __post_init__(self):
        for name in ("minus", "plus"):
            lam = getattr(self, name)
            if not isinstance(lam, Ordinal):
                lam = Ordinal.parse(lam)
                object.__setattr__(self, name, lam)
            if lam.is_finite:
                raise ValueError(f"{name} ordinal must be infinite, got {lam}")
            if lam.degree >= self.max_exponent:
                raise ValueError(f"{name} ordinal {lam} exceeds exponent cap {self.max_exponent}")

    def contains(self, x) -> bool:
        return isinstance(x, OrdinalPoint) and x.ordinal < self.top(x.side)

    def side(self, x):
        return self.check(x).side

    def coord(self, x):
        return self.check(x).ordinal

    def point(self, side, coord):
        return self.check(OrdinalPoint(side, coord))

    def top(self, side):
        return self.minus if side is Side.MINUS else self.plus

    def reversed(self, side):
        return side is Side.PLUS

    def key(self, x):
        if x.side is Side.MINUS:
            return (1, x.ordinal.terms)
        # reverse the CNF order; the trailing sentinel makes prefixes compare larger
        return (0, tuple((-e, -c) for e, c in x.ordinal.terms) + ((1, 0),))

    def _down_anchor(self, side, x):
        if side is Side.MINUS:
            return x.ordinal.successor() if x.side is Side.MINUS else ONE
        return x.ordinal if x.side is Side.PLUS else ONE

    def to_json(self):
        return {"kind": self.kind, "minus": str(self.minus), "plus": str(self.plus)}


@dataclass(frozen=True)
class FiniteExplicit(IndexDomain):
    """Finitely many labels, ordered by rank; minus labels form the sea."""

    points: tuple[Label, ...] = ()

    kind = "finite"

    def __post_init__(self):
        names = [p.name for p in self.points]
        ranks = [p.rank for p in self.points]
        if len(set(names)) != len(names):
            raise ValueError("label names must be unique")
        if len(set(ranks)) != len(ranks):
            raise ValueError("label ranks must be unique")

    @classmethod
    def from_sides(cls, sides: Iterable[Union[Side, str]], names: Optional[Iterable[str]] = None):
        """Build a domain whose i-th point (in order) has the i-th side."""
        sides = [Side(s) for s in sides]
        if names is None:
            names = [f"x{i}" for i in range(len(sides))]
        return cls(tuple(Label(nm, i, s) for i, (nm, s) in enumerate(zip(names, sides))))

    @cached_property
    def _by_side(self) -> dict:
        out = {Side.MINUS: [], Side.PLUS: []}
        for p in sorted(self.points, key=lambda p: p.rank):
            out[p.side].append(p)
        return out

    @cached_property
    def _coords(self) -> dict:
        return {p: i + 1 for s in Side for i, p in enumerate(self._by_side[s])}

    @cached_property
    def _ranks(self) -> dict:
        return {s: [p.rank for p in self._by_side[s]] for s in Side}

    @cached_property
    def _names(self) -> dict:
        return {p.name: p for p in self.points}

    def label(self, name: str) -> Label:
        try:
            return self._names[name]
        except KeyError:
            raise DomainMismatch(f"no label named {name!r}") from None

    @property
    def ordered(self) -> tuple[Label, ...]:
        return tuple(sorted(self.points, key=lambda p: p.rank))

    def __len__(self):
        return len(self.points)

    def contains(self, x) -> bool:
        return isinstance(x, Label) and x in self._coords

    def side(self, x):
        return self.check(x).side

    def coord(self, x):
        return Ordinal.of(self._coords[self.check(x)])

    def point(self, side, coord):
        labels = self._by_side[side]
        if coord.is_finite and 1 <= coord.finite_part <= len(labels):
            return labels[coord.finite_part - 1]
        raise DomainMismatch(f"no {side.value} label with coordinate {coord}")

    def top(self, side):
        return Ordinal.of(len(self._by_side[side]) + 1)

    def reversed(self, side):
        return False

    def key(self, x):
        return x.rank

    def _down_anchor(self, side, x):
        return Ordinal.of(bisect.bisect_right(self._ranks[side], x.rank) + 1)

    def to_json(self):
        return {"kind": self.kind,
                "points": [{"name": p.name, "side": p.side.value} for p in self.ordered]}

    def sample_coords(self, side):
        return tuple(Ordinal.of(i) for i in range(1, len(self._by_side[side]) + 1))


# -- JSON --------------------------------------------------------------------

def domain_from_json(obj) -> IndexDomain:
    if isinstance(obj, str):
        obj = {"kind": obj}
    kind = obj.get("kind")
    if kind == "reversed_integers":
        return ReversedIntegers()
    if kind == "ordinal_sum":
        return OrdinalSum(Ordinal.parse(obj.get("minus", "w^2")), Ordinal.parse(obj.get("plus", "w")))
    if kind == "finite":
        pts = obj.get("points", [])
        return FiniteExplicit(tuple(Label(p["name"], i, Side(p["side"])) for i, p in enumerate(pts)))
    raise ValueError(f"unknown domain kind {kind!r}")


def position_to_json(x: Position):
    if isinstance(x, SignedInteger):
        return x.n
    if isinstance(x, OrdinalPoint):
        return {"side": x.side.value, "ordinal": str(x.ordinal)}
    return x.name


def position_from_json(d: IndexDomain, obj) -> Position:
    if isinstance(d, ReversedIntegers):
        if not isinstance(obj, int) or isinstance(obj, bool) or obj == 0:
            raise DomainMismatch(f"expected a nonzero integer, got {obj!r}")
        return d.check(SignedInteger(obj))
    if isinstance(d, OrdinalSum):
        if not isinstance(obj, dict):
            raise DomainMismatch(f"expected {{side, ordinal}}, got {obj!r}")
        return d.check(OrdinalPoint(Side(obj["side"]), Ordinal.parse(obj["ordinal"])))
    if isinstance(d, FiniteExplicit):
        return d.label(obj)
    raise DomainMismatch(f"unsupported domain {d!r}")
