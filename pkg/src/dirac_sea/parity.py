"""A parity homomorphism on the interval-generated subalgebra of P(X).

Subsets handled here are finite symmetric differences of half-open coordinate
intervals ``[lo, hi)`` inside one stratum (finite sets are unions of unit
intervals).  Such a set is determined by its *boundary*: the coordinates at
which membership toggles.  Boundaries of a symmetric difference are the
symmetric difference of boundaries, so the boundary tuple is a canonical
encoding closed under Δ.

The parity of ``[lo, hi)`` is ``beta(hi) - beta(lo)`` where ``beta(g)`` is the
parity assigned to ``[1, g)``.  For finite ``g`` this is ``g - 1``; for
``g = lam + n`` with ``lam`` a nonzero limit it is ``choice(lam) + n``, the
choice being free except for the single pin that forces ``parity(X) = p``.
Summing ``beta`` over the boundary points (mod 2) gives a map that is additive
on disjoint unions and hence a homomorphism ``(algebra, Δ) -> Z/2``.
"""

from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import DomainMismatch, NotRepresentable
from .ordered_index import (NEG_INF, POS_INF, Endpoint, IndexDomain, Position, Side,
                            Stratum, interval_length)
from .ordinals import ONE, Ordinal


@dataclass(frozen=True)
class ParityConfig:
    """Value of ``parity(X)`` plus the rule choosing parities at limit points.

    ``mode="constant"`` assigns ``value`` to every limit; ``mode="seeded"``
    draws an independent deterministic bit per (stratum, limit) from ``seed``.
    """

    p: int = 0
    mode: str = "constant"
    value: int = 0
    seed: Optional[int] = None

    def __post_init__(self):
        if self.p not in (0, 1) or self.value not in (0, 1):
            raise ValueError("parities live in {0, 1}")
        if self.mode not in ("constant", "seeded"):
            raise ValueError(f"unknown limit_choice mode {self.mode!r}")
        if self.mode == "seeded" and self.seed is None:
            raise ValueError("seeded limit_choice needs a seed")

    @classmethod
    def seeded(cls, seed: int, p: int = 0) -> ParityConfig:
        return cls(p=p, mode="seeded", seed=seed)

    def limit_bit(self, side: Side, limit: Ordinal) -> int:
        if self.mode == "constant":
            return self.value
        return _seeded_bit(self.seed, side.value, str(limit))

    def to_json(self) -> dict:
        if self.mode == "constant":
            choice = {"mode": "constant", "value": self.value}
        else:
            choice = {"mode": "seeded", "seed": self.seed}
        return {"p": self.p, "limit_choice": choice}

    @classmethod
    def from_json(cls, obj: dict) -> ParityConfig:
        choice = obj.get("limit_choice", {"mode": "constant", "value": 0})
        mode = choice.get("mode", "constant")
        if mode == "constant":
            return cls(p=int(obj.get("p", 0)), value=int(choice.get("value", 0)))
        return cls(p=int(obj.get("p", 0)), mode="seeded", seed=int(choice["seed"]))


@lru_cache(maxsize=None)
def _seeded_bit(seed: int, side: str, limit: str) -> int:
    return random.Random(f"{seed}|{side}|{limit}").getrandbits(1)


def _pinned_side(d: IndexDomain) -> Optional[Side]:
    # the limit choice at the top of this stratum absorbs the value of parity(X)
    if not d.top(Side.PLUS).is_finite:
        return Side.PLUS
    if not d.top(Side.MINUS).is_finite:
        return Side.MINUS
    return None


def boundary_parity(d: IndexDomain, cfg: ParityConfig, side: Side, g: Ordinal) -> int:
    """Parity of the coordinate interval ``[1, g)`` of ``side``."""
    lam = g.limit_part
    if lam.is_zero:
        return (g.finite_part - 1) % 2
    return (_limit_value(d, cfg, side, lam) + g.finite_part) % 2


def _limit_value(d: IndexDomain, cfg: ParityConfig, side: Side, lam: Ordinal) -> int:
    top = d.top(side)
    if side is _pinned_side(d) and lam == top.limit_part:
        other = side.other
        rest = boundary_parity(d, cfg, other, d.top(other))
        return (cfg.p - rest - top.finite_part) % 2
    return cfg.limit_bit(side, lam)


@dataclass(frozen=True)
class Interval:
    """Coordinates ``[lo, hi)`` of one stratum."""

    side: Side
    lo: Ordinal
    hi: Ordinal

    def __post_init__(self):
        if not (ONE <= self.lo < self.hi):
            raise ValueError(f"degenerate interval [{self.lo}, {self.hi})")

    def length(self):
        return interval_length(self.lo, self.hi)


def _xor_into(acc: set, items: Iterable[Ordinal]) -> None:
    for b in items:
        if b in acc:
            acc.remove(b)
        else:
            acc.add(b)


@dataclass(frozen=True)
class RepresentableSet:
    """A subset of X kept as per-stratum boundary tuples (canonical form)."""

    domain: IndexDomain
    minus: tuple[Ordinal, ...] = ()
    plus: tuple[Ordinal, ...] = ()
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    # -- construction -----------------------------------------------------
    @classmethod
    def _from_boundary_sets(cls, d, minus: set, plus: set) -> RepresentableSet:
        return cls(d, tuple(sorted(minus)), tuple(sorted(plus)))

    @classmethod
    def from_parts(cls, d: IndexDomain, intervals: Iterable[Interval] = (),
                   points: Iterable[Position] = ()) -> RepresentableSet:
        """The symmetric difference of all given intervals and points.

        For pairwise disjoint pieces this is just their union.
        """
        acc = {Side.MINUS: set(), Side.PLUS: set()}
        for iv in intervals:
            if iv.hi > d.top(iv.side):
                raise DomainMismatch(f"interval end {iv.hi} beyond top {d.top(iv.side)}")
            _xor_into(acc[iv.side], (iv.lo, iv.hi))
        for x in points:
            side, c = d.side(x), d.coord(x)
            _xor_into(acc[side], (c, c.successor()))
        return cls._from_boundary_sets(d, acc[Side.MINUS], acc[Side.PLUS])

    @classmethod
    def empty(cls, d: IndexDomain) -> RepresentableSet:
        return cls(d)

    @classmethod
    def finite(cls, d: IndexDomain, points: Iterable[Position]) -> RepresentableSet:
        pts = set(points)
        return cls.from_parts(d, points=pts)

    @classmethod
    def stratum(cls, d: IndexDomain, stratum: Stratum) -> RepresentableSet:
        return cls.segment(d, NEG_INF, POS_INF, stratum)

    @classmethod
    def whole(cls, d: IndexDomain) -> RepresentableSet:
        return cls.stratum(d, Stratum.WHOLE)

    @classmethod
    def segment(cls, d: IndexDomain, lo: Endpoint, hi: Endpoint,
                stratum: Stratum = Stratum.WHOLE) -> RepresentableSet:
        """``{x in stratum : lo < x <= hi}`` in the order of ``d``."""
        if not d.endpoint_le(lo, hi):
            raise ValueError(f"empty range: {lo} > {hi}")
        ivs = []
        for side in Stratum(stratum).sides:
            a, b = d.segment_coords(side, lo, hi)
            if a < b:
                ivs.append(Interval(side, a, b))
        return cls.from_parts(d, ivs)

    @classmethod
    def down_set(cls, d: IndexDomain, x: Endpoint, stratum: Stratum = Stratum.WHOLE):
        return cls.segment(d, NEG_INF, x, stratum)

    # -- algebra ----------------------------------------------------------
    def boundaries(self, side: Side) -> tuple[Ordinal, ...]:
        return self.minus if side is Side.MINUS else self.plus

    def sym_diff(self, other: RepresentableSet) -> RepresentableSet:
        return sym_diff(self, other)

    __xor__ = sym_diff

    def __and__(self, other: RepresentableSet) -> RepresentableSet:
        return intersection(self, other)

    def __or__(self, other: RepresentableSet) -> RepresentableSet:
        return self ^ other ^ (self & other)

    def complement(self) -> RepresentableSet:
        return self ^ RepresentableSet.whole(self.domain)

    def __contains__(self, x: Position) -> bool:
        bs = self.boundaries(self.domain.side(x))
        return bisect.bisect_right(bs, self.domain.coord(x)) % 2 == 1

    def intervals(self) -> tuple[Interval, ...]:
        out = []
        for side in Side:
            bs = self.boundaries(side)
            out.extend(Interval(side, bs[i], bs[i + 1]) for i in range(0, len(bs), 2))
        return tuple(out)

    @property
    def size(self):
        """Cardinality, or ``math.inf``."""
        return sum((iv.length() for iv in self.intervals()), 0)

    @property
    def is_finite(self) -> bool:
        return self.size != math.inf

    # -- canonical base/delta encoding --------------------------------------
    @property
    def base(self) -> tuple[Interval, ...]:
        """Maximal infinite intervals of the set."""
        return tuple(iv for iv in self.intervals() if iv.length() == math.inf)

    @property
    def delta(self) -> tuple[Position, ...]:
        """Points of the finite maximal intervals, in the order of the domain."""
        d = self.domain
        pts = []
        for iv in self.intervals():
            n = iv.length()
            if n != math.inf:
                pts.extend(d.point(iv.side, iv.lo + k) for k in range(n))
        return d.sorted(pts)

    def points(self) -> tuple[Position, ...]:
        if not self.is_finite:
            raise ValueError("set is infinite")
        return self.delta


def sym_diff(s: RepresentableSet, t: RepresentableSet) -> RepresentableSet:
    if s.domain != t.domain:
        raise DomainMismatch("sets live in different domains")
    out = {}
    for side in Side:
        acc = set(s.boundaries(side))
        _xor_into(acc, t.boundaries(side))
        out[side] = acc
    return RepresentableSet._from_boundary_sets(s.domain, out[Side.MINUS], out[Side.PLUS])


def _intersect_side(a: tuple, b: tuple) -> list:
    ia = [(a[i], a[i + 1]) for i in range(0, len(a), 2)]
    ib = [(b[i], b[i + 1]) for i in range(0, len(b), 2)]
    out, i, k = set(), 0, 0
    while i < len(ia) and k < len(ib):
        lo, hi = max(ia[i][0], ib[k][0]), min(ia[i][1], ib[k][1])
        if lo < hi:
            _xor_into(out, (lo, hi))
        if ia[i][1] < ib[k][1]:
            i += 1
        else:
            k += 1
    return out


def intersection(s: RepresentableSet, t: RepresentableSet) -> RepresentableSet:
    if s.domain != t.domain:
        raise DomainMismatch("sets live in different domains")
    return RepresentableSet._from_boundary_sets(
        s.domain, _intersect_side(s.minus, t.minus), _intersect_side(s.plus, t.plus))


def parity(s: RepresentableSet, cfg: ParityConfig, d: Optional[IndexDomain] = None) -> int:
    """Element of Z/2 assigned to the set (its cardinality mod 2 when finite)."""
    d = s.domain if d is None else d
    if d != s.domain:
        raise DomainMismatch("set does not belong to the given domain")
    key = ("parity", cfg)
    hit = s._cache.get(key)
    if hit is not None:
        return hit
    total = 0
    for side in Side:
        for b in s.boundaries(side):
            total += boundary_parity(d, cfg, side, b)
    total %= 2
    s._cache[key] = total
    return total


def parity_of_encoding(d: IndexDomain, intervals: Sequence[Interval], delta: Iterable[Position],
                       cfg: ParityConfig) -> int:
    """Parity of ``(Δ intervals) Δ delta`` straight from a raw, non-canonical encoding."""
    total = 0
    for iv in intervals:
        if iv.hi > d.top(iv.side):
            raise NotRepresentable(f"interval end {iv.hi} beyond top {d.top(iv.side)}")
        total += boundary_parity(d, cfg, iv.side, iv.hi) - boundary_parity(d, cfg, iv.side, iv.lo)
    total += len(set(delta))
    return total % 2
