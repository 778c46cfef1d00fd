"""Seeded random generators for positions, diagrams, states and sets."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .ordered_index import FiniteExplicit, IndexDomain, Label, Position, Side
from .ordinals import Ordinal
from .parity import Interval, ParityConfig, RepresentableSet
from .sector import SeaDiagram, Sector, SectorState
from .fields import OneParticleVector


def position(d: IndexDomain, rng: random.Random, side: Optional[Side] = None) -> Position:
    if side is None:
        side = rng.choice([s for s in Side if d.sample_coords(s)])
    return d.point(side, rng.choice(d.sample_coords(side)))


def distinct_positions(d: IndexDomain, rng: random.Random, k: int,
                       side: Optional[Side] = None) -> list:
    pool = [x for x in d.sample_positions() if side is None or d.side(x) is side]
    return rng.sample(pool, min(k, len(pool)))


def diagram(sector: Sector, rng: random.Random, max_size: int = 3) -> SeaDiagram:
    d = sector.domain
    sea = [x for x in d.sample_positions() if sector.in_sea(x)]
    rest = [x for x in d.sample_positions() if not sector.in_sea(x)]
    holes = rng.sample(sea, rng.randint(0, min(max_size, len(sea))))
    parts = rng.sample(rest, rng.randint(0, min(max_size, len(rest))))
    return sector.diagram(holes, parts)


def coefficient(rng: random.Random, exact: bool):
    if exact:
        return (Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
                Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
    return complex(rng.uniform(-1, 1), rng.uniform(-1, 1))


def state(sector: Sector, rng: random.Random, exact: bool = True, max_terms: int = 3,
          max_size: int = 3) -> SectorState:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[diagram(sector, rng, max_size)] = coefficient(rng, exact)
    return SectorState(sector, terms, exact)


def vector(d: IndexDomain, rng: random.Random, exact: bool = True, max_support: int = 3,
           pool=None) -> OneParticleVector:
    pool = list(pool if pool is not None else d.sample_positions())
    support = rng.sample(pool, rng.randint(1, min(max_support, len(pool))))
    return OneParticleVector(d, {x: coefficient(rng, exact) for x in support}, exact)


def parity_config(rng: random.Random, p: Optional[int] = None) -> ParityConfig:
    p = rng.randint(0, 1) if p is None else p
    if rng.random() < 0.5:
        return ParityConfig(p=p, mode="constant", value=rng.randint(0, 1))
    return ParityConfig.seeded(rng.getrandbits(32), p=p)


def finite_domain(rng: random.Random, n: int, balanced: bool = False) -> FiniteExplicit:
    """Random side assignment on ``n`` ordered labels."""
    if balanced:
        sides = [Side.MINUS] * (n // 2) + [Side.PLUS] * (n - n // 2)
        rng.shuffle(sides)
    else:
        sides = [rng.choice(list(Side)) for _ in range(n)]
    return FiniteExplicit.from_sides(sides)


def reorder(d: FiniteExplicit, rng: random.Random) -> FiniteExplicit:
    """Same labels and sides, random new order."""
    ranks = list(range(len(d)))
    rng.shuffle(ranks)
    return FiniteExplicit(tuple(Label(p.name, r, p.side) for p, r in zip(d.ordered, ranks)))


def interval(d: IndexDomain, rng: random.Random, side: Optional[Side] = None) -> Interval:
    if side is None:
        side = rng.choice(list(Side))
    cands = d.boundary_candidates(side)
    lo, hi = sorted(rng.sample(cands, 2))
    return Interval(side, lo, hi)


def representable_set(d: IndexDomain, rng: random.Random, max_intervals: int = 3,
                      max_points: int = 3) -> RepresentableSet:
    ivs = [interval(d, rng) for _ in range(rng.randint(0, max_intervals))
           if len(d.boundary_candidates(Side.MINUS)) > 1 and len(d.boundary_candidates(Side.PLUS)) > 1]
    pts = distinct_positions(d, rng, rng.randint(0, max_points))
    return RepresentableSet.from_parts(d, ivs, pts)


def reencoding(s: RepresentableSet, rng: random.Random) -> tuple[list, list]:
    """A different raw ``(intervals, points)`` encoding of the same set.

    Intervals are split, cancelling pairs are inserted, and finite pieces are
    traded for points; the symmetric difference of everything is ``s``.
    """
    d = s.domain
    intervals, points = [], []
    for iv in s.intervals():
        n = iv.length()
        if n != float("inf") and n <= 4 and rng.random() < 0.5:
            points.extend(d.point(iv.side, iv.lo + k) for k in range(n))
            continue
        mid = _midpoint(iv, rng)
        if mid is not None:
            intervals += [Interval(iv.side, iv.lo, mid), Interval(iv.side, mid, iv.hi)]
        else:
            intervals.append(iv)
    for _ in range(rng.randint(0, 2)):
        extra = interval(d, rng)
        intervals += [extra, extra]
    taken = set(points)
    for _ in range(rng.randint(0, 2)):
        x = position(d, rng)
        if x in taken:
            continue
        taken.add(x)
        c = d.coord(x)
        points.append(x)
        intervals.append(Interval(d.side(x), c, c.successor()))
    rng.shuffle(intervals)
    rng.shuffle(points)
    return intervals, points


def _midpoint(iv: Interval, rng: random.Random) -> Optional[Ordinal]:
    inside = [c for c in _coords_between(iv.lo, iv.hi)]
    return rng.choice(inside) if inside else None


def _coords_between(lo: Ordinal, hi: Ordinal):
    for cand in (lo + 1, lo + 2, hi.limit_part if not hi.limit_part.is_zero else None):
        if cand is not None and lo < cand < hi:
            yield cand
