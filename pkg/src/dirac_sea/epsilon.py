"""Sign functions on diagrams.

``epsilon(I, j) = (-1)^(parity(I_j) + 1)`` with ``I_j = I ∩ {y <= j}``.  Since
``I = A Δ holes Δ particles`` and parity is a homomorphism, the parity of the
truncation splits into the parity of ``A ∩ {y <= j}`` (cached per ``j``) plus
the number of holes and particles at or below ``j``.

``naive_ordinal_sign`` is the Cantor-normal-form sign ``(-1)^N`` for
``s = lambda + N``.  It is kept as a regression oracle: it is blind to the
removal of a single point below a limit, so it violates the anticommutation
sign law that ``epsilon`` satisfies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotMember, NotWellOrdered
from .ordered_index import Position, Side
from .ordinals import Ordinal, ordinal_sum
from .parity import ParityConfig, RepresentableSet, intersection, parity
from .sector import SeaDiagram, Sector, side_stratum


@dataclass(frozen=True)
class SignContext:
    sector: Sector
    cfg: ParityConfig = ParityConfig()
    _sea_parity: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    @classmethod
    def dirac(cls, domain, cfg: ParityConfig = ParityConfig()) -> SignContext:
        return cls(Sector.dirac(domain), cfg)

    @property
    def domain(self):
        return self.sector.domain

    def sea_parity(self, j: Position) -> int:
        """Parity of ``A ∩ {y <= j}``."""
        hit = self._sea_parity.get(j)
        if hit is None:
            d = self.domain
            part = RepresentableSet.empty(d)
            for side in self.sector.reference:
                part = part ^ RepresentableSet.down_set(d, j, side_stratum(side))
            hit = self._sea_parity[j] = parity(part, self.cfg)
        return hit


def epsilon(diagram: SeaDiagram, j: Position, ctx: SignContext) -> int:
    """``+1`` or ``-1``; raises :class:`NotMember` unless ``j`` lies in the diagram."""
    sector = ctx.sector
    if not sector.contains(diagram, j):
        raise NotMember(f"{j} is not an element of {diagram}")
    key = sector.domain.key
    kj = key(j)
    n = ctx.sea_parity(j)
    for h in diagram.holes:
        if key(h) <= kj:
            n += 1
    for q in diagram.particles:
        if key(q) <= kj:
            n += 1
    return 1 if n % 2 else -1


def truncation(diagram: SeaDiagram, j: Position, sector: Sector) -> RepresentableSet:
    """``I ∩ {y <= j}`` as a representable set."""
    d = sector.domain
    return intersection(sector.as_set(diagram), RepresentableSet.down_set(d, j))


def _order_type(s: RepresentableSet) -> Ordinal:
    d = s.domain
    if s.is_finite:
        return Ordinal.of(s.size)
    # infinite sets only occur in the ordinal-type domains, where X+ lies below X-
    parts = []
    for side in (Side.PLUS, Side.MINUS):
        ivs = [iv for iv in s.intervals() if iv.side is side]
        if d.reversed(side):
            n = sum(iv.length() for iv in ivs)
            if n == float("inf"):
                raise NotWellOrdered(f"infinite subset of the reversed {side.value} stratum")
            parts.append(Ordinal.of(n))
        else:
            parts.extend(iv.hi.remainder_after(iv.lo) for iv in ivs)
    return ordinal_sum(parts)


def ordinal_index(diagram: SeaDiagram, j: Position, sector: Sector) -> Ordinal:
    """1-based position ``s`` of ``j`` when the diagram is enumerated upward in X."""
    if not sector.contains(diagram, j):
        raise NotMember(f"{j} is not an element of {diagram}")
    d = sector.domain
    below = truncation(diagram, j, sector) ^ RepresentableSet.finite(d, [j])
    return _order_type(below).one_plus()


def naive_ordinal_sign(diagram: SeaDiagram, j: Position, sector) -> int:
    """``(-1)^N`` where ``s = lambda + N`` is the Cantor normal form of the index of ``j``.

    ``sector`` may also be a bare domain, meaning its Dirac sector.
    """
    if not isinstance(sector, Sector):
        sector = Sector.dirac(sector)
    s = ordinal_index(diagram, j, sector)
    return -1 if s.finite_part % 2 else 1
