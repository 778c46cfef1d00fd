"""Maya diagrams and finitely supported vectors of l^2([A]_X).

A sector is fixed by a domain and a reference set ``A`` that is a union of
strata (the Dirac sector uses ``A = X-``).  A diagram
``I = (A \\ holes) ⊔ particles`` is stored by its two finite sets only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from . import numeric
from .errors import DomainMismatch, NumericModeMismatch
from .ordered_index import (IndexDomain, Position, Side, Stratum, domain_from_json,
                            position_from_json, position_to_json)
from .parity import RepresentableSet

_REFERENCES = {
    "minus": frozenset({Side.MINUS}),
    "plus": frozenset({Side.PLUS}),
    "empty": frozenset(),
    "whole": frozenset({Side.MINUS, Side.PLUS}),
}


@dataclass(frozen=True)
class SeaDiagram:
    holes: tuple[Position, ...] = ()
    particles: tuple[Position, ...] = ()

    def __str__(self):
        h = ",".join(map(str, self.holes))
        p = ",".join(map(str, self.particles))
        return f"<holes={{{h}}} particles={{{p}}}>"


def side_stratum(side: Side) -> Stratum:
    return Stratum.SEA if side is Side.MINUS else Stratum.COMPLEMENT


def charge(diagram: SeaDiagram) -> int:
    return len(diagram.particles) - len(diagram.holes)


@dataclass(frozen=True)
class Sector:
    domain: IndexDomain
    reference: frozenset = frozenset({Side.MINUS})

    @classmethod
    def dirac(cls, domain: IndexDomain) -> Sector:
        return cls(domain, _REFERENCES["minus"])

    @classmethod
    def named(cls, domain: IndexDomain, name: str) -> Sector:
        try:
            return cls(domain, _REFERENCES[name])
        except KeyError:
            raise ValueError(f"unknown sector {name!r}; expected one of {sorted(_REFERENCES)}") from None

    @property
    def name(self) -> str:
        return next(k for k, v in _REFERENCES.items() if v == self.reference)

    def in_sea(self, x: Position) -> bool:
        """Whether ``x`` belongs to the reference set ``A``."""
        return self.domain.side(x) in self.reference

    def diagram(self, holes: Iterable[Position] = (), particles: Iterable[Position] = ()) -> SeaDiagram:
        holes, particles = set(holes), set(particles)
        for h in holes:
            if not self.in_sea(h):
                raise DomainMismatch(f"hole {h} lies outside the reference set")
        for p in particles:
            if self.in_sea(p):
                raise DomainMismatch(f"particle {p} lies inside the reference set")
        return SeaDiagram(self.domain.sorted(holes), self.domain.sorted(particles))

    @property
    def vacuum(self) -> SeaDiagram:
        return SeaDiagram()

    def contains(self, diagram: SeaDiagram, x: Position) -> bool:
        if self.in_sea(x):
            return x not in diagram.holes
        return x in diagram.particles

    def toggle(self, diagram: SeaDiagram, x: Position) -> SeaDiagram:
        """``I Δ {x}`` re-expressed as a diagram."""
        key = self.domain.key
        if self.in_sea(x):
            hs = diagram.holes
            holes = tuple(h for h in hs if h != x) if x in hs else tuple(sorted(hs + (x,), key=key))
            return SeaDiagram(holes, diagram.particles)
        ps = diagram.particles
        parts = tuple(p for p in ps if p != x) if x in ps else tuple(sorted(ps + (x,), key=key))
        return SeaDiagram(diagram.holes, parts)

    def finite_part(self, diagram: SeaDiagram) -> RepresentableSet:
        """``I_F`` with ``I = A Δ I_F``."""
        return RepresentableSet.finite(self.domain, diagram.holes + diagram.particles)

    def reference_set(self) -> RepresentableSet:
        ref = RepresentableSet.empty(self.domain)
        for side in self.reference:
            ref = ref ^ RepresentableSet.stratum(self.domain, side_stratum(side))
        return ref

    def as_set(self, diagram: SeaDiagram) -> RepresentableSet:
        """The diagram as a subset of X."""
        return self.reference_set() ^ self.finite_part(diagram)

    def from_finite(self, finite: Iterable[Position]) -> SeaDiagram:
        """Inverse of :meth:`finite_part`: the diagram ``A Δ I_F``."""
        pts = set(finite)
        return self.diagram([x for x in pts if self.in_sea(x)], [x for x in pts if not self.in_sea(x)])

    def to_json(self) -> dict:
        return {"domain": self.domain.to_json(), "reference": self.name}

    @classmethod
    def from_json(cls, obj) -> Sector:
        return cls.named(domain_from_json(obj["domain"]), obj.get("reference", "minus"))


class SectorState:
    """Finite linear combination of diagrams of one sector.

    Treated as immutable: every operation returns a new state.  Zero
    coefficients are never stored.
    """

    __slots__ = ("sector", "exact", "terms")

    def __init__(self, sector: Sector, terms: Optional[Mapping[SeaDiagram, object]] = None,
                 exact: bool = True):
        self.sector = sector
        self.exact = exact
        clean = {}
        for diag, c in (terms or {}).items():
            c = numeric.coerce(c, exact)
            if c:
                clean[diag] = c
        self.terms = clean

    @classmethod
    def _raw(cls, sector, terms, exact):
        s = cls.__new__(cls)
        s.sector, s.exact, s.terms = sector, exact, terms
        return s

    @classmethod
    def basis(cls, sector: Sector, diagram: SeaDiagram, coeff=1, exact: bool = True) -> SectorState:
        return cls(sector, {diagram: coeff}, exact)

    @classmethod
    def vacuum(cls, sector: Sector, exact: bool = True) -> SectorState:
        return cls.basis(sector, sector.vacuum, 1, exact)

    @classmethod
    def zero(cls, sector: Sector, exact: bool = True) -> SectorState:
        return cls._raw(sector, {}, exact)

    def _check(self, other: SectorState):
        if self.sector != other.sector:
            raise DomainMismatch("states belong to different sectors")
        if self.exact != other.exact:
            raise NumericModeMismatch("exact and float states cannot be combined")

    def __add__(self, other: SectorState) -> SectorState:
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            v = out.get(d)
            v = c if v is None else v + c
            if v:
                out[d] = v
            else:
                out.pop(d, None)
        return SectorState._raw(self.sector, out, self.exact)

    def __neg__(self) -> SectorState:
        return SectorState._raw(self.sector, {d: -c for d, c in self.terms.items()}, self.exact)

    def __sub__(self, other: SectorState) -> SectorState:
        return self + (-other)

    def scale(self, z) -> SectorState:
        z = numeric.coerce(z, self.exact)
        if not z:
            return SectorState.zero(self.sector, self.exact)
        return SectorState._raw(self.sector, {d: z * c for d, c in self.terms.items()}, self.exact)

    def __rmul__(self, z) -> SectorState:
        return self.scale(z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SectorState):
            return NotImplemented
        return self.sector == other.sector and self.exact == other.exact and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, diagram: SeaDiagram):
        return self.terms.get(diagram, numeric.zero(self.exact))

    def sorted_terms(self):
        key = self.sector.domain.key
        return sorted(self.terms.items(),
                      key=lambda kv: (len(kv[0].holes) + len(kv[0].particles),
                                      [key(x) for x in kv[0].holes],
                                      [key(x) for x in kv[0].particles]))

    def norm2(self):
        """``<s; s>``: a Fraction in exact mode, a float otherwise."""
        return sum((numeric.abs2(c) for c in self.terms.values()), 0 if self.exact else 0.0)

    def to_float(self) -> SectorState:
        if not self.exact:
            return self
        return SectorState._raw(self.sector, {d: numeric.to_float(c) for d, c in self.terms.items()},
                                False)

    def max_abs_diff(self, other: SectorState) -> float:
        """Largest coefficient difference, for float-mode comparisons."""
        if self.sector != other.sector:
            raise DomainMismatch("states belong to different sectors")
        keys = set(self.terms) | set(other.terms)
        return max((abs(numeric.to_float(self.coefficient(k)) - numeric.to_float(other.coefficient(k)))
                    for k in keys), default=0.0)

    def __repr__(self):
        body = " + ".join(f"({c})·{d}" for d, c in self.sorted_terms()) or "0"
        return f"SectorState[{self.sector.name}]({body})"

    def to_json(self) -> dict:
        return {
            "sector": self.sector.to_json(),
            "mode": "exact" if self.exact else "float",
            "terms": [{"c": numeric.to_json_pair(c),
                       "holes": [position_to_json(x) for x in d.holes],
                       "particles": [position_to_json(x) for x in d.particles]}
                      for d, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj) -> SectorState:
        sector = Sector.from_json(obj["sector"])
        exact = obj.get("mode", "exact") == "exact"
        d = sector.domain
        terms = {}
        for t in obj.get("terms", []):
            diag = sector.diagram([position_from_json(d, h) for h in t.get("holes", [])],
                                  [position_from_json(d, p) for p in t.get("particles", [])])
            c = numeric.from_json_pair(t["c"], exact)
            terms[diag] = terms[diag] + c if diag in terms else c
        return cls(sector, terms, exact)


def inner_product(u: SectorState, v: SectorState):
    """``<u; v>``, conjugate-linear in ``u`` and linear in ``v``."""
    u._check(v)
    total = numeric.zero(u.exact)
    small, large = (u.terms, v.terms) if len(u.terms) <= len(v.terms) else (v.terms, u.terms)
    for d in small:
        if d in large:
            total += numeric.conj(u.terms[d]) * v.terms[d]
    return total
