"""Diagonal one-particle Hamiltonians and the induced sector dynamics.

A diagonal ``h`` with ``h <= 0`` on the sea, ``h >= 0`` off it and
``h(c(x)) = -h(x)`` for a pairing ``c`` of the sea with its complement gives
the diagram energy ``E(I) = sum_holes |h| + sum_particles h``.  States evolve
by the phase ``exp(i t E(I))`` per diagram and fields by ``u -> exp(i t h) u``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Union

import numpy as np

from . import numeric
from .epsilon import SignContext
from .errors import DomainMismatch, NumericModeMismatch
from .fields import OneParticleVector, field as apply_field, field_adjoint
from .implementability import mirror_point
from .ordered_index import (FiniteExplicit, IndexDomain, Position, ReversedIntegers, Side,
                            domain_from_json, position_from_json, position_to_json)
from .sector import SeaDiagram, Sector, SectorState

Real = Union[int, Fraction, float]

RULES = ("zero", "constant", "linear")


def _real(v) -> Real:
    if isinstance(v, bool):
        raise ValueError("booleans are not energies")
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, (int, Fraction, float)):
        return v
    raise ValueError(f"{v!r} is not a real energy")


def _magnitude(d: IndexDomain, x: Position) -> int:
    if isinstance(d, ReversedIntegers):
        return abs(x.n)
    return d.coord(x).finite_part


@dataclass(frozen=True)
class DiagonalHamiltonian:
    """``h`` on a sector: a rule (``zero``, ``constant`` mass, ``linear`` in the
    coordinate) with finitely many overrides, plus the pairing of the sea with
    its complement (``mirror`` or an explicit table).
    """

    sector: Sector
    rule: str = "linear"
    value: Real = 1
    overrides: Mapping[Position, Real] = field(default_factory=dict)
    pairing: Optional[Mapping[Position, Position]] = None

    def __post_init__(self):
        if self.sector.reference not in (frozenset({Side.MINUS}), frozenset({Side.PLUS})):
            raise DomainMismatch("a diagonal Hamiltonian needs a sea equal to one stratum")
        if self.rule not in RULES:
            raise ValueError(f"unknown energy rule {self.rule!r}; expected one of {RULES}")
        object.__setattr__(self, "value", _real(self.value))
        if self.value < 0:
            raise ValueError("rule value must be nonnegative")
        d = self.domain
        clean = {}
        for x, e in dict(self.overrides).items():
            clean[d.check(x)] = _real(e)
        object.__setattr__(self, "overrides", clean)
        if self.pairing is not None:
            pairing = {d.check(a): d.check(b) for a, b in dict(self.pairing).items()}
            if len(set(pairing.values())) != len(pairing):
                raise DomainMismatch("pairing must be injective")
            object.__setattr__(self, "pairing", pairing)
        self._validate()

    @property
    def domain(self) -> IndexDomain:
        return self.sector.domain

    def _rule_energy(self, x: Position) -> Real:
        if self.rule == "zero":
            mag = 0
        elif self.rule == "constant":
            mag = self.value
        else:
            mag = self.value * _magnitude(self.domain, x)
        return -mag if self.sector.in_sea(x) else mag

    def energy(self, x: Position) -> Real:
        self.domain.check(x)
        if x in self.overrides:
            return self.overrides[x]
        return self._rule_energy(x)

    __call__ = energy

    def partner(self, x: Position) -> Position:
        """``c(x)`` for a sea point, ``c^{-1}(x)`` otherwise."""
        if self.pairing is None:
            return mirror_point(self.domain, x)
        if x in self.pairing:
            return self.pairing[x]
        for a, b in self.pairing.items():
            if b == x:
                return a
        raise DomainMismatch(f"{x} is not paired")

    def _validate(self):
        d = self.domain
        if self.pairing is None:
            if not isinstance(d, ReversedIntegers) and d.top(Side.MINUS) != d.top(Side.PLUS):
                raise DomainMismatch("mirror pairing needs strata of the same order type")
        else:
            sea = [x for x in self.pairing if self.sector.in_sea(x)]
            if len(sea) != len(self.pairing) or any(self.sector.in_sea(b) for b in self.pairing.values()):
                raise DomainMismatch("pairing must send sea points to points outside the sea")
            if isinstance(d, FiniteExplicit):
                sea_all = [x for x in d.ordered if self.sector.in_sea(x)]
                if set(sea) != set(sea_all) or len(sea_all) != len(d) - len(sea_all):
                    raise DomainMismatch("pairing must be a bijection between the sea and its complement")
        # rules satisfy the constraints; overrides and their partners are checked pointwise
        points = set(self.overrides)
        points.update(self.partner(x) for x in list(points))
        for x in points:
            e = self.energy(x)
            if self.sector.in_sea(x) and e > 0:
                raise ValueError(f"energy {e} at sea point {x} must be <= 0")
            if not self.sector.in_sea(x) and e < 0:
                raise ValueError(f"energy {e} at {x} outside the sea must be >= 0")
            if self.energy(self.partner(x)) != -e:
                raise ValueError(f"energies at {x} and its partner must be opposite")

    def to_json(self) -> dict:
        d = self.domain
        out = {"domain": d.to_json(), "sector": self.sector.name,
               "rule": {"kind": self.rule, "value": _real_json(self.value)},
               "overrides": [{"position": position_to_json(x), "energy": _real_json(e)}
                             for x, e in sorted(self.overrides.items(), key=lambda kv: d.key(kv[0]))]}
        if self.pairing is None:
            out["pairing"] = {"kind": "mirror"}
        else:
            out["pairing"] = {"kind": "table",
                              "map": [[position_to_json(a), position_to_json(b)]
                                      for a, b in sorted(self.pairing.items(), key=lambda kv: d.key(kv[0]))]}
        return out

    @classmethod
    def from_json(cls, obj: dict, domain: Optional[IndexDomain] = None) -> DiagonalHamiltonian:
        if domain is None:
            domain = domain_from_json(obj.get("domain", "reversed_integers"))
        sector = Sector.named(domain, obj.get("sector", "minus"))
        rule = obj.get("rule", {"kind": "linear", "value": 1})
        pos = lambda v: position_from_json(domain, v)
        overrides = {pos(o["position"]): _real(o["energy"]) for o in obj.get("overrides", [])}
        pairing_obj = obj.get("pairing", {"kind": "mirror"})
        if pairing_obj.get("kind") == "mirror":
            pairing = None
        elif pairing_obj.get("kind") == "table":
            pairing = {pos(a): pos(b) for a, b in pairing_obj.get("map", [])}
        else:
            raise ValueError(f"unknown pairing kind {pairing_obj.get('kind')!r}")
        return cls(sector, rule.get("kind", "linear"), _real(rule.get("value", 1)), overrides, pairing)


def _real_json(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    return v


def sector_energy(diagram: SeaDiagram, h: DiagonalHamiltonian) -> Real:
    """``sum_holes |h| + sum_particles h``; nonnegative."""
    sector = h.sector
    for x in diagram.holes:
        if not sector.in_sea(x):
            raise DomainMismatch(f"hole {x} lies outside the sea")
    for x in diagram.particles:
        if sector.in_sea(x):
            raise DomainMismatch(f"particle {x} lies inside the sea")
    return sum((abs(h.energy(x)) for x in diagram.holes), 0) + sum((h.energy(x) for x in diagram.particles), 0)


def _require_float(*items):
    for it in items:
        if it.exact:
            raise NumericModeMismatch("time evolution needs float mode (phases are transcendental)")


def _check_sector(s: SectorState, h: DiagonalHamiltonian):
    if s.sector != h.sector:
        raise DomainMismatch("state and Hamiltonian refer to different sectors")


def evolve_state(s: SectorState, t: float, h: DiagonalHamiltonian) -> SectorState:
    """``exp(i t H_D) s``: each diagram picks up ``exp(i t E(I))``."""
    _require_float(s)
    _check_sector(s, h)
    terms = {}
    for diag, c in s.terms.items():
        terms[diag] = c * cmath.exp(1j * t * float(sector_energy(diag, h)))
    return SectorState._raw(s.sector, terms, False)


def evolve_vector(u: OneParticleVector, t: float, h: DiagonalHamiltonian) -> OneParticleVector:
    """``exp(i t h) u``."""
    _require_float(u)
    return u.map_coeffs(lambda x, c: c * cmath.exp(1j * t * float(h.energy(x))))


def apply_hamiltonian(u: OneParticleVector, h: DiagonalHamiltonian) -> OneParticleVector:
    """``h u`` (pointwise)."""
    if u.exact:
        return u.map_coeffs(lambda x, c: c * numeric.to_exact(Fraction(h.energy(x))))
    return u.map_coeffs(lambda x, c: c * float(h.energy(x)))


def evolve_field(u: OneParticleVector, t: float, s: SectorState, h: DiagonalHamiltonian,
                 ctx: SignContext) -> SectorState:
    """The field at ``exp(i t h) u`` applied to ``s``."""
    _require_float(u, s)
    _check_sector(s, h)
    return apply_field(evolve_vector(u, t, h), s, ctx)


def evolve_field_adjoint(u: OneParticleVector, t: float, s: SectorState, h: DiagonalHamiltonian,
                         ctx: SignContext) -> SectorState:
    _require_float(u, s)
    _check_sector(s, h)
    return field_adjoint(evolve_vector(u, t, h), s, ctx)


def heisenberg_side(u: OneParticleVector, t: float, s: SectorState, h: DiagonalHamiltonian,
                    ctx: SignContext) -> SectorState:
    """``exp(i t H_D) psi(u) exp(-i t H_D) s``, computed without touching ``u``."""
    return evolve_state(apply_field(u, evolve_state(s, -t, h), ctx), t, h)


def state_norm(s: SectorState) -> float:
    return math.sqrt(float(s.norm2()))


def derivative_residual(u: OneParticleVector, s: SectorState, t: float, dt: float,
                        h: DiagonalHamiltonian, ctx: SignContext) -> float:
    """Central-difference defect of ``i d/dt F(t, u) s = F(t, h u) s``."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    fwd = evolve_field(u, t + dt, s, h, ctx)
    bwd = evolve_field(u, t - dt, s, h, ctx)
    lhs = (fwd - bwd).scale(1j / (2 * dt))
    rhs = evolve_field(apply_hamiltonian(u, h), t, s, h, ctx)
    return state_norm(lhs - rhs)


def fock_energies(rep, h: DiagonalHamiltonian) -> np.ndarray:
    """Diagonal of the second-quantized Hamiltonian on a Fock matrix representation.

    An antiparticle slot labelled by sea point ``a`` carries ``-h(a)``; a
    particle ``b`` carries ``h(b)``.
    """
    out = np.zeros(rep.dim)
    for mask, label in enumerate(rep.labels):
        out[mask] = float(sum((-h.energy(a) for a in label.antiparticles), 0)
                          + sum((h.energy(b) for b in label.particles), 0))
    return out
