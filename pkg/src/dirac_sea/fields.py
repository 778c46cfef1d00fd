"""Annihilation and creation fields on sector states."""

from __future__ import annotations

import enum
from typing import Mapping, Optional

from . import numeric
from .epsilon import SignContext, epsilon
from .errors import DomainMismatch, NumericModeMismatch
from .ordered_index import IndexDomain, Position, position_from_json, position_to_json
from .sector import SectorState


class Kind(enum.Enum):
    ANN = "ann"
    CRE = "cre"


class OneParticleVector:
    """Finitely supported ``u = sum c_x e_x`` in l^2(X)."""

    __slots__ = ("domain", "exact", "coeffs")

    def __init__(self, domain: IndexDomain, coeffs: Optional[Mapping[Position, object]] = None,
                 exact: bool = True):
        self.domain = domain
        self.exact = exact
        clean = {}
        for x, c in (coeffs or {}).items():
            domain.check(x)
            c = numeric.coerce(c, exact)
            if c:
                clean[x] = c
        self.coeffs = clean

    @classmethod
    def basis(cls, domain: IndexDomain, x: Position, coeff=1, exact: bool = True) -> OneParticleVector:
        return cls(domain, {x: coeff}, exact)

    def __add__(self, other: OneParticleVector) -> OneParticleVector:
        self._check(other)
        out = dict(self.coeffs)
        for x, c in other.coeffs.items():
            out[x] = out[x] + c if x in out else c
        return OneParticleVector(self.domain, out, self.exact)

    def scale(self, z) -> OneParticleVector:
        z = numeric.coerce(z, self.exact)
        return OneParticleVector(self.domain, {x: z * c for x, c in self.coeffs.items()}, self.exact)

    __rmul__ = scale

    def map_coeffs(self, fn) -> OneParticleVector:
        return OneParticleVector(self.domain, {x: fn(x, c) for x, c in self.coeffs.items()}, self.exact)

    def _check(self, other: OneParticleVector):
        if self.domain != other.domain:
            raise DomainMismatch("vectors over different domains")
        if self.exact != other.exact:
            raise NumericModeMismatch("exact and float vectors cannot be combined")

    def inner(self, other: OneParticleVector):
        """``<self; other>``, conjugate-linear in ``self``."""
        self._check(other)
        total = numeric.zero(self.exact)
        for x, c in self.coeffs.items():
            if x in other.coeffs:
                total += numeric.conj(c) * other.coeffs[x]
        return total

    def norm2(self):
        return sum((numeric.abs2(c) for c in self.coeffs.values()), 0 if self.exact else 0.0)

    def __eq__(self, other):
        if not isinstance(other, OneParticleVector):
            return NotImplemented
        return (self.domain, self.exact, self.coeffs) == (other.domain, other.exact, other.coeffs)

    def __repr__(self):
        body = " + ".join(f"({c})e[{x}]" for x, c in self.coeffs.items()) or "0"
        return f"OneParticleVector({body})"

    def to_json(self) -> dict:
        d = self.domain
        return {"domain": d.to_json(), "mode": "exact" if self.exact else "float",
                "support": [{"position": position_to_json(x), "c": numeric.to_json_pair(c)}
                            for x, c in sorted(self.coeffs.items(), key=lambda kv: d.key(kv[0]))]}

    @classmethod
    def from_json(cls, obj, domain: IndexDomain) -> OneParticleVector:
        exact = obj.get("mode", "exact") == "exact"
        coeffs = {}
        for t in obj.get("support", []):
            x = position_from_json(domain, t["position"])
            coeffs[x] = numeric.from_json_pair(t["c"], exact)
        return cls(domain, coeffs, exact)


def _check_state(s: SectorState, ctx: SignContext):
    if s.sector != ctx.sector:
        raise DomainMismatch("state and sign context refer to different sectors")


def _accumulate(out: dict, diagram, c):
    v = out.get(diagram)
    v = c if v is None else v + c
    if v:
        out[diagram] = v
    else:
        out.pop(diagram, None)


def annihilate(j: Position, s: SectorState, ctx: SignContext) -> SectorState:
    """``psi(e_j) s``: removes ``j`` from each diagram containing it, with sign ``epsilon_I(j)``."""
    _check_state(s, ctx)
    sector = ctx.sector
    sector.domain.check(j)
    out = {}
    for diag, c in s.terms.items():
        if sector.contains(diag, j):
            _accumulate(out, sector.toggle(diag, j), numeric.signed(c, epsilon(diag, j, ctx)))
    return SectorState._raw(sector, out, s.exact)


def create(j: Position, s: SectorState, ctx: SignContext) -> SectorState:
    """``psi*(e_j) s``: adds ``j`` with sign ``epsilon_{I ∪ {j}}(j)``."""
    _check_state(s, ctx)
    sector = ctx.sector
    sector.domain.check(j)
    out = {}
    for diag, c in s.terms.items():
        if not sector.contains(diag, j):
            grown = sector.toggle(diag, j)
            _accumulate(out, grown, numeric.signed(c, epsilon(grown, j, ctx)))
    return SectorState._raw(sector, out, s.exact)


def apply(kind: Kind, j: Position, s: SectorState, ctx: SignContext) -> SectorState:
    return annihilate(j, s, ctx) if Kind(kind) is Kind.ANN else create(j, s, ctx)


def _check_vector(u: OneParticleVector, s: SectorState):
    if u.domain != s.sector.domain:
        raise DomainMismatch("vector and state live over different domains")
    if u.exact != s.exact:
        raise NumericModeMismatch("vector and state use different numeric modes")


def field(u: OneParticleVector, s: SectorState, ctx: SignContext) -> SectorState:
    """``psi(u) s = sum conj(c_x) psi(e_x) s``; antilinear in ``u``."""
    _check_vector(u, s)
    out = SectorState.zero(s.sector, s.exact)
    for x, c in u.coeffs.items():
        out = out + annihilate(x, s, ctx).scale(numeric.conj(c))
    return out


def field_adjoint(u: OneParticleVector, s: SectorState, ctx: SignContext) -> SectorState:
    """``psi*(u) s = sum c_x psi*(e_x) s``; linear in ``u``."""
    _check_vector(u, s)
    out = SectorState.zero(s.sector, s.exact)
    for x, c in u.coeffs.items():
        out = out + create(x, s, ctx).scale(c)
    return out


def anticommutator(kind_a: Kind, a: Position, kind_b: Kind, b: Position, s: SectorState,
                   ctx: SignContext) -> SectorState:
    """``(Op_a Op_b + Op_b Op_a) s`` for basis fields."""
    ab = apply(kind_a, a, apply(kind_b, b, s, ctx), ctx)
    ba = apply(kind_b, b, apply(kind_a, a, s, ctx), ctx)
    return ab + ba
