"""Hilbert-Schmidt test for one-particle unitaries on ``l^2(A) ⊕ l^2(X \\ A)``.

A unitary is stored as ``base ∘ W``: ``base`` is the identity or the mirror
involution (exchanging the k-th sea point with the k-th point outside it) and
``W`` is a unitary acting on a finite set ``F`` of positions and as the
identity elsewhere.  For ``y`` outside ``F`` the column ``U e_y`` is a single
basis vector, so the squared norm of an off-diagonal block is a count of
crossings of ``base`` off ``F`` plus a finite sum of ``|W_xy|^2`` over ``F``.
The count is infinite exactly when ``base`` is the mirror on an infinite
domain, which is the certificate of non-implementability.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from . import numeric
from .errors import DimensionMismatch, DomainMismatch, UndecidableRule
from .ordered_index import (FiniteExplicit, IndexDomain, Position, ReversedIntegers,
                            Side, SignedInteger, domain_from_json, position_from_json,
                            position_to_json)
from .sector import Sector

UNITARY_TOL = 1e-10


class Block(enum.Enum):
    MINUS_PLUS = "minus_plus"   # P_A U P_{X\A}
    PLUS_MINUS = "plus_minus"   # P_{X\A} U P_A


class BaseMap(enum.Enum):
    IDENTITY = "identity"
    MIRROR = "mirror"


def mirror_point(d: IndexDomain, x: Position) -> Position:
    """Image of ``x`` under the mirror involution of ``d``."""
    if isinstance(d, ReversedIntegers):
        return SignedInteger(-d.check(x).n)
    return d.point(d.side(x).other, d.coord(x))


def _check_mirror(d: IndexDomain):
    if isinstance(d, ReversedIntegers):
        return
    if d.top(Side.MINUS) != d.top(Side.PLUS):
        raise UndecidableRule("mirror needs strata of the same order type")


@dataclass(frozen=True)
class HSNorm:
    """Squared Hilbert-Schmidt norm of a block: a number, or ``inf`` with a certificate."""

    value: Optional[Union[Fraction, float]]
    certificate: Optional[dict] = None

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __float__(self):
        return math.inf if self.value is None else float(self.value)

    def __str__(self):
        if self.value is None:
            return "inf"
        if isinstance(self.value, Fraction):
            return str(self.value) if self.value.denominator != 1 else f"{self.value.numerator}"
        return repr(float(self.value))

    def to_json(self):
        out = {"value": str(self)}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


class OneParticleUnitary:
    """``U = base ∘ W`` with ``W`` unitary on the finite support ``F``.

    ``matrix`` maps ``(x, y)`` to ``<e_x; W e_y>`` for ``x, y`` in ``F``.
    """

    def __init__(self, sector, base: BaseMap = BaseMap.IDENTITY,
                 matrix: Optional[Mapping[tuple, object]] = None, exact: bool = True,
                 validate: bool = True):
        if not isinstance(sector, Sector):
            sector = Sector.dirac(sector)
        self.sector = sector
        self.domain = sector.domain
        self.base = BaseMap(base)
        self.exact = exact
        if self.base is BaseMap.MIRROR:
            _check_mirror(self.domain)
        entries = {}
        support = set()
        for (x, y), c in (matrix or {}).items():
            self.domain.check(x)
            self.domain.check(y)
            support.update((x, y))
            c = numeric.coerce(c, exact)
            if c:
                entries[(x, y)] = c
        self.support = self.domain.sorted(support)
        self.entries = entries
        if validate:
            self._validate()

    # -- constructors -----------------------------------------------------------
    @classmethod
    def identity(cls, sector, exact: bool = True) -> OneParticleUnitary:
        return cls(sector, BaseMap.IDENTITY, None, exact)

    @classmethod
    def mirror(cls, sector, exact: bool = True) -> OneParticleUnitary:
        return cls(sector, BaseMap.MIRROR, None, exact)

    @classmethod
    def permutation(cls, sector, table: Mapping[Position, Position],
                    phases: Optional[Mapping[Position, object]] = None,
                    exact: bool = True) -> OneParticleUnitary:
        """``e_y -> phase_y e_{table[y]}``; ``table`` must permute its keys."""
        if set(table) != set(table.values()):
            raise DomainMismatch("a permutation table must map its support onto itself")
        phases = dict(phases or {})
        matrix = {}
        for y in set(table) | set(phases):
            matrix[(table.get(y, y), y)] = phases.get(y, 1)
        return cls(sector, BaseMap.IDENTITY, matrix, exact)

    @classmethod
    def swaps(cls, sector, pairs: Iterable[tuple], exact: bool = True) -> OneParticleUnitary:
        table = {}
        for a, b in pairs:
            if a in table or b in table:
                raise DomainMismatch("swap pairs must be disjoint")
            table[a], table[b] = b, a
        return cls.permutation(sector, table, None, exact)

    @classmethod
    def finite(cls, sector, support: Sequence[Position], matrix, exact: bool = True):
        """Unitary given by a square array on ``support`` (``matrix[a][b] = <e_a; W e_b>``)."""
        m = {}
        for a, x in enumerate(support):
            for b, y in enumerate(support):
                m[(x, y)] = matrix[a][b]
        return cls(sector, BaseMap.IDENTITY, m, exact)

    # -- structure ---------------------------------------------------------------
    def column(self, y: Position) -> dict:
        """``W e_y`` as ``{x: coefficient}``."""
        if y not in self.support:
            return {y: numeric.one(self.exact)}
        return {x: c for (x, yy), c in self.entries.items() if yy == y}

    def _validate(self):
        fs = self.support
        for a, y in enumerate(fs):
            col = self.column(y)
            for y2 in fs[a:]:
                col2 = self.column(y2)
                g = sum((numeric.conj(c) * col2[x] for x, c in col.items() if x in col2),
                        numeric.zero(self.exact))
                want = numeric.one(self.exact) if y == y2 else numeric.zero(self.exact)
                if self.exact:
                    ok = g == want
                else:
                    ok = abs(g - want) <= UNITARY_TOL
                if not ok:
                    raise DimensionMismatch(f"finite part is not unitary (columns {y}, {y2})")

    def base_image(self, x: Position) -> Position:
        return x if self.base is BaseMap.IDENTITY else mirror_point(self.domain, x)

    def apply(self, y: Position) -> dict:
        """``U e_y`` as ``{x: coefficient}``."""
        return {self.base_image(x): c for x, c in self.column(y).items()}

    def __matmul__(self, other: OneParticleUnitary) -> OneParticleUnitary:
        return compose(self, other)

    def matrix(self, modes: Optional[Sequence[Position]] = None) -> np.ndarray:
        """Dense complex matrix on ``modes`` (all points of a finite domain by default)."""
        if modes is None:
            if not isinstance(self.domain, FiniteExplicit):
                raise DomainMismatch("dense matrices need a finite domain or explicit modes")
            modes = self.domain.ordered
        index = {x: i for i, x in enumerate(modes)}
        out = np.zeros((len(modes), len(modes)), dtype=complex)
        for b, y in enumerate(modes):
            for x, c in self.apply(y).items():
                if x not in index:
                    raise DimensionMismatch(f"U maps {y} outside the chosen modes")
                out[index[x], b] = numeric.to_float(c)
        return out

    def to_json(self) -> dict:
        rows, cols, vals = [], [], []
        key = self.domain.key
        for (x, y), c in sorted(self.entries.items(), key=lambda kv: (key(kv[0][1]), key(kv[0][0]))):
            rows.append(position_to_json(x))
            cols.append(position_to_json(y))
            vals.append(numeric.to_json_pair(c))
        return {"domain": self.domain.to_json(), "sector": self.sector.name,
                "mode": "exact" if self.exact else "float",
                "core": {"kind": self.base.value},
                "correction": {"rows": rows, "cols": cols, "entries": vals}}


def compose(u1: OneParticleUnitary, u2: OneParticleUnitary) -> OneParticleUnitary:
    """``u1 ∘ u2``, rewritten as ``(b1 b2) ∘ (b2 W1 b2) W2`` using that bases are involutions."""
    if u1.sector != u2.sector:
        raise DomainMismatch("unitaries act on different sectors")
    if u1.exact != u2.exact:
        raise DimensionMismatch("cannot compose exact and float unitaries")
    b2 = u2.base_image
    # conjugate W1 by the base of u2
    w1 = {(b2(x), b2(y)): c for (x, y), c in u1.entries.items()}
    sup1 = {b2(x) for x in u1.support}
    support = sorted(sup1 | set(u2.support), key=u1.domain.key)

    def w1_col(y):
        if y not in sup1:
            return {y: numeric.one(u1.exact)}
        return {x: c for (x, yy), c in w1.items() if yy == y}

    product = {}
    for y in support:
        for k, c2 in u2.column(y).items():
            for x, c1 in w1_col(k).items():
                v = product.get((x, y), numeric.zero(u1.exact)) + c1 * c2
                product[(x, y)] = v
    same = u1.base is u2.base
    base = BaseMap.IDENTITY if same else BaseMap.MIRROR
    return OneParticleUnitary(u1.sector, base, product, u1.exact, validate=False)


def _crossing_certificate(u: OneParticleUnitary, block: Block) -> dict:
    d = u.domain
    src_side = Side.PLUS if block is Block.MINUS_PLUS else Side.MINUS
    witnesses = []
    for c in d.sample_coords(src_side)[:3]:
        x = d.point(src_side, c)
        if x not in u.support:
            witnesses.append([position_to_json(x), position_to_json(u.base_image(x))])
    return {"kind": "infinite_crossings",
            "rule": "mirror exchanges the strata pointwise; every point off the finite "
                    "support crosses",
            "source_stratum": src_side.value, "witnesses": witnesses}


def offdiag_hs_norm(u: OneParticleUnitary, block: Union[Block, str]) -> HSNorm:
    """Squared Hilbert-Schmidt norm of ``P_A U P_{X\\A}`` or ``P_{X\\A} U P_A``."""
    block = Block(block)
    sector = u.sector
    src_in_sea = block is Block.PLUS_MINUS
    d = u.domain

    def in_source(y):
        return sector.in_sea(y) == src_in_sea

    def in_target(x):
        return sector.in_sea(x) != src_in_sea

    if u.base is BaseMap.MIRROR and not d.is_finite:
        return HSNorm(None, _crossing_certificate(u, block))
    total = Fraction(0) if u.exact else 0.0
    if u.base is BaseMap.MIRROR:
        for y in d.ordered:
            if y not in u.support and in_source(y) and in_target(mirror_point(d, y)):
                total += 1
    for y in u.support:
        if not in_source(y):
            continue
        for x, c in u.column(y).items():
            if in_target(u.base_image(x)):
                total += numeric.abs2(c)
    return HSNorm(total, None)


@dataclass(frozen=True)
class Decision:
    implementable: bool
    minus_plus: HSNorm
    plus_minus: HSNorm

    def __bool__(self):
        return self.implementable

    def to_json(self) -> dict:
        out = {"implementable": self.implementable,
               "hs2_minus_plus": repr(float(self.minus_plus)),
               "hs2_plus_minus": repr(float(self.plus_minus)),
               "hs2_exact": {"minus_plus": str(self.minus_plus), "plus_minus": str(self.plus_minus)}}
        certs = {k: n.certificate for k, n in (("minus_plus", self.minus_plus),
                                               ("plus_minus", self.plus_minus))
                 if n.certificate is not None}
        if certs:
            out["certificates"] = certs
        return out


def is_implementable(u: OneParticleUnitary) -> Decision:
    mp = offdiag_hs_norm(u, Block.MINUS_PLUS)
    pm = offdiag_hs_norm(u, Block.PLUS_MINUS)
    return Decision(mp.is_finite and pm.is_finite, mp, pm)


# -- JSON ------------------------------------------------------------------------

def unitary_from_json(obj: dict, domain: Optional[IndexDomain] = None,
                      exact: Optional[bool] = None) -> OneParticleUnitary:
    """Parse ``{"core": {...}, "correction": {"rows", "cols", "entries"}}``.

    Core kinds: ``identity``, ``mirror``, ``swap`` (``pairs``), ``table``
    (``map`` as ``[[from, to], ...]``), each with optional ``phases``.
    """
    if not isinstance(obj, dict):
        raise ValueError("operator must be a JSON object")
    if domain is None:
        domain = domain_from_json(obj.get("domain", "reversed_integers"))
    if exact is None:
        exact = obj.get("mode", "exact") == "exact"
    sector = Sector.named(domain, obj.get("sector", "minus"))
    pos = lambda v: position_from_json(domain, v)
    core = obj.get("core", {"kind": "identity"})
    kind = core.get("kind")
    phases = {pos(p["position"]): numeric.from_json_pair(p["c"], exact) for p in core.get("phases", [])}
    if kind == "identity":
        u = OneParticleUnitary.permutation(sector, {}, phases, exact)
    elif kind == "mirror":
        if phases:
            raise UndecidableRule("phases on a mirror core are given through the correction")
        u = OneParticleUnitary.mirror(sector, exact)
    elif kind == "swap":
        table = {}
        for a, b in core.get("pairs", []):
            a, b = pos(a), pos(b)
            if a in table or b in table:
                raise DomainMismatch("swap pairs must be disjoint")
            table[a], table[b] = b, a
        u = OneParticleUnitary.permutation(sector, table, phases, exact)
    elif kind == "table":
        table = {pos(a): pos(b) for a, b in core.get("map", [])}
        u = OneParticleUnitary.permutation(sector, table, phases, exact)
    else:
        raise UndecidableRule(f"core rule {kind!r} has no finiteness certificate")
    corr = obj.get("correction")
    if corr:
        rows, cols, vals = corr.get("rows", []), corr.get("cols", []), corr.get("entries", [])
        if not (len(rows) == len(cols) == len(vals)):
            raise ValueError("correction rows, cols and entries must have equal lengths")
        m = {}
        for r, c, v in zip(rows, cols, vals):
            m[(pos(r), pos(c))] = numeric.from_json_pair(v, exact)
        u = compose(u, OneParticleUnitary(sector, BaseMap.IDENTITY, m, exact))
    return u
