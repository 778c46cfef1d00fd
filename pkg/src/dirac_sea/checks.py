"""Randomized check suites over the fields, signs and parity engine.

Each suite returns :class:`CheckResult` records; the first failing instance is
kept as a JSON-ready counterexample.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from . import numeric
from . import sampling as smp
from .epsilon import SignContext, epsilon, naive_ordinal_sign
from .errors import NotWellOrdered
from .fields import Kind, anticommutator, annihilate, create
from .ordered_index import (FiniteExplicit, IndexDomain, OrdinalPoint, OrdinalSum, ReversedIntegers,
                            Side, SignedInteger, position_to_json)
from .ordinals import Ordinal
from .parity import ParityConfig, RepresentableSet, parity, parity_of_encoding
from .sector import Sector, SectorState, inner_product


@dataclass
class CheckResult:
    name: str
    trials: int = 0
    failures: int = 0
    max_residual: float = 0.0
    counterexample: Optional[dict] = None
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, residual: float, tol: float, payload) -> None:
        self.trials += 1
        self.max_residual = max(self.max_residual, residual)
        if residual > tol:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = payload() if callable(payload) else payload

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "trials": self.trials,
               "failures": self.failures, "max_residual": self.max_residual}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        out.update(self.extra)
        return out


def builtin_domains() -> list:
    return [ReversedIntegers(), OrdinalSum(Ordinal.parse("w^2"), Ordinal.parse("w")),
            OrdinalSum(Ordinal.parse("w^3*2+w+1"), Ordinal.parse("w^2+3")),
            FiniteExplicit.from_sides("minus plus minus minus plus plus minus plus".split())]


def _residual(s: SectorState) -> float:
    return max((abs(numeric.to_float(c)) for c in s.terms.values()), default=0.0)


def _scalar_residual(z) -> float:
    return abs(numeric.to_float(z))


# -- CAR -------------------------------------------------------------------------

def car_suite(domain: IndexDomain, trials: int, seed: int, sector: str = "minus",
              exact: bool = True, tol: float = 0.0, cfg: Optional[ParityConfig] = None) -> list:
    """Anticommutators and adjointness of basis fields on random states."""
    rng = random.Random(seed)
    sec = Sector.named(domain, sector)
    ctx = SignContext(sec, cfg or ParityConfig())
    pool = domain.sample_positions()
    results = {n: CheckResult(n) for n in ("ann_cre", "ann_ann", "cre_cre", "adjoint")}
    for _ in range(trials):
        j = rng.choice(pool)
        k = j if rng.random() < 0.3 else rng.choice(pool)
        s = smp.state(sec, rng, exact)
        t = smp.state(sec, rng, exact)

        def payload(name, extra=None):
            out = {"check": name, "j": position_to_json(j), "k": position_to_json(k), "state": s.to_json()}
            out.update(extra or {})
            return out

        got = anticommutator(Kind.ANN, j, Kind.CRE, k, s, ctx)
        want = s if j == k else SectorState.zero(sec, exact)
        results["ann_cre"].record(_residual(got - want), tol, lambda: payload("ann_cre"))
        got = anticommutator(Kind.ANN, j, Kind.ANN, k, s, ctx)
        results["ann_ann"].record(_residual(got), tol, lambda: payload("ann_ann"))
        got = anticommutator(Kind.CRE, j, Kind.CRE, k, s, ctx)
        results["cre_cre"].record(_residual(got), tol, lambda: payload("cre_cre"))
        lhs = inner_product(create(j, t, ctx), s)
        rhs = inner_product(t, annihilate(j, s, ctx))
        results["adjoint"].record(_scalar_residual(lhs - rhs), tol,
                                  lambda: payload("adjoint", {"other": t.to_json()}))
    return list(results.values())


# -- epsilon laws -------------------------------------------------------------------

def epsilon_suite(domain: IndexDomain, trials: int, seed: int,
                  cfg: Optional[ParityConfig] = None) -> list:
    """Singleton law and the two exchange laws on random diagrams."""
    rng = random.Random(seed)
    pool = domain.sample_positions()
    key = domain.key
    sing, minus_law, plus_law = CheckResult("singleton"), CheckResult("remove_below"), CheckResult("insert_above")
    empty = Sector.named(domain, "empty")
    dirac = Sector.dirac(domain)
    for _ in range(trials):
        c = cfg or smp.parity_config(rng)
        x = rng.choice(pool)
        one = empty.diagram(particles=[x])
        e = epsilon(one, x, SignContext(empty, c))
        sing.record(0.0 if e == 1 else 2.0, 0.0,
                    lambda: {"x": position_to_json(x), "epsilon": e})

        ctx = SignContext(dirac, c)
        diag = smp.diagram(dirac, rng)
        inside = [y for y in pool if dirac.contains(diag, y)]
        outside = [y for y in pool if not dirac.contains(diag, y)]
        if len(inside) >= 2:
            j, k = sorted(rng.sample(inside, 2), key=key)
            a = epsilon(diag, k, ctx)
            b = epsilon(dirac.toggle(diag, j), k, ctx)
            minus_law.record(0.0 if a == -b else 2.0, 0.0, lambda: {
                "I": str(diag), "j": position_to_json(j), "k": position_to_json(k),
                "eps_I_k": a, "eps_I_minus_j_k": b})
        lows = [(j, k) for j in inside for k in outside if key(j) < key(k)]
        if lows:
            j, k = rng.choice(lows)
            a = epsilon(diag, j, ctx)
            b = epsilon(dirac.toggle(diag, k), j, ctx)
            plus_law.record(0.0 if a == b else 2.0, 0.0, lambda: {
                "I": str(diag), "j": position_to_json(j), "k": position_to_json(k),
                "eps_I_j": a, "eps_I_plus_k_j": b})
    return [sing, minus_law, plus_law]


# -- parity --------------------------------------------------------------------------

def parity_suite(domain: IndexDomain, trials: int, seed: int, reencodings: int = 200) -> list:
    rng = random.Random(seed)
    hom, single, whole, enc = (CheckResult("homomorphism"), CheckResult("singleton"),
                               CheckResult("whole"), CheckResult("encoding_independence"))
    for _ in range(trials):
        cfg = smp.parity_config(rng)
        s, t = smp.representable_set(domain, rng), smp.representable_set(domain, rng)
        lhs, rhs = parity(s ^ t, cfg), (parity(s, cfg) + parity(t, cfg)) % 2
        hom.record(float(lhs != rhs), 0.0, lambda: {"S": _set_json(s), "T": _set_json(t), "cfg": cfg.to_json()})
        x = smp.position(domain, rng)
        ps = parity(RepresentableSet.finite(domain, [x]), cfg)
        single.record(float(ps != 1), 0.0, lambda: {"x": position_to_json(x), "cfg": cfg.to_json()})
    for p in (0, 1):
        for cfg in (ParityConfig(p=p), ParityConfig(p=p, value=1), ParityConfig.seeded(seed, p=p)):
            got = parity(RepresentableSet.whole(domain), cfg)
            want = p if not domain.is_finite else _finite_size(domain) % 2
            whole.record(float(got != want), 0.0, lambda: {"cfg": cfg.to_json(), "parity": got})
    for _ in range(reencodings):
        cfg = smp.parity_config(rng)
        s = smp.representable_set(domain, rng)
        ivs, pts = smp.reencoding(s, rng)
        got = parity_of_encoding(domain, ivs, pts, cfg)
        enc.record(float(got != parity(s, cfg)), 0.0, lambda: {"S": _set_json(s), "cfg": cfg.to_json()})
    return [hom, single, whole, enc]


def _finite_size(d: IndexDomain) -> int:
    return (d.top(Side.MINUS).finite_part - 1) + (d.top(Side.PLUS).finite_part - 1)


def _set_json(s: RepresentableSet) -> dict:
    return {"minus": [str(b) for b in s.minus], "plus": [str(b) for b in s.plus]}


# -- the ordinal counterexample --------------------------------------------------------

def counterexample_table(depth: int = 6, cfg: Optional[ParityConfig] = None) -> dict:
    """Signs at the top sea point ``w`` of ``I = {1, 2, ...} ∪ {w}`` after removing one finite point.

    The exchange law demands a sign flip; the Cantor-normal-form sign does not
    see the removal.
    """
    d = OrdinalSum(Ordinal.parse("w+1"), Ordinal.parse("w"))
    sector = Sector.dirac(d)
    ctx = SignContext(sector, cfg or ParityConfig())
    top = OrdinalPoint(Side.MINUS, Ordinal.parse("w"))
    full = sector.vacuum
    naive_full = naive_ordinal_sign(full, top, sector)
    eps_full = epsilon(full, top, ctx)
    rows = []
    naive_bad = eps_bad = 0
    for n in range(1, depth + 1):
        k = OrdinalPoint(Side.MINUS, Ordinal.of(n))
        cut = sector.toggle(full, k)
        naive_cut = naive_ordinal_sign(cut, top, sector)
        eps_cut = epsilon(cut, top, ctx)
        naive_ok = naive_full == -naive_cut
        eps_ok = eps_full == -eps_cut
        naive_bad += not naive_ok
        eps_bad += not eps_ok
        rows.append({"removed": n, "naive_I": naive_full, "naive_I_minus_n": naive_cut,
                     "naive_law_holds": naive_ok, "epsilon_I": eps_full,
                     "epsilon_I_minus_n": eps_cut, "epsilon_law_holds": eps_ok})
    return {"domain": d.to_json(), "j": position_to_json(top), "rows": rows,
            "naive_violations": naive_bad, "epsilon_violations": eps_bad}


def epsilon_demo(cfg: Optional[ParityConfig] = None) -> dict:
    cfg = cfg or ParityConfig()
    d = ReversedIntegers()
    ctx = SignContext(Sector.dirac(d), cfg)
    vac = ctx.sector.vacuum
    sea_rows = []
    for n in range(1, 7):
        j = SignedInteger(-n)
        sea_rows.append({"j": -n, "epsilon": epsilon(vac, j, ctx), "expected": (-1) ** (n + 1)})
    table = counterexample_table(cfg=cfg)
    reversed_plus = None
    try:
        o = OrdinalSum(Ordinal.parse("w+1"), Ordinal.parse("w"))
        sec = Sector.named(o, "plus")
        naive_ordinal_sign(sec.vacuum, OrdinalPoint(Side.PLUS, Ordinal.of(1)), sec)
    except NotWellOrdered as exc:
        reversed_plus = str(exc)
    return {"dirac_sea_signs": sea_rows, "counterexample": table,
            "naive_not_well_ordered": reversed_plus}
