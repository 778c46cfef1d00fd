"""``dirac-sea`` command-line front end.

Every subcommand prints one JSON report on stdout.  Exit status is 0 when all
checks pass, 1 when a check fails and 2 on malformed input (the report then
carries an ``error`` object instead of checks).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from . import __version__
from . import sampling as smp
from .checks import (CheckResult, builtin_domains, car_suite, counterexample_table, epsilon_demo,
                     epsilon_suite, parity_suite)
from .dynamics import DiagonalHamiltonian, derivative_residual, evolve_state
from .epsilon import SignContext
from .errors import DiracSeaError, NumericModeMismatch
from .fields import OneParticleVector
from .fock import (build_fock_rep, build_intertwiner, build_sea_rep, check_rep_equivalence,
                   commutant_dimension, intertwining_residual, unitarity_residual)
from .implementability import is_implementable, unitary_from_json
from .ordered_index import IndexDomain, Side, domain_from_json, position_from_json
from .parity import ParityConfig
from .sector import Sector, SectorState

SCHEMA = "dirac-sea.report/1"


class UsageError(Exception):
    """Malformed command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _threads() -> int:
    raw = os.environ.get("DIRAC_SEA_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"DIRAC_SEA_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"DIRAC_SEA_THREADS must be a positive integer, got {raw!r}")
    return n


def _parse_domains(text: str) -> list:
    if text == "all":
        return builtin_domains()
    if text.lstrip().startswith("{"):
        return [domain_from_json(json.loads(text))]
    return [domain_from_json(text)]


def _load_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _fan_out(fn, items):
    workers = min(_threads(), max(1, len(items)))
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _named(domain: IndexDomain, results: Sequence[CheckResult]) -> list:
    label = domain.kind if domain.kind != "ordinal_sum" else f"ordinal_sum[{domain.minus},{domain.plus}]"
    out = []
    for r in results:
        j = r.to_json()
        j["name"] = f"{label}/{r.name}"
        out.append(j)
    return out


def _exact(args, default: bool) -> bool:
    return default if args.mode is None else args.mode == "exact"


# -- subcommands ------------------------------------------------------------------

def cmd_car_check(args) -> dict:
    exact = _exact(args, True)
    tol = args.tolerance if args.tolerance is not None else (0.0 if exact else 1e-10)
    domains = _parse_domains(args.domain)
    runs = _fan_out(lambda d: car_suite(d, args.trials, args.seed, args.sector, exact, tol), domains)
    checks = [c for d, rs in zip(domains, runs) for c in _named(d, rs)]
    return {"domain": [d.to_json() for d in domains], "checks": checks}


def cmd_parity_check(args) -> dict:
    domains = _parse_domains(args.domain)
    runs = _fan_out(lambda d: parity_suite(d, args.trials, args.seed), domains)
    checks = [c for d, rs in zip(domains, runs) for c in _named(d, rs)]
    return {"domain": [d.to_json() for d in domains], "checks": checks}


def cmd_epsilon_demo(args) -> dict:
    cfg = ParityConfig.seeded(args.seed) if args.seeded else ParityConfig()
    demo = epsilon_demo(cfg)
    checks = []
    signs = CheckResult("dirac_sea_signs")
    for row in demo["dirac_sea_signs"]:
        signs.record(float(row["epsilon"] != row["expected"]), 0.0, row)
    checks.append(signs.to_json())
    table = demo["counterexample"]
    checks.append({"name": "naive_sign_violates_exchange_law", "passed": table["naive_violations"] >= 1,
                   "violations": table["naive_violations"]})
    checks.append({"name": "epsilon_satisfies_exchange_law", "passed": table["epsilon_violations"] == 0,
                   "violations": table["epsilon_violations"]})
    if args.trials:
        domains = _parse_domains(args.domain)
        runs = _fan_out(lambda d: epsilon_suite(d, args.trials, args.seed), domains)
        checks += [c for d, rs in zip(domains, runs) for c in _named(d, rs)]
    return {"domain": table["domain"], "parity_config": cfg.to_json(), "result": demo, "checks": checks}


def cmd_counterexample(args) -> dict:
    table = counterexample_table(args.depth)
    checks = [{"name": "naive_sign_violates_exchange_law", "passed": table["naive_violations"] >= 1,
               "violations": table["naive_violations"]},
              {"name": "epsilon_satisfies_exchange_law", "passed": table["epsilon_violations"] == 0,
               "violations": table["epsilon_violations"]}]
    return {"domain": table["domain"], "result": table, "checks": checks}


def cmd_equiv_check(args) -> dict:
    rng = random.Random(args.seed)
    n = args.n
    d = smp.finite_domain(rng, n)
    cfg = smp.parity_config(rng)
    ctx = SignContext(Sector.dirac(d), cfg)
    sea = build_sea_rep(ctx)
    sea_pts = [x for x in d.ordered if x.side is Side.MINUS]
    slots = list(range(len(sea_pts)))
    rng.shuffle(slots)
    fock = build_fock_rep(ctx.sector, conj=dict(zip(sea_pts, slots)))
    w = build_intertwiner(fock, sea)
    resid = max(intertwining_residual(w, fock, sea), unitarity_residual(w))
    vac_ok = bool(w[:, 0].toarray().ravel()[0] == 1 and abs(w[:, 0]).sum() == 1)
    checks = [{"name": "intertwiner", "passed": resid == 0.0, "max_residual": resid},
              {"name": "vacuum_to_reference", "passed": vac_ok}]
    dims = {}
    if n <= 6:
        dims = {"sea": commutant_dimension(sea), "fock": commutant_dimension(fock)}
        checks.append({"name": "irreducible", "passed": dims["sea"] == 1 and dims["fock"] == 1,
                       "commutant_dim": dims})
    other = smp.reorder(d, rng)
    rep2 = build_sea_rep(SignContext(Sector.dirac(other), smp.parity_config(rng)))
    eq = check_rep_equivalence(sea, rep2, {x: other.label(x.name) for x in d.ordered})
    checks.append({"name": "equivalent_under_reorder_and_parity_choice", "passed": eq.equivalent,
                   "max_residual": eq.max_residual, "reason": eq.reason})
    return {"domain": d.to_json(), "parity_config": cfg.to_json(),
            "result": {"intertwiner_found": resid == 0.0, "max_residual": resid,
                       "commutant_dim": dims.get("sea")},
            "checks": checks}


def cmd_ss_check(args) -> dict:
    obj = _load_json(args.operator)
    domain = None
    if args.domain is not None:
        domain = _parse_domains(args.domain)[0]
    exact = None if args.mode is None else args.mode == "exact"
    u = unitary_from_json(obj, domain, exact)
    decision = is_implementable(u)
    return {"domain": u.domain.to_json(), "result": decision.to_json(),
            "checks": [{"name": "decided", "passed": True}]}


def cmd_evolve(args) -> dict:
    if args.mode == "exact":
        raise NumericModeMismatch("evolve needs float mode (phases are transcendental)")
    h_obj = _load_json(args.hamiltonian)
    s_obj = _load_json(args.state)
    state = SectorState.from_json(s_obj)
    h = DiagonalHamiltonian.from_json(h_obj, state.sector.domain)
    if h.sector != state.sector:
        raise ValueError("Hamiltonian and state refer to different sectors")
    state = state.to_float()
    evolved = evolve_state(state, args.t, h)
    checks = [{"name": "norm_preserved",
               "passed": abs(float(evolved.norm2()) - float(state.norm2())) <= args.tolerance_or(1e-12),
               "residual": abs(float(evolved.norm2()) - float(state.norm2()))}]
    out = {"domain": state.sector.domain.to_json(), "result": {"t": args.t, "state": evolved.to_json()}}
    if args.check_derivative:
        d = state.sector.domain
        u = OneParticleVector(d, {position_from_json(d, t["position"]): tuple(t["c"])
                                  for t in args.field_vector}, exact=False) if args.field_vector else None
        if u is None:
            support = {x: 1.0 for diag in state.terms for x in diag.holes + diag.particles}
            if not support:
                support = {d.sample_positions()[0]: 1.0}
            u = OneParticleVector(d, support, exact=False)
        ctx = SignContext(state.sector)
        rows = []
        prev = None
        for dt in args.dt:
            r = derivative_residual(u, state, args.t, dt, h, ctx)
            rows.append({"dt": dt, "residual": r, "ratio": (prev / r) if prev and r else None})
            prev = r
        out["result"]["derivative"] = rows
        ratios = [row["ratio"] for row in rows if row["ratio"] is not None]
        ok = all(row["residual"] <= 1e-10 for row in rows) or all(3.5 <= q <= 4.5 for q in ratios)
        checks.append({"name": "second_order_convergence", "passed": ok})
    out["checks"] = checks
    return out


COMMANDS = {
    "car-check": cmd_car_check,
    "epsilon-demo": cmd_epsilon_demo,
    "parity-check": cmd_parity_check,
    "equiv-check": cmd_equiv_check,
    "ss-check": cmd_ss_check,
    "evolve": cmd_evolve,
    "counterexample": cmd_counterexample,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--float", dest="mode", action="store_const", const="float")
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    parser = _Parser(prog="dirac-sea", description="Checks for fermionic sea quantization.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("car-check", parents=[common], help="randomized anticommutation suite")
    p.add_argument("--domain", default="reversed_integers")
    p.add_argument("--sector", default="minus", choices=["minus", "plus", "empty", "whole"])
    p.add_argument("--trials", type=int, default=200)

    p = sub.add_parser("epsilon-demo", parents=[common], help="sign table and exchange laws")
    p.add_argument("--domain", default="all")
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--seeded", action="store_true", help="seeded limit choices instead of constant 0")

    p = sub.add_parser("parity-check", parents=[common], help="parity homomorphism suite")
    p.add_argument("--domain", default="all")
    p.add_argument("--trials", type=int, default=200)

    p = sub.add_parser("equiv-check", parents=[common], help="finite matrix oracle")
    p.add_argument("--n", type=int, default=6)

    p = sub.add_parser("ss-check", parents=[common], help="Hilbert-Schmidt implementability decision")
    p.add_argument("--operator", required=True, help="operator JSON file, '-' for stdin")
    p.add_argument("--domain", default=None)

    p = sub.add_parser("evolve", parents=[common], help="time evolution of a sector state")
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--check-derivative", action="store_true")
    p.add_argument("--dt", type=float, nargs="+", default=[1e-3, 5e-4, 2.5e-4])
    p.add_argument("--field-vector", type=json.loads, default=None,
                   help='JSON list of {"position", "c"} for the derivative check')

    p = sub.add_parser("counterexample", parents=[common], help="ordinal-sign failure table")
    p.add_argument("--depth", type=int, default=6)
    return parser


def _validate(args):
    for name in ("trials", "n", "depth"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise UsageError(f"--{name} must be nonnegative")
    if getattr(args, "n", None) is not None and not 1 <= args.n <= 12:
        raise UsageError("--n must lie in 1..12")
    if getattr(args, "dt", None) is not None and any(dt <= 0 for dt in args.dt):
        raise UsageError("--dt values must be positive")
    tol = args.tolerance
    args.tolerance_or = lambda default: default if tol is None else tol


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2, default=str) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    base = {"schema": SCHEMA, "version": __version__, "argv": argv}
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
        _threads()
        started = time.perf_counter()
        body = COMMANDS[args.command](args)
        elapsed = time.perf_counter() - started
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (UsageError, DiracSeaError, ValueError, KeyError, TypeError, OSError) as exc:
        base["error"] = {"type": type(exc).__name__, "message": str(exc)}
        _emit(base)
        return 2
    report = dict(base, command=args.command, seed=args.seed, mode=args.mode, **body)
    report["passed"] = all(c.get("passed", False) for c in body.get("checks", []))
    if args.timing:
        report["wall_time_s"] = elapsed
    _emit(report)
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
