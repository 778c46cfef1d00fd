"""End-to-end acceptance criteria, one test per criterion.

Each test prints a single ``[acceptance]`` line with its verdict, measured
figures and wall time so that ``pytest -v`` doubles as the acceptance report.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from dirac_sea import numeric, sampling as smp
from dirac_sea.checks import builtin_domains, car_suite, counterexample_table, epsilon_suite, parity_suite
from dirac_sea.dynamics import (DiagonalHamiltonian, derivative_residual, evolve_field, evolve_state,
                                evolve_vector, fock_energies, heisenberg_side, sector_energy, state_norm)
from dirac_sea.epsilon import SignContext
from dirac_sea.fields import OneParticleVector
from dirac_sea.fock import (build_fock_rep, build_intertwiner, build_sea_rep, check_rep_equivalence,
                            commutant_dimension, field_norm_identity_exact, field_operator_norm,
                            intertwining_residual, unitarity_residual)
from dirac_sea.implementability import OneParticleUnitary, is_implementable
from dirac_sea.ordered_index import ReversedIntegers, SignedInteger
from dirac_sea.parity import ParityConfig
from dirac_sea.sector import Sector

SEED = 20240601


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail, elapsed, limit=None):
        budget = f" (limit {limit:g}s)" if limit is not None else ""
        verdict = "PASS" if ok else "FAIL"
        with capsys.disabled():
            print(f"\n[acceptance] {number:>2} {title}: {verdict} | {detail} | {elapsed:.2f}s{budget}")
    return emit


def test_criterion_01_car(report):
    start = time.perf_counter()
    worst, failures, trials = 0.0, 0, 0
    for i, d in enumerate(builtin_domains()):
        for r in car_suite(d, 1000, SEED + i, exact=True, tol=0.0):
            worst = max(worst, r.max_residual)
            failures += r.failures
            trials += r.trials
    elapsed = time.perf_counter() - start
    ok = failures == 0 and worst == 0.0 and elapsed < 10
    report(1, "CAR suite exact", ok, f"{trials} checks, {failures} failures, max residual {worst}", elapsed, 10)
    assert ok


def test_criterion_02_epsilon_laws(report):
    start = time.perf_counter()
    counts = {}
    failures = 0
    for i, d in enumerate(builtin_domains()):
        for r in epsilon_suite(d, 1000, SEED + i):
            counts[r.name] = counts.get(r.name, 0) + r.trials
            failures += r.failures
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 5 and min(counts.values()) >= 1000
    report(2, "epsilon laws", ok, f"instances {counts}, {failures} failures", elapsed, 5)
    assert ok


def test_criterion_03_counterexample(report):
    start = time.perf_counter()
    table = counterexample_table(depth=6)
    elapsed = time.perf_counter() - start
    ok = table["naive_violations"] >= 1 and table["epsilon_violations"] == 0
    report(3, "ordinal counterexample", ok,
           f"naive violations {table['naive_violations']}, epsilon violations {table['epsilon_violations']}",
           elapsed)
    assert ok


def test_criterion_04_parity(report):
    start = time.perf_counter()
    failures, trials = {}, {}
    for i, d in enumerate(builtin_domains()):
        for r in parity_suite(d, 1000, SEED + i, reencodings=200):
            failures[r.name] = failures.get(r.name, 0) + r.failures
            trials[r.name] = trials.get(r.name, 0) + r.trials
    elapsed = time.perf_counter() - start
    ok = not any(failures.values())
    report(4, "parity homomorphism", ok, f"trials {trials}, failures {sum(failures.values())}", elapsed)
    assert ok


def _random_conj(rng, sector, d):
    sea = [x for x in d.ordered if sector.in_sea(x)]
    slots = list(range(len(sea)))
    rng.shuffle(slots)
    return dict(zip(sea, slots))


def test_criterion_05_fock_equivalence(report):
    rng = random.Random(SEED)
    start = time.perf_counter()
    worst, bad, n8_time = 0.0, 0, 0.0
    for n in range(1, 9):
        t0 = time.perf_counter()
        for _ in range(20):
            d = smp.reorder(smp.finite_domain(rng, n), rng)
            sector = Sector.dirac(d)
            sea = build_sea_rep(SignContext(sector, smp.parity_config(rng)))
            fock = build_fock_rep(sector, conj=_random_conj(rng, sector, d))
            w = build_intertwiner(fock, sea)
            res = max(intertwining_residual(w, fock, sea), unitarity_residual(w))
            worst = max(worst, res)
            if res != 0 or not np.array_equal(w @ fock.vacuum, sea.vacuum):
                bad += 1
        if n == 8:
            n8_time = time.perf_counter() - t0
    elapsed = time.perf_counter() - start
    ok = bad == 0 and worst == 0 and n8_time < 60
    report(5, "Fock intertwiner", ok, f"160 configs, {bad} bad, max residual {worst}, n=8 took {n8_time:.2f}s",
           elapsed, 60)
    assert ok


def test_criterion_06_irreducibility(report):
    rng = random.Random(SEED + 6)
    start = time.perf_counter()
    dims = set()
    for n in range(1, 7):
        for _ in range(3):
            d = smp.finite_domain(rng, n)
            sector = Sector.dirac(d)
            dims.add(commutant_dimension(build_sea_rep(SignContext(sector, smp.parity_config(rng)))))
            dims.add(commutant_dimension(build_fock_rep(sector, conj=_random_conj(rng, sector, d))))
    elapsed = time.perf_counter() - start
    ok = dims == {1}
    report(6, "irreducibility", ok, f"commutant dimensions seen {sorted(dims)}", elapsed)
    assert ok


def test_criterion_07_equivalence_under_choices(report):
    rng = random.Random(SEED + 7)
    start = time.perf_counter()
    bad, worst = 0, 0.0
    for n in range(1, 7):
        d = smp.finite_domain(rng, n)
        for _ in range(20):
            e = smp.reorder(d, rng)
            r1 = build_sea_rep(SignContext(Sector.dirac(d), smp.parity_config(rng)))
            r2 = build_sea_rep(SignContext(Sector.dirac(e), smp.parity_config(rng)))
            res = check_rep_equivalence(r1, r2, {x: e.label(x.name) for x in d.ordered})
            worst = max(worst, res.max_residual)
            bad += not res.equivalent
    elapsed = time.perf_counter() - start
    ok = bad == 0
    report(7, "equivalence under choices", ok, f"120 pairs, {bad} not equivalent, max residual {worst}", elapsed)
    assert ok


def test_criterion_08_shale_stinespring(report):
    z = ReversedIntegers()
    start = time.perf_counter()
    ident = is_implementable(OneParticleUnitary.identity(z))
    swap = is_implementable(OneParticleUnitary.swaps(z, [(SignedInteger(-1), SignedInteger(1))]))
    mirror = is_implementable(OneParticleUnitary.mirror(z))
    elapsed = time.perf_counter() - start
    ok = (ident.implementable and ident.minus_plus.value == ident.plus_minus.value == 0
          and swap.implementable and swap.minus_plus.value == swap.plus_minus.value == 1
          and not mirror.implementable and mirror.minus_plus.certificate is not None
          and mirror.plus_minus.certificate is not None
          and mirror.minus_plus.value is None and mirror.plus_minus.value is None)
    report(8, "Shale-Stinespring decisions", ok,
           f"id {ident.minus_plus}/{ident.plus_minus}, swap {swap.minus_plus}/{swap.plus_minus}, "
           f"mirror {mirror.minus_plus}/{mirror.plus_minus}", elapsed)
    assert ok


def _oracle_match(rng, n):
    d = smp.finite_domain(rng, n, balanced=True)
    sector = Sector.dirac(d)
    sea_pts = [x for x in d.ordered if sector.in_sea(x)]
    rest = [x for x in d.ordered if not sector.in_sea(x)]
    rng.shuffle(rest)
    pairing = dict(zip(sea_pts, rest))
    energies = {a: -rng.uniform(0.1, 3) for a in sea_pts}
    h = DiagonalHamiltonian(sector, "zero", 0, {**energies, **{pairing[a]: -e for a, e in energies.items()}},
                            pairing)
    sea = build_sea_rep(SignContext(sector, smp.parity_config(rng)))
    fock = build_fock_rep(sector, conj=pairing)
    w = build_intertwiner(fock, sea).toarray().astype(float)
    ef = fock_energies(fock, h)
    worst = 0.0
    for _ in range(3):
        t = rng.uniform(-4, 4)
        u = smp.vector(d, rng, exact=False)
        got = sea.basis_field_matrix(evolve_vector(u, t, h)).toarray()
        phase = np.exp(1j * t * ef)
        want = w @ (phase[:, None] * fock.basis_field_matrix(u).toarray() * phase.conj()[None, :]) @ w.T
        worst = max(worst, float(np.max(np.abs(got - want))))
    return worst


def test_criterion_09_dynamics(report):
    rng = random.Random(SEED + 9)
    z = ReversedIntegers()
    sector = Sector.dirac(z)
    ctx = SignContext(sector)
    h = DiagonalHamiltonian(sector, "linear", 1, {SignedInteger(-2): Fraction(-5, 2), SignedInteger(2): Fraction(5, 2)})
    start = time.perf_counter()
    min_energy = min(sector_energy(smp.diagram(sector, rng, 4), h) for _ in range(1000))
    unit, group, heis = 0.0, 0.0, 0.0
    for _ in range(100):
        s = smp.state(sector, rng, exact=False, max_terms=4)
        t1, t2 = rng.uniform(-10, 10), rng.uniform(-10, 10)
        unit = max(unit, abs(state_norm(evolve_state(s, t1, h)) - state_norm(s)))
        group = max(group, evolve_state(evolve_state(s, t1, h), t2, h).max_abs_diff(evolve_state(s, t1 + t2, h)))
        u = smp.vector(z, rng, exact=False)
        heis = max(heis, evolve_field(u, t1, s, h, ctx).max_abs_diff(heisenberg_side(u, t1, s, h, ctx)))
    u = OneParticleVector(z, {SignedInteger(-1): 1.0, SignedInteger(2): 0.5j}, exact=False)
    s = smp.state(sector, rng, exact=False, max_terms=4)
    residuals = [derivative_residual(u, s, 0.7, dt, h, ctx) for dt in (1e-3, 5e-4, 2.5e-4)]
    ratios = [residuals[0] / residuals[1], residuals[1] / residuals[2]]
    oracle = max(_oracle_match(rng, n) for n in (2, 4, 6))
    elapsed = time.perf_counter() - start
    ok = (min_energy >= 0 and unit < 1e-12 and group < 1e-12 and heis < 1e-10
          and all(3.5 <= q <= 4.5 for q in ratios) and oracle < 1e-10 and elapsed < 30)
    report(9, "dynamics", ok,
           f"min E {min_energy}, unitarity {unit:.1e}, group {group:.1e}, Heisenberg {heis:.1e}, "
           f"Richardson {ratios[0]:.3f}/{ratios[1]:.3f}, oracle {oracle:.1e}", elapsed, 30)
    assert ok


def test_criterion_10_norm_identity(report):
    rng = random.Random(SEED + 10)
    start = time.perf_counter()
    worst, exact_ok = 0.0, 0
    for k in range(50):
        n = rng.randint(1, 10)
        d = smp.finite_domain(rng, n)
        rep = build_sea_rep(SignContext(Sector.named(d, rng.choice(["minus", "whole", "empty"])),
                                        smp.parity_config(rng)))
        u = smp.vector(d, rng, exact=True, max_support=n)
        exact_ok += field_norm_identity_exact(rep, u)
        fu = OneParticleVector(d, {x: numeric.to_float(c) for x, c in u.coeffs.items()}, exact=False)
        worst = max(worst, abs(field_operator_norm(rep, fu) - math.sqrt(float(u.norm2()))))
    elapsed = time.perf_counter() - start
    ok = exact_ok == 50 and worst < 1e-10
    report(10, "field norm identity", ok, f"exact {exact_ok}/50, float max deviation {worst:.1e}", elapsed)
    assert ok
