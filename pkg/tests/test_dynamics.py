import cmath
import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dirac_sea import sampling as smp
from dirac_sea.dynamics import (DiagonalHamiltonian, apply_hamiltonian, derivative_residual,
                                evolve_field, evolve_state, evolve_vector, fock_energies,
                                heisenberg_side, sector_energy, state_norm)
from dirac_sea.epsilon import SignContext
from dirac_sea.errors import DomainMismatch, NumericModeMismatch
from dirac_sea.fields import Kind, OneParticleVector, anticommutator, field, field_adjoint
from dirac_sea.fock import build_fock_rep, build_intertwiner, build_sea_rep
from dirac_sea.ordered_index import FiniteExplicit, OrdinalSum, ReversedIntegers, SignedInteger
from dirac_sea.sector import SeaDiagram, Sector, SectorState

from strategies import rngs

Z = ReversedIntegers()
S = SignedInteger
SEC = Sector.dirac(Z)
CTX = SignContext(SEC)
LINEAR = DiagonalHamiltonian(SEC, "linear", 1)


def float_state(rng, sector=SEC):
    return smp.state(sector, rng, exact=False, max_terms=4)


def float_vector(rng, d=Z):
    return smp.vector(d, rng, exact=False)


def test_energy_examples():
    assert sector_energy(SEC.vacuum, LINEAR) == 0
    for m in (1, 2.5):
        h = DiagonalHamiltonian(SEC, "constant", m)
        assert sector_energy(SEC.diagram([S(-1)], [S(1)]), h) == 2 * m
    assert sector_energy(SEC.diagram([S(-1), S(-2)]), LINEAR) == 3


def test_energy_rejects_foreign_diagram():
    with pytest.raises(DomainMismatch):
        sector_energy(SeaDiagram(holes=(S(2),)), LINEAR)


@given(rng=rngs)
def test_positivity(rng):
    h = DiagonalHamiltonian(SEC, rng.choice(["zero", "constant", "linear"]), rng.randint(0, 5),
                            {S(-3): -7, S(3): 7})
    for _ in range(5):
        assert sector_energy(smp.diagram(SEC, rng, 4), h) >= 0


@given(rng=rngs, t=st.floats(-20, 20))
def test_unitarity_and_group_law(rng, t):
    s = float_state(rng)
    t2 = rng.uniform(-5, 5)
    assert abs(state_norm(evolve_state(s, t, LINEAR)) - state_norm(s)) < 1e-12
    lhs = evolve_state(evolve_state(s, t, LINEAR), t2, LINEAR)
    assert lhs.max_abs_diff(evolve_state(s, t + t2, LINEAR)) < 1e-12


def test_trivial_evolutions():
    rng = random.Random(1)
    s = float_state(rng)
    assert evolve_state(s, 0.0, LINEAR) == s
    zero = DiagonalHamiltonian(SEC, "zero")
    assert evolve_state(s, 3.7, zero).max_abs_diff(s) == 0
    u = float_vector(rng)
    assert evolve_field(u, 0.0, s, LINEAR, CTX) == field(u, s, CTX)


def test_full_period():
    h = DiagonalHamiltonian(SEC, "constant", 1)
    s = SectorState.basis(SEC, SEC.diagram([S(-1)], [S(1)]), 0.3 - 0.4j, exact=False)
    assert s.max_abs_diff(evolve_state(s, math.pi, h)) < 1e-12


def test_annihilation_phase():
    m, t = 1.5, 0.8
    h = DiagonalHamiltonian(SEC, "constant", m)
    vac = SectorState.vacuum(SEC, exact=False)
    u = OneParticleVector.basis(Z, S(-1), 1.0, exact=False)
    got = evolve_field(u, t, vac, h, CTX)
    assert abs(evolve_vector(u, t, h).coeffs[S(-1)] - cmath.exp(-1j * t * m)) < 1e-15
    # the field is antilinear, so the amplitude exp(-i t m) of u_t arrives conjugated
    want = SectorState.basis(SEC, SEC.diagram([S(-1)]), cmath.exp(1j * t * m), exact=False)
    assert got.max_abs_diff(want) < 1e-14


@given(rng=rngs, t=st.floats(-10, 10))
def test_heisenberg_identity(rng, t):
    u, s = float_vector(rng), float_state(rng)
    lhs = evolve_field(u, t, s, LINEAR, CTX)
    assert lhs.max_abs_diff(heisenberg_side(u, t, s, LINEAR, CTX)) < 1e-10


@given(rng=rngs, t=st.floats(-3, 3))
def test_car_at_time_t(rng, t):
    s = float_state(rng)
    j, k = rng.choice(Z.sample_positions()), rng.choice(Z.sample_positions())
    uj = evolve_vector(OneParticleVector.basis(Z, j, 1.0, exact=False), t, LINEAR)
    uk = evolve_vector(OneParticleVector.basis(Z, k, 1.0, exact=False), t, LINEAR)
    got = field(uj, field_adjoint(uk, s, CTX), CTX) + field_adjoint(uk, field(uj, s, CTX), CTX)
    want = s if j == k else SectorState.zero(SEC, exact=False)
    assert got.max_abs_diff(want) < 1e-12
    assert not anticommutator(Kind.ANN, j, Kind.ANN, k, s, CTX)


def test_derivative_examples():
    rng = random.Random(2)
    s = float_state(rng)
    zero = DiagonalHamiltonian(SEC, "zero")
    u = float_vector(rng)
    assert derivative_residual(u, s, 0.4, 1e-4, zero, CTX) == 0
    e1 = OneParticleVector.basis(Z, S(-1), 1.0, exact=False)
    vac = SectorState.vacuum(SEC, exact=False)
    assert derivative_residual(e1, vac, 0.7, 1e-4, LINEAR, CTX) < 1e-7
    r1 = derivative_residual(e1, vac, 0.7, 1e-2, LINEAR, CTX)
    r2 = derivative_residual(e1, vac, 0.7, 5e-3, LINEAR, CTX)
    assert abs(r1 / r2 - 4) < 0.05
    with pytest.raises(ValueError):
        derivative_residual(e1, vac, 0.7, 0.0, LINEAR, CTX)


def test_exact_mode_rejected():
    rng = random.Random(3)
    with pytest.raises(NumericModeMismatch):
        evolve_state(smp.state(SEC, rng, exact=True), 1.0, LINEAR)
    with pytest.raises(NumericModeMismatch):
        evolve_field(smp.vector(Z, rng, exact=True), 1.0, float_state(rng), LINEAR, CTX)


def test_apply_hamiltonian_exact_and_float():
    u = OneParticleVector(Z, {S(-2): 1, S(3): (0, 1)})
    hu = apply_hamiltonian(u, LINEAR)
    assert hu == OneParticleVector(Z, {S(-2): -2, S(3): (0, 3)})


def test_validation():
    with pytest.raises(ValueError):
        DiagonalHamiltonian(SEC, "linear", -1)
    with pytest.raises(ValueError):
        DiagonalHamiltonian(SEC, "quadratic", 1)
    with pytest.raises(ValueError):
        DiagonalHamiltonian(SEC, "linear", 1, {S(-1): 2})          # wrong sign in the sea
    with pytest.raises(ValueError):
        DiagonalHamiltonian(SEC, "linear", 1, {S(-1): -3})         # partner keeps +1
    with pytest.raises(DomainMismatch):
        DiagonalHamiltonian(Sector.named(Z, "whole"))
    with pytest.raises(DomainMismatch):
        DiagonalHamiltonian(Sector.dirac(OrdinalSum("w^2", "w")))
    d = FiniteExplicit.from_sides(["minus", "minus", "plus"])
    with pytest.raises(DomainMismatch):
        DiagonalHamiltonian(Sector.dirac(d), pairing={d.ordered[0]: d.ordered[2]})


def test_json_roundtrip():
    h = DiagonalHamiltonian(SEC, "constant", 2, {S(-4): -5, S(4): 5})
    assert DiagonalHamiltonian.from_json(h.to_json()) == h
    d = FiniteExplicit.from_sides(["minus", "plus", "plus", "minus"])
    a, b, c, e = d.ordered
    g = DiagonalHamiltonian(Sector.dirac(d), "linear", 1, pairing={a: c, e: b})
    assert DiagonalHamiltonian.from_json(g.to_json()) == g


@pytest.mark.parametrize("n", [2, 4, 6])
def test_fock_oracle_consistency(n):
    rng = random.Random(n)
    d = smp.finite_domain(rng, n, balanced=True)
    sector = Sector.dirac(d)
    sea_pts = [x for x in d.ordered if sector.in_sea(x)]
    rest = [x for x in d.ordered if not sector.in_sea(x)]
    rng.shuffle(rest)
    pairing = dict(zip(sea_pts, rest))
    energies = {a: -rng.uniform(0.1, 3) for a in sea_pts}
    overrides = {**energies, **{pairing[a]: -e for a, e in energies.items()}}
    h = DiagonalHamiltonian(sector, "zero", 0, overrides, pairing)
    ctx = SignContext(sector, smp.parity_config(rng))
    sea = build_sea_rep(ctx, modes=d.ordered)
    fock = build_fock_rep(sector, conj=pairing, modes=d.ordered)
    w = build_intertwiner(fock, sea).toarray().astype(float)
    ef = fock_energies(fock, h)
    # transported number operators are diagonal with the diagram energies
    sea_diag = np.array([float(sector_energy(lab, h)) for lab in sea.labels])
    assert np.allclose(w @ np.diag(ef) @ w.T, np.diag(sea_diag), atol=1e-12)
    for _ in range(3):
        t = rng.uniform(-4, 4)
        u = float_vector(rng, d)
        got = sea.basis_field_matrix(evolve_vector(u, t, h)).toarray()
        phase = np.exp(1j * t * ef)
        want = w @ (phase[:, None] * fock.basis_field_matrix(u).toarray() * phase.conj()[None, :]) @ w.T
        assert np.max(np.abs(got - want)) < 1e-10
