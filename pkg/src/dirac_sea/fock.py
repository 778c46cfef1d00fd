"""Finite-dimensional matrix oracle for the sea and Fock representations.

Both representations act on ``2^n``-dimensional spaces indexed by bit masks.
Basis fields are signed partial permutations, so their matrices are stored as
``int64`` scipy sparse matrices and every identity below is checked in exact
integer arithmetic.  Only representations transported by a general unitary
(see :meth:`DenseRep.transformed`) fall back to complex floats.

Product convention for the intertwiner: ``prod_{j in S} F_j`` lists its
factors in increasing domain order from left to right, so applied to a vector
the largest factor acts first; all creation factors stand to the left of all
annihilation factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Mapping, Optional, Sequence

import numpy as np
import scipy.sparse as sp

from . import numeric
from .epsilon import SignContext, epsilon
from .errors import CapExceeded, DimensionMismatch, DomainMismatch
from .fields import OneParticleVector
from .ordered_index import IndexDomain, Position
from .sector import Sector

FOCK_CAP = 12
COMMUTANT_CAP = 6
FLOAT_TOL = 1e-10


@dataclass(frozen=True)
class FockBasisElement:
    """Occupied antiparticle slots (labelled by sea points) and particle modes."""

    antiparticles: tuple[Position, ...] = ()
    particles: tuple[Position, ...] = ()


@dataclass(eq=False)
class DenseRep:
    """Matrices ``F_j`` of the basis fields on a ``2^n``-dimensional space.

    ``ann[j]`` is the matrix of the field at ``e_j``; the field at a general
    ``u`` is ``sum conj(c_j) F_j``.  ``vacuum_pattern`` is the set of modes
    whose field (rather than its adjoint) kills the cyclic vector.
    """

    kind: str
    domain: IndexDomain
    modes: tuple[Position, ...]
    ann: dict
    labels: tuple
    vacuum_pattern: frozenset
    vacuum: Optional[np.ndarray] = None
    _cre: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return len(self.modes)

    @property
    def dim(self) -> int:
        return next(iter(self.ann.values())).shape[0] if self.ann else 1

    @property
    def exact(self) -> bool:
        return all(m.dtype.kind == "i" for m in self.ann.values())

    def field_matrix(self, j: Position):
        return self.ann[j]

    def adjoint_matrix(self, j: Position):
        hit = self._cre.get(j)
        if hit is None:
            hit = self._cre[j] = self.ann[j].conj().T.tocsr()
        return hit

    def generators(self):
        for j in self.modes:
            yield self.ann[j]
            yield self.adjoint_matrix(j)

    def vacuum_vector(self) -> np.ndarray:
        """The stored cyclic vector, or the unit vector spanning the common kernel."""
        if self.vacuum is not None:
            return self.vacuum
        ops = [self.ann[j] if j in self.vacuum_pattern else self.adjoint_matrix(j) for j in self.modes]
        stacked = sp.vstack(ops).toarray().astype(complex)
        _, s, vh = np.linalg.svd(stacked)
        null = vh[np.sum(s > FLOAT_TOL):]
        if null.shape[0] != 1:
            raise DimensionMismatch(f"cyclic vector is not unique (kernel dimension {null.shape[0]})")
        v = null[0].conj()
        k = int(np.argmax(np.abs(v)))
        return v * (abs(v[k]) / v[k])

    def transformed(self, unitary: np.ndarray) -> DenseRep:
        """The representation ``u -> F(U u)`` for a unitary on the mode space.

        ``unitary[a, b]`` is the ``e_{modes[a]}`` component of ``U e_{modes[b]}``.
        """
        u = np.asarray(unitary, dtype=complex)
        if u.shape != (self.n, self.n):
            raise DimensionMismatch(f"expected a {self.n}x{self.n} unitary")
        ann = {}
        for b, j in enumerate(self.modes):
            acc = sp.csr_matrix((self.dim, self.dim), dtype=complex)
            for a, x in enumerate(self.modes):
                if u[a, b] != 0:
                    acc = acc + np.conj(u[a, b]) * self.ann[x]
            ann[j] = acc.tocsr()
        return DenseRep(f"{self.kind}∘U", self.domain, self.modes, ann, self.labels,
                        self.vacuum_pattern, None)

    def basis_field_matrix(self, u: OneParticleVector):
        """Matrix of the field at ``u`` (complex float)."""
        if u.domain != self.domain:
            raise DomainMismatch("vector and representation live over different domains")
        acc = sp.csr_matrix((self.dim, self.dim), dtype=complex)
        for x, c in u.coeffs.items():
            if x not in self.ann:
                raise DomainMismatch(f"{x} is not one of the represented modes")
            acc = acc + np.conj(numeric.to_float(c)) * self.ann[x]
        return acc.tocsr()


def direct_sum(r1: DenseRep, r2: DenseRep) -> DenseRep:
    """Block-diagonal sum; the result is reducible and has no single vacuum."""
    if r1.modes != r2.modes:
        raise DimensionMismatch("direct sum needs matching modes")
    ann = {j: sp.block_diag((r1.ann[j], r2.ann[j]), format="csr") for j in r1.modes}
    labels = tuple((0, l) for l in r1.labels) + tuple((1, l) for l in r2.labels)
    rep = DenseRep("sum", r1.domain, r1.modes, ann, labels, r1.vacuum_pattern, None)
    return rep


# -- construction --------------------------------------------------------------

def _resolve_modes(domain: IndexDomain, modes: Optional[Sequence[Position]]) -> tuple:
    if modes is None:
        if not domain.is_finite:
            raise CapExceeded("infinite domains need an explicit finite set of modes")
        modes = domain.sample_positions()
    modes = domain.sorted({domain.check(x) for x in modes})
    return modes


def _check_cap(n: int, cap: int):
    if n > cap:
        raise CapExceeded(f"{n} modes exceed the dense cap of {cap}")


def _monomial(rows, cols, vals, dim) -> sp.csr_matrix:
    return sp.csr_matrix((np.asarray(vals, dtype=np.int64), (np.asarray(rows, dtype=np.int64),
                                                              np.asarray(cols, dtype=np.int64))),
                         shape=(dim, dim))


def build_sea_rep(ctx: SignContext, modes: Optional[Sequence[Position]] = None,
                  cap: int = FOCK_CAP) -> DenseRep:
    """Matrices of the sector fields on the diagrams toggling only ``modes``.

    Bit ``i`` of a basis index flips membership of ``modes[i]`` relative to the
    reference set, so index 0 is the reference diagram.
    """
    sector = ctx.sector
    d = sector.domain
    modes = _resolve_modes(d, modes)
    n = len(modes)
    _check_cap(n, cap)
    dim = 1 << n
    labels = []
    for mask in range(dim):
        toggled = [modes[i] for i in range(n) if mask >> i & 1]
        labels.append(sector.from_finite(toggled))
    ann = {}
    for i, j in enumerate(modes):
        rows, cols, vals = [], [], []
        bit = 1 << i
        for mask, diag in enumerate(labels):
            if sector.contains(diag, j):
                rows.append(mask ^ bit)
                cols.append(mask)
                vals.append(epsilon(diag, j, ctx))
        ann[j] = _monomial(rows, cols, vals, dim)
    pattern = frozenset(j for j in modes if not sector.in_sea(j))
    vac = np.zeros(dim, dtype=np.int64)
    vac[0] = 1
    return DenseRep("sea", d, modes, ann, tuple(labels), pattern, vac)


def _slot_order(sector: Sector, sea_modes: Sequence[Position],
                conj: Optional[Mapping[Position, Hashable]]) -> list:
    if conj is None:
        return list(sea_modes)
    if set(conj) != set(sea_modes):
        raise DomainMismatch("conjugation must be defined exactly on the sea modes")
    images = [conj[a] for a in sea_modes]
    if len(set(images)) != len(images):
        raise DomainMismatch("conjugation must be injective")
    d = sector.domain
    if all(d.contains(y) for y in images):
        key = lambda a: d.key(conj[a])
    else:
        key = lambda a: conj[a]
    return sorted(sea_modes, key=key)


def build_fock_rep(sector, conj: Optional[Mapping[Position, Hashable]] = None,
                   modes: Optional[Sequence[Position]] = None, cap: int = FOCK_CAP) -> DenseRep:
    """Fock representation on antiparticle (x) particle exterior algebras.

    Sea point ``a`` maps to creation of the antiparticle slot labelled
    ``conj[a]`` twisted by ``(-1)^N+``; a point ``b`` outside the sea maps to
    annihilation of particle ``b``.  Slots are ordered by their images under
    ``conj`` (domain order when the images are positions), then particles by
    domain order.  Bit ``i`` of a basis index is occupation of slot ``i``.
    """
    if not isinstance(sector, Sector):
        sector = Sector.dirac(sector)
    d = sector.domain
    modes = _resolve_modes(d, modes)
    n = len(modes)
    _check_cap(n, cap)
    dim = 1 << n
    sea = [x for x in modes if sector.in_sea(x)]
    rest = [x for x in modes if not sector.in_sea(x)]
    slots = _slot_order(sector, sea, conj) + rest
    bit_of = {x: i for i, x in enumerate(slots)}
    k = len(sea)
    particle_mask = ((1 << n) - 1) ^ ((1 << k) - 1)
    ann = {}
    for x in modes:
        i = bit_of[x]
        bit = 1 << i
        below = bit - 1
        rows, cols, vals = [], [], []
        for mask in range(dim):
            if i < k:
                # antiparticle creation: Jordan-Wigner sign inside the slots, then the N+ twist
                if mask & bit:
                    continue
                parity = bin(mask & below).count("1") + bin(mask & particle_mask).count("1")
            else:
                if not mask & bit:
                    continue
                parity = bin(mask & below & particle_mask).count("1")
            rows.append(mask ^ bit)
            cols.append(mask)
            vals.append(-1 if parity & 1 else 1)
        ann[x] = _monomial(rows, cols, vals, dim)
    labels = []
    for mask in range(dim):
        occ = [slots[i] for i in range(n) if mask >> i & 1]
        labels.append(FockBasisElement(tuple(a for a in occ if sector.in_sea(a)),
                                       tuple(b for b in occ if not sector.in_sea(b))))
    vac = np.zeros(dim, dtype=np.int64)
    vac[0] = 1
    return DenseRep("fock", d, modes, ann, tuple(labels), frozenset(rest), vac)


# -- intertwiners ----------------------------------------------------------------

def _action(mat: sp.csr_matrix):
    """``(target, sign)`` per column of a signed partial permutation, else ``None``."""
    csc = mat.tocsc()
    csc.eliminate_zeros()
    counts = np.diff(csc.indptr)
    if counts.max(initial=0) > 1:
        return None
    if csc.dtype.kind != "i" and not np.all(np.isin(csc.data, (1, -1))):
        return None
    target = np.full(mat.shape[1], -1, dtype=np.int64)
    sign = np.zeros(mat.shape[1], dtype=np.int64)
    cols = np.repeat(np.arange(mat.shape[1]), counts)
    target[cols] = csc.indices
    sign[cols] = np.real(csc.data).astype(np.int64)
    return target, sign


def _product_words(rep: DenseRep):
    """For every subset ``S`` of modes, the operator word that creates it from the vacuum.

    Words are listed in application order: annihilation-type factors on the
    sea side first, each group taken from the largest mode down.
    """
    n = rep.n
    for mask in range(1 << n):
        chosen = [rep.modes[i] for i in range(n) if mask >> i & 1]
        holes = [j for j in chosen if j not in rep.vacuum_pattern]
        parts = [j for j in chosen if j in rep.vacuum_pattern]
        word = [(j, False) for j in reversed(holes)] + [(j, True) for j in reversed(parts)]
        yield word


def _exact_images(rep: DenseRep, start: int, relabel=None) -> list:
    """Signed basis images ``(index, sign)`` of all product words applied to basis vector ``start``."""
    actions = {}
    for j in rep.modes:
        actions[(j, False)] = _action(rep.ann[j])
        actions[(j, True)] = _action(rep.adjoint_matrix(j))
    out = []
    for word in _product_words(rep):
        idx, sgn = start, 1
        for j, dagger in word:
            jj = relabel[j] if relabel is not None else j
            target, sign = actions[(jj, dagger)]
            if target[idx] < 0:
                idx = -1
                break
            sgn *= int(sign[idx])
            idx = int(target[idx])
        out.append((idx, sgn))
    return out


def build_intertwiner(rep_fock: DenseRep, rep_sea: DenseRep) -> sp.csr_matrix:
    """Signed permutation ``W`` with ``W F_fock(j) = F_sea(j) W`` for every mode ``j``.

    Column ``b`` sends the Fock vector built by a product of fields on the
    Fock vacuum to the sea vector built by the same product on the reference
    diagram.
    """
    if rep_fock.domain != rep_sea.domain or rep_fock.modes != rep_sea.modes:
        raise DimensionMismatch("representations over different modes")
    if rep_fock.vacuum_pattern != rep_sea.vacuum_pattern:
        raise DimensionMismatch("representations use different reference sets")
    fock = _exact_images(rep_fock, int(np.argmax(rep_fock.vacuum)))
    sea = _exact_images(rep_sea, int(np.argmax(rep_sea.vacuum)))
    rows = [i for i, _ in sea]
    cols = [i for i, _ in fock]
    vals = [s * t for (_, s), (_, t) in zip(sea, fock)]
    if min(rows + cols) < 0:
        raise DimensionMismatch("a product of fields annihilated the vacuum")
    return _monomial(rows, cols, vals, rep_sea.dim)


def intertwining_residual(w, rep_src: DenseRep, rep_dst: DenseRep, relabel=None) -> float:
    """``max_j max|F_dst(relabel j) W - W F_src(j)|``; zero means exact equality."""
    worst = 0.0
    for j in rep_src.modes:
        jj = relabel[j] if relabel is not None else j
        for a, b in ((rep_dst.ann[jj], rep_src.ann[j]),
                     (rep_dst.adjoint_matrix(jj), rep_src.adjoint_matrix(j))):
            diff = a @ w - w @ b
            if sp.issparse(diff):
                diff = diff.toarray() if diff.nnz else np.zeros(1)
            worst = max(worst, float(np.max(np.abs(diff), initial=0.0)))
    return worst


def unitarity_residual(w) -> float:
    g = w.conj().T @ w
    eye = sp.identity(w.shape[0], dtype=g.dtype, format="csr") if sp.issparse(g) else np.eye(w.shape[0])
    diff = g - eye
    if sp.issparse(diff):
        diff = diff.toarray() if diff.nnz else np.zeros(1)
    return float(np.max(np.abs(diff), initial=0.0))


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    intertwiner: object = None
    max_residual: float = math.inf
    reason: str = ""

    def __bool__(self):
        return self.equivalent


def check_rep_equivalence(rep1: DenseRep, rep2: DenseRep,
                          relabel: Optional[Mapping[Position, Position]] = None) -> EquivalenceResult:
    """Look for a vacuum-preserving unitary ``W`` with ``W F1(j) = F2(relabel j) W``.

    ``W`` sends the cyclic vector of ``rep1`` to that of ``rep2`` and is
    extended along products of fields.  Integer representations are compared
    exactly; otherwise the residuals must stay below ``1e-10``.
    """
    if rep1.dim != rep2.dim:
        raise DimensionMismatch(f"dimensions {rep1.dim} and {rep2.dim} differ")
    if relabel is None:
        if rep1.modes != rep2.modes:
            raise DimensionMismatch("modes differ and no relabelling was given")
        relabel = {j: j for j in rep1.modes}
    if set(relabel) != set(rep1.modes) or set(relabel.values()) != set(rep2.modes):
        raise DimensionMismatch("relabelling must be a bijection between the mode sets")

    v1, v2 = rep1.vacuum_vector(), rep2.vacuum_vector()
    pattern = rep1.vacuum_pattern
    for j in rep1.modes:
        op = rep2.ann[relabel[j]] if j in pattern else rep2.adjoint_matrix(relabel[j])
        if np.max(np.abs(op @ v2), initial=0.0) > FLOAT_TOL:
            return EquivalenceResult(False, None, math.inf,
                                     f"target vacuum is not annihilated at {relabel[j]}")

    exact = rep1.exact and rep2.exact and rep1.vacuum is not None and rep2.vacuum is not None
    if exact:
        img1 = _exact_images(rep1, int(np.argmax(v1)))
        img2 = _exact_images(_relabelled(rep2, relabel, rep1), int(np.argmax(v2)))
        if min(i for i, _ in img1 + img2) < 0:
            return EquivalenceResult(False, None, math.inf, "a product of fields vanished on a vacuum")
        w = _monomial([i for i, _ in img2], [i for i, _ in img1],
                      [s * t for (_, s), (_, t) in zip(img2, img1)], rep1.dim)
    else:
        w = _float_intertwiner(rep1, rep2, relabel, v1, v2)
    res = max(intertwining_residual(w, rep1, rep2, relabel), unitarity_residual(w))
    tol = 0.0 if exact else FLOAT_TOL
    if res > tol:
        return EquivalenceResult(False, None, res, "intertwining or unitarity residual too large")
    return EquivalenceResult(True, w, res, "")


def _relabelled(rep2: DenseRep, relabel, rep1: DenseRep) -> DenseRep:
    # rep2's fields re-indexed by rep1's modes so that words line up
    ann = {j: rep2.ann[relabel[j]] for j in rep1.modes}
    return DenseRep(rep2.kind, rep1.domain, rep1.modes, ann, rep2.labels, rep1.vacuum_pattern,
                    rep2.vacuum)


def _float_intertwiner(rep1, rep2, relabel, v1, v2) -> np.ndarray:
    cols1, cols2 = [], []
    v1 = np.asarray(v1, dtype=complex)
    v2 = np.asarray(v2, dtype=complex)
    for word in _product_words(rep1):
        a, b = v1, v2
        for j, dagger in word:
            a = (rep1.adjoint_matrix(j) if dagger else rep1.ann[j]) @ a
            jj = relabel[j]
            b = (rep2.adjoint_matrix(jj) if dagger else rep2.ann[jj]) @ b
        cols1.append(a)
        cols2.append(b)
    return np.column_stack(cols2) @ np.column_stack(cols1).conj().T


# -- commutant -------------------------------------------------------------------

class _SignedUnionFind:
    """Variables related by ``x = s * y`` with ``s = ±1``; tracks forced zeros."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rel = [1] * size  # value(x) = rel[x] * value(parent[x])
        self.zero = [False] * size

    def find(self, x: int):
        sign = 1
        path = []
        while self.parent[x] != x:
            path.append(x)
            sign *= self.rel[x]
            x = self.parent[x]
        root = x
        # path compression
        acc = sign
        for y in path:
            s = self.rel[y]
            self.parent[y] = root
            self.rel[y] = acc
            acc *= s
        return root, sign

    def union(self, x: int, y: int, s: int):
        """Impose ``value(x) = s * value(y)``."""
        rx, sx = self.find(x)
        ry, sy = self.find(y)
        if rx == ry:
            if sx != s * sy:
                self.zero[rx] = True
            return
        self.parent[rx] = ry
        self.rel[rx] = sx * s * sy
        self.zero[ry] = self.zero[ry] or self.zero[rx]

    def force_zero(self, x: int):
        r, _ = self.find(x)
        self.zero[r] = True

    def free_count(self) -> int:
        return sum(1 for x in range(len(self.parent)) if self.parent[x] == x and not self.zero[x])


def _monomial_commutant(actions, dim: int) -> int:
    uf = _SignedUnionFind(dim * dim)
    var = lambda r, c: r * dim + c
    for target, sign in actions:
        # row view: G[r, k1(r)] = t(r)
        k1 = np.full(dim, -1, dtype=np.int64)
        t = np.zeros(dim, dtype=np.int64)
        ok = target >= 0
        k1[target[ok]] = np.nonzero(ok)[0]
        t[target[ok]] = sign[ok]
        for r in range(dim):
            for c in range(dim):
                # (MG)[r,c] = s(c) M[r, target(c)]... written with G[k0,c]: MG[r,c] = M[r,k0(c)] g(c)
                k0 = target[c]
                lhs = (var(r, int(k0)), int(sign[c])) if k0 >= 0 else None
                rhs = (var(int(k1[r]), c), int(t[r])) if k1[r] >= 0 else None
                if lhs and rhs:
                    uf.union(lhs[0], rhs[0], lhs[1] * rhs[1])
                elif lhs:
                    uf.force_zero(lhs[0])
                elif rhs:
                    uf.force_zero(rhs[0])
    return uf.free_count()


def _exact_entries(mat) -> dict:
    coo = mat.tocoo()
    return {(int(r), int(c)): Fraction(int(v)) for r, c, v in zip(coo.row, coo.col, coo.data) if v}


def commutant_dimension_by_elimination(rep: DenseRep, cap: int = 4) -> int:
    """Nullity of the commutation system by exact sparse row reduction (integer reps)."""
    if rep.n > cap:
        raise CapExceeded(f"elimination is limited to {cap} modes")
    if not rep.exact:
        raise DimensionMismatch("exact elimination needs integer matrices")
    dim = rep.dim
    pivots: dict = {}
    rank = 0
    for g in rep.generators():
        entries = _exact_entries(g)
        by_col, by_row = {}, {}
        for (r, c), v in entries.items():
            by_col.setdefault(c, []).append((r, v))
            by_row.setdefault(r, []).append((c, v))
        for r in range(dim):
            for c in range(dim):
                row = {}
                for k, v in by_col.get(c, ()):      # (M G)[r, c]
                    key = r * dim + k
                    row[key] = row.get(key, 0) + v
                for k, v in by_row.get(r, ()):      # (G M)[r, c]
                    key = k * dim + c
                    row[key] = row.get(key, 0) - v
                row = {k: v for k, v in row.items() if v}
                while row:
                    p = min(row)
                    if p not in pivots:
                        lead = row[p]
                        pivots[p] = {k: v / lead for k, v in row.items()}
                        rank += 1
                        break
                    f = row[p]
                    for k, v in pivots[p].items():
                        nv = row.get(k, 0) - f * v
                        if nv:
                            row[k] = nv
                        else:
                            row.pop(k, None)
    return dim * dim - rank


def commutant_dimension(rep: DenseRep, cap: int = COMMUTANT_CAP) -> int:
    """Dimension of ``{M : [M, F_j] = [M, F_j*] = 0 for all modes}``."""
    if rep.n > cap:
        raise CapExceeded(f"commutant computation is limited to {cap} modes")
    actions = [_action(g) for g in rep.generators()]
    if all(a is not None for a in actions):
        return _monomial_commutant(actions, rep.dim)
    dim = rep.dim
    eye = sp.identity(dim, dtype=complex, format="csr")
    blocks = []
    for g in rep.generators():
        g = sp.csr_matrix(g, dtype=complex)
        # vec(M G - G M) with row-major vec: (I ⊗ G^T - G ⊗ I) vec(M)
        blocks.append(sp.kron(eye, g.T) - sp.kron(g, eye))
    system = sp.vstack(blocks).toarray()
    s = np.linalg.svd(system, compute_uv=False)
    return int(dim * dim - np.sum(s > FLOAT_TOL * max(1.0, s[0] if s.size else 1.0)))


# -- exact field matrices ----------------------------------------------------------

@dataclass(frozen=True)
class GaussianIntegerMatrix:
    """``(re + i im) / denom`` with integer sparse parts."""

    re: sp.csr_matrix
    im: sp.csr_matrix
    denom: int

    def gram(self) -> GaussianIntegerMatrix:
        """``M* M`` (denominator squared)."""
        re = (self.re.T @ self.re + self.im.T @ self.im).tocsr()
        im = (self.re.T @ self.im - self.im.T @ self.re).tocsr()
        return GaussianIntegerMatrix(re, im, self.denom * self.denom)

    def matmul(self, other: GaussianIntegerMatrix) -> GaussianIntegerMatrix:
        re = (self.re @ other.re - self.im @ other.im).tocsr()
        im = (self.re @ other.im + self.im @ other.re).tocsr()
        return GaussianIntegerMatrix(re, im, self.denom * other.denom)

    def is_zero(self) -> bool:
        return self.re.count_nonzero() == 0 and self.im.count_nonzero() == 0

    def scaled_equal(self, other: GaussianIntegerMatrix, factor: Fraction) -> bool:
        """``self == factor * other`` as exact rational matrices."""
        # self.num/self.den == f.num/f.den * other.num/other.den
        lhs_k = factor.denominator * other.denom
        rhs_k = factor.numerator * self.denom
        return ((self.re * lhs_k - other.re * rhs_k).count_nonzero() == 0
                and (self.im * lhs_k - other.im * rhs_k).count_nonzero() == 0)

    def to_complex(self) -> sp.csr_matrix:
        return ((self.re.astype(complex) + 1j * self.im.astype(complex)) / self.denom).tocsr()


def exact_field_matrix(rep: DenseRep, u: OneParticleVector) -> GaussianIntegerMatrix:
    """Matrix of the field at an exact ``u`` over a common denominator."""
    if not u.exact:
        raise DomainMismatch("exact field matrices need an exact vector")
    if not rep.exact:
        raise DimensionMismatch("exact field matrices need an integer representation")
    denom = 1
    parts = []
    for x, c in u.coeffs.items():
        if x not in rep.ann:
            raise DomainMismatch(f"{x} is not one of the represented modes")
        re = Fraction(int(c.x.numerator), int(c.x.denominator))
        im = -Fraction(int(c.y.numerator), int(c.y.denominator))  # antilinear: conj(c)
        parts.append((x, re, im))
        denom = math.lcm(denom, re.denominator, im.denominator)
    zero = sp.csr_matrix((rep.dim, rep.dim), dtype=np.int64)
    re_acc, im_acc = zero, zero
    for x, re, im in parts:
        m = rep.ann[x].astype(np.int64)
        re_acc = re_acc + int(re * denom) * m
        im_acc = im_acc + int(im * denom) * m
    return GaussianIntegerMatrix(re_acc.tocsr(), im_acc.tocsr(), denom)


def field_operator_norm(rep: DenseRep, u: OneParticleVector) -> float:
    """Spectral norm of the field matrix (float)."""
    m = rep.basis_field_matrix(u).toarray()
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


def field_norm_identity_exact(rep: DenseRep, u: OneParticleVector) -> bool:
    """Exact check that the field at ``u`` has operator norm ``|u|``.

    With ``G = F* F`` positive, ``G^2 = |u|^2 G`` and ``G != 0`` force the
    spectrum of ``G`` into ``{0, |u|^2}`` with ``|u|^2`` attained.
    """
    f = exact_field_matrix(rep, u)
    g = f.gram()
    n2 = u.norm2()
    if not n2:
        return f.is_zero()
    return (not g.is_zero()) and g.matmul(g).scaled_equal(g, Fraction(n2))
