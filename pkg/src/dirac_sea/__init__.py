"""Second quantization over ordered Hilbert bases with a computable parity."""

__version__ = "0.1.0"

from .errors import (CapExceeded, DimensionMismatch, DiracSeaError, DomainMismatch, NotMember,
                     NotRepresentable, NotWellOrdered, NumericModeMismatch, UndecidableRule)
from .ordinals import Ordinal
from .ordered_index import (NEG_INF, POS_INF, FiniteExplicit, IndexDomain, Label, Order, OrdinalPoint,
                            OrdinalSum, ReversedIntegers, Side, SignedInteger, Stratum)
from .parity import Interval, ParityConfig, RepresentableSet, parity, sym_diff
from .sector import SeaDiagram, Sector, SectorState, charge, inner_product
from .epsilon import SignContext, epsilon, naive_ordinal_sign
from .fields import Kind, OneParticleVector, annihilate, anticommutator, create, field, field_adjoint
from .fock import (DenseRep, EquivalenceResult, build_fock_rep, build_intertwiner, build_sea_rep,
                   check_rep_equivalence, commutant_dimension)
from .implementability import (Block, HSNorm, OneParticleUnitary, is_implementable,
                               offdiag_hs_norm)
from .dynamics import (DiagonalHamiltonian, derivative_residual, evolve_field, evolve_state,
                       sector_energy)

__all__ = [
    "CapExceeded", "DimensionMismatch", "DiracSeaError", "DomainMismatch", "NotMember",
    "NotRepresentable", "NotWellOrdered", "NumericModeMismatch", "UndecidableRule",
    "Ordinal", "NEG_INF", "POS_INF", "FiniteExplicit", "IndexDomain", "Label", "Order",
    "OrdinalPoint", "OrdinalSum", "ReversedIntegers", "Side", "SignedInteger", "Stratum",
    "Interval", "ParityConfig", "RepresentableSet", "parity", "sym_diff",
    "SeaDiagram", "Sector", "SectorState", "charge", "inner_product",
    "SignContext", "epsilon", "naive_ordinal_sign",
    "Kind", "OneParticleVector", "annihilate", "anticommutator", "create", "field", "field_adjoint",
    "DenseRep", "EquivalenceResult", "build_fock_rep", "build_intertwiner", "build_sea_rep",
    "check_rep_equivalence", "commutant_dimension",
    "Block", "HSNorm", "OneParticleUnitary", "is_implementable", "offdiag_hs_norm",
    "DiagonalHamiltonian", "derivative_residual", "evolve_field", "evolve_state", "sector_energy",
]
