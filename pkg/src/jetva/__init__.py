"""
jetva: exact-arithmetic verification of jet Lie algebra invariants and
the free-field beta-gamma-bc vertex superalgebra.

The package is organized as one module per subsystem:

  ring        graded super-commutative differential polynomial rings
  lie         sl/sp matrix algebras, jet truncations, derivation actions
  invariants  joint-kernel invariant bases, generation windows
  vertex      exact n-th products, the eight sections, closure checks
  fock        mode realization and the positive-definite Hermitian form
  linalg      exact rational elimination
  presets     named alphabets and the declarative config grammar
  properties  seeded random identity samples
  cli         batch front-end (also installed as the `jetva` script)
"""

from .errors import (AlphabetMismatch, ConfigError, InfinitePiece,
                     InvalidRank, JetvaError, MissingRepLabel,
                     NotActionClosed, OutsideBarSubalgebra,
                     TruncationExceeded)
from .ring import (Alphabet, DerivationSpec, FamilySpec, Grade, Poly,
                   graded_basis, parse_poly, tilde_d)
from .lie import (JetGen, LieAlgebra, MixedJetDerivation, commutant_dim,
                  jet_act, jet_generators, lie_basis, sl, sp,
                  sym2_intersection)
from .invariants import (GenerationGapReport, InvariantReport,
                         check_invariant, generation_gap, invariant_basis,
                         invariant_dim_table, lemma_cri_check,
                         lemma_operators)
from .vertex import (SectionSet, State, lambda_bracket, nth_product,
                     normal_product, standard_sections, strong_span_membership,
                     symbol_map, virasoro_central_charge, weight_of,
                     zero_mode_lie_action)
from .fock import (FockState, GramReport, adjoint_check,
                   default_adjoint_rules, gram_matrix, herm_form, to_modes)
from .presets import cdr_fibre, eight_invariants, parse_config, tj_bundle

__version__ = "0.1.0"
