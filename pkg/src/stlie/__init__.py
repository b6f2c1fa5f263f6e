"""Certified computation of H2 for Steinberg and special linear Lie algebras.

The package works over prime fields GF(p) and over the rationals, with
every linear algebra step carried out exactly.  Rings are finite
dimensional unital associative algebras given by structure constants;
Lie algebras are given the same way.  The headline entry points are
build_sl / build_st / uce / h2_dim and the end-to-end
verify_main_theorem.
"""
from .fields import Field
from .linalg import (Quotient, RrefResult, SolvedBasis, Subspace, nullspace,
                     rank, rref)
from .rings import (AlgebraSpec, IdealData, QuotientAlgebra, Violation,
                    commutator_subspace, cyclic_group_table, ideal_Im,
                    ideal_span_closure, multiply, permute_basis, preset_dual_numbers,
                    preset_gf, preset_group_algebra, preset_matrix,
                    preset_poly_quotient, quotient_Rm, radical,
                    symmetric_group_table, validate_algebra)
from .ringfile import (RingFormatError, load_ring, load_ring_text,
                       ring_from_preset_string)
from .cyclic import hc1_dim, hochschild_b, kahler_hc1_char0, total_d1, total_d2
from .lie import (GlAlgebra, LieAlgebraData, SlAlgebra, bracket_rows,
                  bracket_vec, build_gl, build_sl, center, derived_subalgebra,
                  is_perfect, validate_lie)
from .homology import (UceData, d2_matrix, d3_rows, h2_dim,
                       is_centrally_closed, uce, wedge_pairs)
from .steinberg import (CheckResult, CocycleData, GuardExceeded, HatData,
                        LiftFamily, OffendingData, SteinbergModel,
                        SuiteReport, T_elem, Verdict, build_hat, build_psi,
                        build_st, compute_h2, coset_index, formula_suite,
                        klein_partition, lift_generators, nu_suite,
                        offending_span, pair_sign, recenter, t_elem,
                        verify_cocycle, verify_main_theorem)

__version__ = "0.1.0"
