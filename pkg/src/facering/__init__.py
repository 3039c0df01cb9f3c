"""Face rings of geometric simplicial complexes over exact scalars:
Artinian reductions, Poincaré-type pairings, Lefschetz property checks and
reproducible certificates."""

from .scalars import (DEFAULT_PRIME, DimensionMismatchError, Matrix,
                      PrimeField, RationalField, Subspace, derive_rng,
                      derive_seed, sample_generic, subspace_intersect)
from .simplicial import (Complex, EdgeContractionError, FaceNotFoundError,
                         NotPureError, RelativePair, SimplicialError,
                         SimplicialityError, TopologyError,
                         boundary_complex, classify_sphere_or_ball, cone,
                         contract_edge, dehn_sommerville_check, deletion,
                         double, edge_link_condition, euler_characteristic,
                         f_vector, g_vector, h_vector, h_vector_of,
                         is_homology_ball, is_homology_manifold,
                         is_homology_sphere, is_m_sequence, is_subcomplex,
                         link, reduced_homology, skeleton, star, star_pair,
                         stellar_subdivision, suspension)
from .artinian import (ArtinianError, BOUNDARY, DegreeMismatchError,
                       GradedPiece, ImproperCoordinatesError,
                       IncompatiblePairError, Reduction, artinian_dims,
                       check_proper, coordinates_from_complex, generic_form,
                       project_coordinates, projection_killing,
                       restriction_matrix, sample_coordinates,
                       sample_proper_coordinates, vertex_form)
from .lefschetz import (Certificate, Verdict, certify_g,
                        check_biased_pairing, check_biased_poincare,
                        check_hard_lefschetz, check_transversal_prime,
                        check_weak_lefschetz, cone_lemma_check,
                        generic_combine, middle_reduction_check,
                        stellar_invariance_check)
from .decompose import (CVerdict, DecompositionTrace, contractible_edges,
                        find_A_decomposition, find_B_decomposition,
                        verify_C_order, verify_D_contractions)
from .io import (ParseError, complex_from_dict, complex_to_dict,
                 dumps_complex, input_sha, parse_complex, write_complex)

__version__ = "0.1.0"
