"""Exact linear realizations of 2-complexes in R^4 from group presentations,
with an exact embedding verifier and integral homology via Smith normal form."""

from .complex import (SimplicialComplex2, boundary_matrices, contract_tree, euler_characteristic,
                      pi1_presentation, spanning_tree, validate)
from .embed import RealizedComplex, realize, realize_homotopy_type
from .homology import (AbelianDecomposition, SNFResult, decomposition_from_relations,
                       homology_groups, matrix_to_embedded_complex, smith_normal_form)
from .model import build_model_complex
from .presentation import (Presentation, Word, abelianized_matrix, binary_compress, binary_size,
                           free_reduce, matrix_to_presentation, pad_relations, parse, stabilize,
                           unary_size)
from .verify import check_embedding, check_sigma_condition, lemma2_oracle, simplex_pair_intersection

__version__ = "0.1.0"

__all__ = [
    "AbelianDecomposition", "Presentation", "RealizedComplex", "SNFResult", "SimplicialComplex2",
    "Word", "abelianized_matrix", "binary_compress", "binary_size", "boundary_matrices",
    "build_model_complex", "check_embedding", "check_sigma_condition", "contract_tree",
    "decomposition_from_relations", "euler_characteristic", "free_reduce", "homology_groups",
    "lemma2_oracle", "matrix_to_embedded_complex", "matrix_to_presentation", "pad_relations",
    "parse", "pi1_presentation", "realize", "realize_homotopy_type", "simplex_pair_intersection",
    "smith_normal_form", "spanning_tree", "stabilize", "unary_size", "validate",
]
