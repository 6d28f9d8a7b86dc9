"""
blockreg - Exact cohomology and regularity of split sheaves on products of projective spaces.

This package computes sheaf cohomology by the Bott and Kunneth formulas, builds
block collections of line bundles with their duals, and compares
Castelnuovo-Mumford, block and multigraded regularity.
"""

__version__ = "0.1.0"

from blockreg.block_machinery import (
    Block,
    BlockCollection,
    K0Class,
    aligned_window_dual,
    fundamental_collection,
    gram_matrix,
    helix_block,
    k0_class,
    left_dual_classes_k0,
    verify_exceptional_structure,
    window,
)
from blockreg.errors import (
    BlockregError,
    ComputationError,
    ExpressionParseError,
    FileOperationError,
    SearchCapExceeded,
    SheafError,
    ValidationError,
)
from blockreg.expressions import format_sheaf, parse_sheaf, parse_space
from blockreg.factor_cohomology import FactorSheaf, bott_cohomology
from blockreg.product_sheaves import (
    BoxProduct,
    CohomologyTable,
    SplitSheaf,
    Space,
    cohomology,
    euler_pairing,
    ext_table,
)
from blockreg.regularity import (
    RegularityVerdict,
    Witness,
    beilinson_terms,
    block_regular,
    block_verdict,
    cm_regularity,
    hw_regular,
    hw_verdict,
    st_set,
)

__all__ = [
    "Block",
    "BlockCollection",
    "BoxProduct",
    "CohomologyTable",
    "FactorSheaf",
    "K0Class",
    "RegularityVerdict",
    "Space",
    "SplitSheaf",
    "Witness",
    "aligned_window_dual",
    "beilinson_terms",
    "block_regular",
    "block_verdict",
    "bott_cohomology",
    "cm_regularity",
    "cohomology",
    "euler_pairing",
    "ext_table",
    "format_sheaf",
    "fundamental_collection",
    "gram_matrix",
    "helix_block",
    "hw_regular",
    "hw_verdict",
    "k0_class",
    "left_dual_classes_k0",
    "parse_sheaf",
    "parse_space",
    "st_set",
    "verify_exceptional_structure",
    "window",
    "BlockregError",
    "ComputationError",
    "ExpressionParseError",
    "FileOperationError",
    "SearchCapExceeded",
    "SheafError",
    "ValidationError",
    "__version__",
]
