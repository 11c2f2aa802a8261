"""Decorated graph complexes of knot spaces with exact rational arithmetic."""

__version__ = "0.1.0"

from .algebra import (
    TensorChain,
    antipode,
    coproduct,
    counit,
    shuffle_product,
)
from .cocycles import build_gamma_l, build_psi, coefficient_of, prop4_report, psi_power
from .cohomology import (
    GradedBasis,
    basis,
    cocycle_representatives,
    cohomology_dim,
    cohomology_table,
    delta_matrix,
    enumerate_basis,
)
from .complex import Chain, contract_arc, contract_edge, delta
from .errors import (
    BasisIncompleteError,
    GradingError,
    GraphSyntaxError,
    GraphValidationError,
    NontrivialityError,
    NotContractibleError,
    ResourceGuardError,
    UnsupportedBackboneError,
)
from .graph import (
    CanonicalGraph,
    RawGraph,
    SignedGraph,
    canonicalize,
    grading,
    primitive_factors,
    unit,
)
from .io import parse_chain, parse_graph, serialize, serialize_chain, to_dot
from .linalg import SparseExactMatrix, rank, rank_kernel
