"""Certified upper bounds on simplicial complexity and the motion planners they yield."""

from .complex import (
    Complex,
    ComplexError,
    Subcomplex,
    build_complex,
    euler_characteristic,
    f_vector,
    has_simplex,
    is_cover,
    relabel,
    skeleton,
)
from .constructions import (
    ApproxPolicy,
    SizeBudgetExceeded,
    approx_identity,
    barycentric_subdivision,
    build_tower,
    iterated_subdivision,
    ordered_product,
    projection_composite,
)
from .contiguity import (
    ContiguityChain,
    SimplicialMap,
    compose,
    contiguous_pair,
    find_chain,
    is_simplicial,
    pad_chain,
    refine_chain,
    restrict,
    transport_chain,
    verify_chain,
)
from .cover import (
    BoundReport,
    CoverCertificate,
    pad_certificate,
    refine_certificate,
    sc_upper_bound,
    seed_pieces,
    transport_certificate,
    verify_certificate,
)

__version__ = "0.1.0"
