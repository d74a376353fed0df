"""surfpoly: exact polynomial invariants of graphs and links on surfaces."""

from .errors import SurfPolyError
from .homology import (
    Subspace,
    SurfaceHomology,
    SymplecticSpace,
    h1,
    image_subspace,
    intersection_form,
    orthogonal_complement,
    radial_map,
    tilde_p,
    verify_subgroup_duality,
)
from .invariants import SubgraphInvariants, dual_subgraph, invariants
from .laurent import LaurentPolynomial
from .links import (
    LinkDiagram,
    ResolutionState,
    jones,
    kauffman,
    medial_diagram,
    parse_diagram,
    serialize_diagram,
    states,
    tait_graph,
    tilde_kauffman,
    verify_thistlethwaite,
)
from .maps import (
    CombinatorialMap,
    EmbeddedSubgraph,
    canonical_code,
    parse_map,
    parse_map_file,
    random_map,
    serialize_map,
)
from .multivariate import EdgeWeighting, multivariate_tutte, p_bar, verify_multivariate_duality
from .polynomials import (
    abstract_graph,
    bollobas_riordan,
    p_bruteforce,
    p_prime,
    p_recursive,
    tutte,
    verify_duality,
    verify_specializations,
)

__version__ = "0.1.0"

__all__ = [
    "CombinatorialMap",
    "EdgeWeighting",
    "EmbeddedSubgraph",
    "LaurentPolynomial",
    "LinkDiagram",
    "ResolutionState",
    "SubgraphInvariants",
    "Subspace",
    "SurfPolyError",
    "SurfaceHomology",
    "SymplecticSpace",
    "abstract_graph",
    "bollobas_riordan",
    "canonical_code",
    "dual_subgraph",
    "h1",
    "image_subspace",
    "intersection_form",
    "invariants",
    "jones",
    "kauffman",
    "medial_diagram",
    "multivariate_tutte",
    "orthogonal_complement",
    "p_bar",
    "p_bruteforce",
    "p_prime",
    "p_recursive",
    "parse_diagram",
    "parse_map",
    "parse_map_file",
    "radial_map",
    "random_map",
    "serialize_diagram",
    "serialize_map",
    "states",
    "tait_graph",
    "tilde_kauffman",
    "tilde_p",
    "tutte",
    "verify_duality",
    "verify_multivariate_duality",
    "verify_specializations",
    "verify_subgroup_duality",
    "verify_thistlethwaite",
]
