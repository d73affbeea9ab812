"""Classification of cyclic constant-dimension (Grassmannian) subspace codes.

Pipeline: build F_{q^n} from a primitive polynomial, enumerate the
cyclic-shift orbits of the k-subspaces, link orbits whose union keeps a
target minimum subspace distance, and solve the resulting maximum-weight
clique problem exactly; cliques are cyclic codes and the optimum weight
is C_q(n,d,k).  Every reported code ships as a certificate that an
independent brute-force checker re-verifies.
"""

from ._kernels import BACKEND_NAME
from .classify import (
    Certificate,
    ClassificationReport,
    VerifyOutcome,
    alpha_bound,
    conditional_bound,
    run_algorithm1,
    table,
    verify_certificate,
)
from .clique import (
    CliqueResult,
    enumerate_maximal_cliques,
    max_clique,
    max_clique_with_fixed,
    max_weight_clique,
)
from .compat_graph import (
    CompatGraph,
    build_graph,
    common_neighborhood_subgraph,
    size_class_subgraph,
)
from .field import (
    FieldCtx,
    FieldParams,
    build_field,
    default_primitive_poly,
    field_for,
    parse_poly,
)
from .orbits import (
    Orbit,
    OrbitSet,
    enumerate_orbits,
    gaussian_binomial,
    inter_orbit_distance,
    load_or_enumerate,
    orbit_min_distance,
    orbit_of,
)
from .subspace import (
    Subspace,
    cyclic_shift,
    intersection_dim,
    span,
    subspace_distance,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "Certificate",
    "ClassificationReport",
    "CliqueResult",
    "CompatGraph",
    "FieldCtx",
    "FieldParams",
    "Orbit",
    "OrbitSet",
    "Subspace",
    "VerifyOutcome",
    "alpha_bound",
    "build_field",
    "build_graph",
    "common_neighborhood_subgraph",
    "conditional_bound",
    "cyclic_shift",
    "default_primitive_poly",
    "enumerate_maximal_cliques",
    "enumerate_orbits",
    "field_for",
    "gaussian_binomial",
    "inter_orbit_distance",
    "intersection_dim",
    "load_or_enumerate",
    "max_clique",
    "max_clique_with_fixed",
    "max_weight_clique",
    "orbit_min_distance",
    "orbit_of",
    "parse_poly",
    "run_algorithm1",
    "size_class_subgraph",
    "span",
    "subspace_distance",
    "table",
    "verify_certificate",
]
