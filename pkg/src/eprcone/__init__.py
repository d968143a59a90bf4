"""EPR-pair graph model of multipartite entanglement entropy.

Graphs of shared EPR pairs induce exact subset entropies; linear entropy
inequalities are certified on the cone those entropies generate, arbitrary
vectors are tested for membership, and a state-vector oracle supplies
ground truth for explicit quantum states.
"""

from .cone import MembershipResult, decide, decide_approx
from .epr_model import (
    EntropyVector,
    EprGraph,
    entropy_vector,
    generator_graphs,
    mutual_information,
    subset_entropy,
)
from .errors import (
    DomainError,
    FormatError,
    NumericIntegrityError,
    ResourceError,
    UnresolvableError,
)
from .inequality import Certificate, Inequality, builtin_family, certify, evaluate, span_constraints
from .oracle import (
    ProtocolSpec,
    StateVector,
    make_state,
    oracle_entropy_vector,
    reduced_density,
    run_protocol,
    von_neumann_entropy,
)

__all__ = [
    "Certificate",
    "DomainError",
    "EntropyVector",
    "EprGraph",
    "FormatError",
    "Inequality",
    "MembershipResult",
    "NumericIntegrityError",
    "ProtocolSpec",
    "ResourceError",
    "StateVector",
    "UnresolvableError",
    "builtin_family",
    "certify",
    "decide",
    "decide_approx",
    "entropy_vector",
    "evaluate",
    "generator_graphs",
    "make_state",
    "mutual_information",
    "oracle_entropy_vector",
    "reduced_density",
    "run_protocol",
    "span_constraints",
    "subset_entropy",
    "von_neumann_entropy",
]
