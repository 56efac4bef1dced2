"""hyperclean: degree-cleaning reductions and independence bounds for
uniform hypergraphs.

The package converts any black-box maximum-degree independent-set solver
into an average-degree one by iteratively deleting vertices whose degree
exceeds a fixed multiple of the current average degree, and ships the
exact desk-scale oracles (branch-and-bound alpha, Hall ratio, randomized
deletion) needed to certify every step.
"""

from ._backend import backend_name
from .core import (
    DegreeProfile,
    UniformHypergraph,
    degree_profile,
    delete_vertex,
    format_uhg,
    induce,
    load_uhg,
    parse_uhg,
    save_uhg,
    validate,
)
from .cleaning import (
    CleaningParameters,
    CleaningTranscript,
    derive_parameters,
    run_cleaning,
    stop_case_analysis,
    verify_potential_growth,
)
from .indset import (
    IndependentSetCertificate,
    MaxDegDelegate,
    exact_alpha,
    exact_alpha_enum,
    exact_alpha_weighted,
    greedy_delegate,
    greedy_independent_set,
    hall_ratio_exact,
    random_deletion,
    transfer_alpha,
)
from .nearlylog import (
    CandidateFunction,
    NearlyLogReport,
    ProbeConfig,
    classify,
    growth_index,
    parse_fn_spec,
    window_infimum,
)
from .weighted import (
    VertexWeights,
    WeightedProfile,
    make_weights,
    unit_weights,
    weighted_alpha_star,
    weighted_profile,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateFunction",
    "CleaningParameters",
    "CleaningTranscript",
    "DegreeProfile",
    "IndependentSetCertificate",
    "MaxDegDelegate",
    "NearlyLogReport",
    "ProbeConfig",
    "UniformHypergraph",
    "VertexWeights",
    "WeightedProfile",
    "backend_name",
    "classify",
    "degree_profile",
    "delete_vertex",
    "derive_parameters",
    "exact_alpha",
    "exact_alpha_enum",
    "exact_alpha_weighted",
    "format_uhg",
    "greedy_delegate",
    "greedy_independent_set",
    "growth_index",
    "hall_ratio_exact",
    "induce",
    "load_uhg",
    "make_weights",
    "parse_fn_spec",
    "parse_uhg",
    "random_deletion",
    "run_cleaning",
    "save_uhg",
    "stop_case_analysis",
    "transfer_alpha",
    "unit_weights",
    "validate",
    "verify_potential_growth",
    "weighted_alpha_star",
    "weighted_profile",
    "window_infimum",
]
