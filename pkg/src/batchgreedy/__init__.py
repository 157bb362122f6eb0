"""k-batch greedy maximization of polymatroid set functions under matroid
constraints, with total batched curvature, harmonic/exponential performance
bounds, and brute-force certification on desk-scale instances."""

from ._backend import BACKEND_NAME, available_backends
from .bounds import (
    BoundValues,
    bound_values,
    continuous_limit,
    exponential_bound,
    harmonic_bound,
    unit_batch_bound,
)
from .curvature import (
    CurvatureReport,
    k_batch_curvature,
    scheduling_curvature_closed_form,
    sensing_curvature_closed_form,
)
from .errors import (
    BatchGreedyError,
    CandidateCapExceeded,
    ExhaustiveLimitExceeded,
    GroundSetMismatch,
    InstanceFormatError,
    NoFeasibleBatch,
    RankUndefined,
)
from .greedy import (
    BatchDecomposition,
    GreedyTrace,
    TraceValidation,
    decompose,
    k_batch_greedy,
    make_trace,
    max_batch_gain,
    validate_trace,
)
from .instances import (
    instance_from_dict,
    instance_to_dict,
    load_bundled,
    load_instance,
    random_coverage_instance,
    random_scheduling_instance,
    random_sensing_instance,
    save_instance,
)
from .matroids import (
    AxiomReport,
    LiftedAxiomReport,
    MatroidSpec,
    check_matroid_axioms,
    is_independent,
    lifted_pair_augmentation_check,
    matroid_rank,
    verify_lifted_witness,
)
from .objectives import (
    ObjectiveInstance,
    PolymatroidReport,
    PropertyWitness,
    check_polymatroid,
    evaluate,
    evaluate_mask,
    marginal_gain,
)
from .oracle import BoundCertificate, OptimumCertificate, brute_force_optimum, certify
from .subsets import ElementSubset

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "available_backends",
    "AxiomReport",
    "BatchDecomposition",
    "BatchGreedyError",
    "BoundCertificate",
    "BoundValues",
    "CandidateCapExceeded",
    "CurvatureReport",
    "ElementSubset",
    "ExhaustiveLimitExceeded",
    "GreedyTrace",
    "GroundSetMismatch",
    "InstanceFormatError",
    "LiftedAxiomReport",
    "MatroidSpec",
    "NoFeasibleBatch",
    "ObjectiveInstance",
    "OptimumCertificate",
    "PolymatroidReport",
    "PropertyWitness",
    "RankUndefined",
    "TraceValidation",
    "bound_values",
    "brute_force_optimum",
    "certify",
    "check_matroid_axioms",
    "check_polymatroid",
    "continuous_limit",
    "decompose",
    "evaluate",
    "evaluate_mask",
    "exponential_bound",
    "harmonic_bound",
    "instance_from_dict",
    "instance_to_dict",
    "is_independent",
    "k_batch_curvature",
    "k_batch_greedy",
    "lifted_pair_augmentation_check",
    "load_bundled",
    "load_instance",
    "make_trace",
    "marginal_gain",
    "matroid_rank",
    "max_batch_gain",
    "random_coverage_instance",
    "random_scheduling_instance",
    "random_sensing_instance",
    "save_instance",
    "scheduling_curvature_closed_form",
    "sensing_curvature_closed_form",
    "unit_batch_bound",
    "validate_trace",
    "verify_lifted_witness",
]
