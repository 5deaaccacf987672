from .robustness import (
    BestResponseSet,
    DefectionWitness,
    RobustActionSet,
    RobustnessCertificate,
    best_response_of,
    best_response_set,
    check_alpha,
    defection_index,
    defection_index_chain,
    first_violation,
    is_alpha_robust,
    robust_action_set,
)

__all__ = [
    "BestResponseSet",
    "DefectionWitness",
    "RobustActionSet",
    "RobustnessCertificate",
    "best_response_of",
    "best_response_set",
    "check_alpha",
    "defection_index",
    "defection_index_chain",
    "first_violation",
    "is_alpha_robust",
    "robust_action_set",
]
