from .equilibria import (
    SELECTION_RULES,
    PureProfileCandidate,
    ScanPoint,
    ScanReport,
    SearchReport,
    br_dynamics,
    find_pure_robust,
    t_nonempty_scan,
    verify_pure_candidate,
)

__all__ = [
    "SELECTION_RULES",
    "PureProfileCandidate",
    "ScanPoint",
    "ScanReport",
    "SearchReport",
    "br_dynamics",
    "find_pure_robust",
    "t_nonempty_scan",
    "verify_pure_candidate",
]
