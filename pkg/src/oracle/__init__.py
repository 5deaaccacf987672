from src.oracle.brute_force import (
    ORACLE_MAX_PROFILES,
    ORACLE_MAX_PURE_PROFILES,
    OracleVerdict,
    oracle_freq_dist,
    oracle_is_robust,
    oracle_pure_nash,
    oracle_defection_index,
)

__all__ = [
    "ORACLE_MAX_PROFILES",
    "ORACLE_MAX_PURE_PROFILES",
    "OracleVerdict",
    "oracle_freq_dist",
    "oracle_is_robust",
    "oracle_pure_nash",
    "oracle_defection_index",
]
