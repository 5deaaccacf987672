from .sufficiency import (
    LEMMA2_CONVENTION,
    DirectionReport,
    SensitivityReport,
    config_payoffs,
    direction_invariance_check,
    lemma2_check,
)

__all__ = [
    "LEMMA2_CONVENTION",
    "DirectionReport",
    "SensitivityReport",
    "config_payoffs",
    "direction_invariance_check",
    "lemma2_check",
]
