from .expectation import (
    CrowdSpec,
    FrequencyDistribution,
    expected_utility,
    expected_utility_mixed,
    freq_distribution,
    mix_payoffs,
    normal_distribution,
    payoff_vector,
)

__all__ = [
    "CrowdSpec",
    "FrequencyDistribution",
    "expected_utility",
    "expected_utility_mixed",
    "freq_distribution",
    "mix_payoffs",
    "normal_distribution",
    "payoff_vector",
]
