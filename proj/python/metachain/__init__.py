"""Hierarchy of reduced Markov chains and metastable distributions.

Transition rates have the closed form alpha * eps**beta * exp(-gamma/eps);
the library builds the rank hierarchy symbolically and checks its
predictions against matrix-exponential or Monte Carlo solves at finite eps.
"""

import os

from ._core import (
    ChainSpec,
    ComparisonReport,
    CriticalTimeScaleError,
    Hierarchy,
    MetachainError,
    MetastableDistribution,
    Order,
    TimeScale,
    build_hierarchy,
    exact_stationary,
    make_chain,
    metastable_all,
    metastable_distribution,
    metastable_report_json,
    parse_chain_file,
    parse_chain_json,
    repair_zero_rates,
    serialize_chain,
    transient_distribution,
    validate,
    verify,
)

__all__ = [
    "ChainSpec",
    "ComparisonReport",
    "CriticalTimeScaleError",
    "Hierarchy",
    "MetachainError",
    "MetastableDistribution",
    "Order",
    "TimeScale",
    "build_hierarchy",
    "exact_stationary",
    "make_chain",
    "metastable_all",
    "metastable_distribution",
    "metastable_report_json",
    "parse_chain_file",
    "parse_chain_json",
    "repair_zero_rates",
    "serialize_chain",
    "transient_distribution",
    "validate",
    "verify",
    "mchain_path",
]


def mchain_path():
    """Path of the bundled mchain executable, or None outside an install."""
    path = os.path.join(os.path.dirname(__file__), "bin", "mchain")
    return path if os.path.exists(path) else None
