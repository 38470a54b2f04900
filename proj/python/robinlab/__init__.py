"""Python bindings for the robinlab core."""

from ._robinlab import (
    CapacityError,
    bound_rhs,
    extremal_candidates,
    factorize,
    gap_series,
    primes_up_to,
    ramanujan_constant,
    robin_check,
    robin_delta,
    run_cli,
    scan_range,
    sigma,
    theta_check,
    zeta_enclosure,
)

__all__ = [
    "CapacityError",
    "bound_rhs",
    "extremal_candidates",
    "factorize",
    "gap_series",
    "primes_up_to",
    "ramanujan_constant",
    "robin_check",
    "robin_delta",
    "run_cli",
    "scan_range",
    "sigma",
    "theta_check",
    "zeta_enclosure",
]
