"""Slit maps, Schiffer deformation cocycles, and period and differential expansions."""

from ._core import (
    ContractError,
    ConvergenceError,
    DomainError,
    InconclusiveError,
    NotAvailableError,
    cocycle,
    cocycle_numeric,
    cocycle_oracle,
    gamma_from_pi,
    pi_from_gamma,
    render,
    run_scenario,
    slit_eval,
    slit_invert,
    slit_series,
    splitting_orders,
    verify,
    verify_suites,
    wronskian,
)

__version__ = "0.1.0"
