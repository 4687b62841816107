"""Oracles and diagnostics: exact Riemann solver, shock relations, norms, audits, cases."""
from .cases import CaseSpec, Setup, case_registry, get_case
from .diagnostics import entropy_audit, kinetic_energy_budget, totals
from .norms import DegenerateError, eoc, eoc_table, error_norms
from .riemann import RiemannSolution, VacuumError, exact_riemann
from .shocks import (normal_shock_state, oblique_shock_state, rh_residual, shock_speed,
                     stationary_shock_pair)

__all__ = ["CaseSpec", "Setup", "case_registry", "get_case", "entropy_audit",
           "kinetic_energy_budget", "totals", "DegenerateError", "eoc", "eoc_table",
           "error_norms", "RiemannSolution", "VacuumError", "exact_riemann",
           "normal_shock_state", "oblique_shock_state", "rh_residual", "shock_speed",
           "stationary_shock_pair"]
