"""Influence, equilibrium, and polarization analysis for a two-party
legislature connected by a directed susceptibility network."""

from .affective import (
    AffectiveInfluence,
    alpha_ceiling,
    alpha_star,
    build_hat_matrix,
    dQ_dalpha,
    modified_influence,
    polarization_thresholds,
    solve_affective_equilibrium,
)
from .comparative import NetworkChangeReport, analyze_network_change, dQ_dsigma
from .equilibrium import (
    EquilibriumResult,
    InteriorityReport,
    check_interiority,
    conditional_probabilities,
    optimal_investments,
    solve_equilibrium,
)
from .influence import (
    complete_network_entries,
    compute_influence,
    incremental_influence,
    walk_matrix,
)
from .model import (
    Legislature,
    ModelParams,
    PartyVector,
    PowerUtility,
    UtilitySpec,
    ValidationReport,
    build_legislature,
    utility_from_config,
    validate_params,
)
from .oracle import (
    SimulationConfig,
    brute_force_allocation,
    equal_pivot_solutions,
    fixed_point_probabilities,
    monte_carlo_frequencies,
    pivotality_probe,
)
from .scenario import Scenario, load_scenario, parse_scenario, save_scenario

__version__ = "0.1.0"

__all__ = [
    "AffectiveInfluence",
    "EquilibriumResult",
    "InteriorityReport",
    "Legislature",
    "ModelParams",
    "NetworkChangeReport",
    "PartyVector",
    "PowerUtility",
    "Scenario",
    "SimulationConfig",
    "UtilitySpec",
    "ValidationReport",
    "alpha_ceiling",
    "alpha_star",
    "analyze_network_change",
    "brute_force_allocation",
    "build_hat_matrix",
    "build_legislature",
    "check_interiority",
    "complete_network_entries",
    "compute_influence",
    "conditional_probabilities",
    "dQ_dalpha",
    "dQ_dsigma",
    "equal_pivot_solutions",
    "fixed_point_probabilities",
    "incremental_influence",
    "load_scenario",
    "modified_influence",
    "monte_carlo_frequencies",
    "optimal_investments",
    "parse_scenario",
    "pivotality_probe",
    "polarization_thresholds",
    "save_scenario",
    "solve_affective_equilibrium",
    "solve_equilibrium",
    "utility_from_config",
    "validate_params",
    "walk_matrix",
]
