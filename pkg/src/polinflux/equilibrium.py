"""Baseline equilibrium: voting probabilities and optimal investments.

Conditional on investments ``m`` the unique voting-probability vector is
``q*(m) = 1/2 + theta * (I - beta*G)^-1 (u(m) + sigma_vec)``.  The interest
group's problem separates: it maximizes the influence-weighted sum of
resource-utilities over the budget simplex, which water-fills so that
``I_i * u'(m_i)`` is equal across legislators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BisectionFailureError,
    NonPositiveInfluenceError,
    SingularSystemError,
)
from .influence import compute_influence
from .model import (
    Legislature,
    ModelParams,
    PartyVector,
    PowerUtility,
    UtilitySpec,
    sigma_vector,
)

BUDGET_RTOL = 1e-10
MAX_BRACKET_STEPS = 200


def conditional_probabilities(
    legislature: Legislature,
    params: ModelParams,
    m: np.ndarray,
    utility: UtilitySpec,
) -> np.ndarray:
    """Equilibrium voting probabilities conditional on investments ``m``."""
    n = legislature.n
    rhs = np.asarray(utility.u(np.asarray(m, dtype=float)), dtype=float)
    rhs = rhs + sigma_vector(legislature, params)
    try:
        solved = np.linalg.solve(np.eye(n) - params.beta * legislature.adjacency, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError("I - beta*G is singular") from exc
    return 0.5 + params.theta * solved


def _as_weights(influence) -> np.ndarray:
    return np.asarray(getattr(influence, "entries", influence), dtype=float)


def optimal_investments(influence, utility: UtilitySpec, budget: float) -> np.ndarray:
    """Unique maximizer of ``sum_i I_i * u(m_i)`` over the budget simplex.

    Because ``u'`` diverges at zero and every weight is positive, the
    optimum is interior and the budget binds; no active-set logic is
    needed.  Power utilities use the closed form
    ``m_i = I_i**(1/(1-gamma)) / sum_j I_j**(1/(1-gamma)) * budget``; any
    other utility goes through bisection on the strictly decreasing dual
    map ``lambda -> sum_i u_prime_inverse(lambda / I_i)``.
    """
    weights = _as_weights(influence)
    if np.any(weights <= 0.0):
        raise NonPositiveInfluenceError("allocation weights must be strictly positive")
    if budget <= 0.0:
        raise NonPositiveInfluenceError(f"budget must be positive, got {budget}")
    if isinstance(utility, PowerUtility):
        scaled = weights ** (1.0 / (1.0 - utility.gamma))
        return scaled / scaled.sum() * budget
    return _dual_bisection(weights, utility, budget)


def _dual_bisection(weights, utility, budget):
    n = weights.size

    def spend(lam: float) -> float:
        return float(np.sum(utility.u_prime_inverse(lam / weights)))

    # seed the bracket from the marginal utilities at extreme allocations,
    # then expand geometrically until the decreasing dual map straddles M
    lo = float(np.max(weights) * utility.u_prime(budget))
    hi = float(np.min(weights) * utility.u_prime(budget / n**2))
    lo, hi = min(lo, hi), max(lo, hi)
    for _ in range(MAX_BRACKET_STEPS):
        if spend(lo) >= budget:
            break
        lo /= 2.0
    else:
        raise BisectionFailureError("could not bracket the shadow price from below")
    for _ in range(MAX_BRACKET_STEPS):
        if spend(hi) <= budget:
            break
        hi *= 2.0
    else:
        raise BisectionFailureError("could not bracket the shadow price from above")
    for _ in range(20_000):
        mid = 0.5 * (lo + hi)
        total = spend(mid)
        if abs(total - budget) <= BUDGET_RTOL * budget:
            return np.asarray(utility.u_prime_inverse(mid / weights), dtype=float)
        if total > budget:
            lo = mid
        else:
            hi = mid
    raise BisectionFailureError("budget residual tolerance not reached")


@dataclass(frozen=True, eq=False)
class EquilibriumResult:
    """Equilibrium investments with the induced voting behavior.

    ``shadow_price`` is the common value of ``theta * I_i * u'(m_i)``
    across legislators (the multiplier on the budget constraint).
    """

    investments: np.ndarray
    probabilities: np.ndarray
    vote_share: float
    shadow_price: float
    mode: str
    influence: PartyVector


def solve_equilibrium(
    legislature: Legislature, params: ModelParams, utility: UtilitySpec
) -> EquilibriumResult:
    """Full baseline equilibrium: influence -> investments -> probabilities."""
    influence = compute_influence(legislature, params.beta)
    investments = optimal_investments(influence, utility, params.budget)
    probabilities = conditional_probabilities(legislature, params, investments, utility)
    shadow_price = params.theta * float(
        np.mean(influence.entries * utility.u_prime(investments))
    )
    return EquilibriumResult(
        investments=investments,
        probabilities=probabilities,
        vote_share=float(probabilities.sum()),
        shadow_price=shadow_price,
        mode="baseline",
        influence=influence,
    )


@dataclass(frozen=True)
class InteriorityReport:
    """Worst-case voting-probability bounds per party.

    ``passes`` is True when every bound keeps probabilities strictly
    inside (0, 1).  A failing report is a warning, not an error: sweeps
    may intentionally cross the boundary.
    """

    q_high_F: float
    q_low_F: float
    q_high_A: float
    q_low_A: float
    mode: str

    @property
    def passes(self) -> bool:
        return (
            self.q_high_F < 1.0
            and self.q_high_A < 1.0
            and self.q_low_F > 0.0
            and self.q_low_A > 0.0
        )


def check_interiority(
    legislature: Legislature,
    params: ModelParams,
    utility: UtilitySpec,
    mode: str = "baseline",
) -> InteriorityReport:
    """Bounds on any legislator's voting probability.

    The highest probability pairs the full budget with unanimous network
    pull ``delta*(n-1)``; the lowest flips the network term.  In affective
    mode the worst-case cross-party terms ``+/- alpha * n_P'`` widen both
    bounds (no cross-party links exist there, but the baseline network
    bound is kept as a conservative cap).
    """
    theta = params.theta
    n = legislature.n
    u_max = float(utility.u(params.budget))
    swing = params.delta * (n - 1)
    bounds = {}
    for party, sign, n_other in (
        ("F", +1.0, legislature.n_A),
        ("A", -1.0, legislature.n_F),
    ):
        affect = params.alpha * n_other if mode == "affective" else 0.0
        bounds[f"q_high_{party}"] = 0.5 + theta * (
            u_max + swing + affect + sign * params.sigma
        )
        bounds[f"q_low_{party}"] = 0.5 + theta * (-swing - affect + sign * params.sigma)
    return InteriorityReport(mode=mode, **bounds)
