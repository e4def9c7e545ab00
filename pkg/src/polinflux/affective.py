"""Affective polarization: cross-party animus as negative linkage.

With no cross-party susceptibility links, affective disutility enters the
voting system through the block matrix ``H`` with ``delta*G_PP`` on the
diagonal and ``-alpha`` everywhere off-diagonal.  Its walk sums factor
exactly: each party's within-party influence vector is rescaled by

    omega_P = (1 - at*I0_P') / (1 - at**2 * I0_F * I0_A),   at = 2*theta*alpha

so modified influence is ``omega_P * I0_iP`` legislator by legislator.
Every computation here cross-checks that factorization against the direct
solve of ``(I - 2*theta*H^T) x = 1`` and fails loudly on disagreement.

The factorization is valid while ``alpha`` stays below the ceiling
``alpha_hat = min(1/I0_F, 1/I0_A) / (2*theta)``, at which the weaker
party's influence hits zero.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    AlphaTooLargeError,
    CrossPartyLinksPresentError,
    EqualInfluenceError,
    FormulaMismatchError,
    InputError,
    SingularSystemError,
)
from .equilibrium import EquilibriumResult, optimal_investments
from .model import Legislature, ModelParams, PartyVector, UtilitySpec, sigma_vector

OMEGA_DIRECT_ATOL = 1e-9
ALPHA_EDGE_FRACTION = 1.0 - 1e-6  # "at alpha_hat" evaluations use this fraction
_PARTY_TIE_RTOL = 1e-12


def build_hat_matrix(legislature: Legislature, delta: float, alpha: float) -> np.ndarray:
    """Block matrix with delta-weighted within-party links and -alpha across."""
    if legislature.has_cross_party_links:
        raise CrossPartyLinksPresentError(
            "affective mode requires a legislature without cross-party links"
        )
    n, n_F = legislature.n, legislature.n_F
    hat = np.full((n, n), -alpha)
    hat[:n_F, :n_F] = delta * legislature.block_FF
    hat[n_F:, n_F:] = delta * legislature.block_AA
    return hat


def within_party_influence(
    legislature: Legislature, beta: float
) -> tuple[np.ndarray, np.ndarray]:
    """Unmodified influence vectors of the two within-party networks."""
    out = []
    for block in (legislature.block_FF, legislature.block_AA):
        k = block.shape[0]
        try:
            out.append(np.linalg.solve(np.eye(k) - beta * block.T, np.ones(k)))
        except np.linalg.LinAlgError as exc:
            raise SingularSystemError("within-party system is singular") from exc
    return out[0], out[1]


def alpha_ceiling(legislature: Legislature, params: ModelParams) -> float:
    """Validity ceiling alpha_hat = min(1/I0_F, 1/I0_A) / (2*theta)."""
    i0_f, i0_a = within_party_influence(legislature, params.beta)
    return float(min(1.0 / i0_f.sum(), 1.0 / i0_a.sum()) / (2.0 * params.theta))


@dataclass(frozen=True, eq=False)
class AffectiveInfluence:
    """Within-party influence and its affective rescaling.

    ``gap`` is the modified party gap, stronger minus weaker party
    (``(I0_P - I0_P') / (1 - at**2 I0_F I0_A)``); ``stronger_party`` is
    None when the unmodified party influences tie.
    """

    unmodified: PartyVector
    omega_F: float
    omega_A: float
    modified: PartyVector
    alpha_hat: float
    gap: float
    stronger_party: str | None


def modified_influence(legislature: Legislature, params: ModelParams) -> AffectiveInfluence:
    """Per-legislator influence under affective polarization ``params.alpha``.

    Raises ``AlphaTooLargeError`` at or above the ceiling, and
    ``FormulaMismatchError`` if the omega-scaled form drifts from the
    direct block-inverse solve beyond 1e-9 (a violated assumption, not a
    rounding issue).
    """
    if legislature.has_cross_party_links:
        raise CrossPartyLinksPresentError(
            "affective mode requires a legislature without cross-party links"
        )
    theta = params.theta
    i0_f_vec, i0_a_vec = within_party_influence(legislature, params.beta)
    i0_f, i0_a = float(i0_f_vec.sum()), float(i0_a_vec.sum())
    alpha_hat = min(1.0 / i0_f, 1.0 / i0_a) / (2.0 * theta)
    if params.alpha >= alpha_hat:
        raise AlphaTooLargeError(
            f"alpha = {params.alpha:.6g} >= alpha_hat = {alpha_hat:.6g}"
        )
    at = params.alpha_tilde
    denom = 1.0 - at**2 * i0_f * i0_a
    omega_f = (1.0 - at * i0_a) / denom
    omega_a = (1.0 - at * i0_f) / denom
    unmodified = np.concatenate([i0_f_vec, i0_a_vec])
    modified = np.concatenate([omega_f * i0_f_vec, omega_a * i0_a_vec])

    hat = build_hat_matrix(legislature, params.delta, params.alpha)
    try:
        direct = np.linalg.solve(
            np.eye(legislature.n) - 2.0 * theta * hat.T, np.ones(legislature.n)
        )
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError("I - 2*theta*H^T is singular") from exc
    drift = float(np.max(np.abs(modified - direct)))
    if drift > OMEGA_DIRECT_ATOL:
        raise FormulaMismatchError(
            f"omega form and direct solve disagree by {drift:.3e} (> {OMEGA_DIRECT_ATOL})"
        )

    if np.isclose(i0_f, i0_a, rtol=_PARTY_TIE_RTOL, atol=0.0):
        stronger, gap = None, 0.0
    elif i0_f > i0_a:
        stronger, gap = "F", (i0_f - i0_a) / denom
    else:
        stronger, gap = "A", (i0_a - i0_f) / denom
    return AffectiveInfluence(
        unmodified=PartyVector(entries=unmodified, n_F=legislature.n_F),
        omega_F=omega_f,
        omega_A=omega_a,
        modified=PartyVector(entries=modified, n_F=legislature.n_F),
        alpha_hat=alpha_hat,
        gap=gap,
        stronger_party=stronger,
    )


def alpha_star(I0_strong: float, I0_weak: float, theta: float) -> float:
    """Affective level minimizing the stronger party's omega factor.

    ``(1/(2*theta*I0_weak)) * (1 - sqrt(1 - I0_weak/I0_strong))``, defined
    only for strictly unequal positive party influences.
    """
    if I0_strong <= 0.0 or I0_weak <= 0.0:
        raise InputError("party influences must be positive")
    if I0_strong <= I0_weak:
        raise EqualInfluenceError(
            "omega minimum requires the first party to be strictly more influential"
        )
    return (1.0 - np.sqrt(1.0 - I0_weak / I0_strong)) / (2.0 * theta * I0_weak)


def conditional_probabilities_affective(
    legislature: Legislature,
    params: ModelParams,
    m: np.ndarray,
    utility: UtilitySpec,
) -> np.ndarray:
    """Voting probabilities under affective polarization, given investments."""
    hat = build_hat_matrix(legislature, params.delta, params.alpha)
    rhs = np.asarray(utility.u(np.asarray(m, dtype=float)), dtype=float)
    rhs = rhs + sigma_vector(legislature, params)
    try:
        solved = np.linalg.solve(np.eye(legislature.n) - 2.0 * params.theta * hat, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError("I - 2*theta*H is singular") from exc
    return 0.5 + params.theta * solved


def solve_affective_equilibrium(
    legislature: Legislature, params: ModelParams, utility: UtilitySpec
) -> EquilibriumResult:
    """Equilibrium where investments maximize the modified-influence-weighted
    sum of resource-utilities."""
    affective = modified_influence(legislature, params)
    investments = optimal_investments(affective.modified, utility, params.budget)
    probabilities = conditional_probabilities_affective(
        legislature, params, investments, utility
    )
    shadow_price = params.theta * float(
        np.mean(affective.modified.entries * utility.u_prime(investments))
    )
    return EquilibriumResult(
        investments=investments,
        probabilities=probabilities,
        vote_share=float(probabilities.sum()),
        shadow_price=shadow_price,
        mode="affective",
        influence=affective.modified,
    )


def dQ_dsigma(legislature: Legislature, params: ModelParams) -> float:
    """Sigma-derivative of the affective vote share:
    ``theta * (I0_F - I0_A) / (1 - at**2 I0_F I0_A)``."""
    i0_f_vec, i0_a_vec = within_party_influence(legislature, params.beta)
    i0_f, i0_a = i0_f_vec.sum(), i0_a_vec.sum()
    at = params.alpha_tilde
    return params.theta * (i0_f - i0_a) / (1.0 - at**2 * i0_f * i0_a)


def _omega_derivatives(i0_f: float, i0_a: float, theta: float, at: float):
    """d(omega_F)/d(alpha) and d(omega_A)/d(alpha) at rescaled level ``at``."""
    denom_sq = (1.0 - at**2 * i0_f * i0_a) ** 2
    d_f = -2.0 * theta * i0_a * (1.0 + at**2 * i0_f * i0_a - 2.0 * at * i0_f) / denom_sq
    d_a = -2.0 * theta * i0_f * (1.0 + at**2 * i0_f * i0_a - 2.0 * at * i0_a) / denom_sq
    return d_f, d_a


def dQ_dalpha(
    legislature: Legislature, params: ModelParams, utility: UtilitySpec
) -> float:
    """Total derivative of equilibrium vote share in affective polarization.

    By the envelope argument the investment responses cancel against the
    shadow price (the budget always binds), leaving the omega-decay terms
    weighted by realized utilities plus the sigma-amplification term:

        theta * [omega_F' * S_F + omega_A' * S_A]
        + 4*sigma*theta**2 * at * I0_F*I0_A*(I0_F - I0_A) / (1 - at**2 I0_F I0_A)**2

    with ``S_P = sum_{i in P} I0_i * u(m_i*)`` at the current equilibrium.
    """
    i0_f_vec, i0_a_vec = within_party_influence(legislature, params.beta)
    i0_f, i0_a = float(i0_f_vec.sum()), float(i0_a_vec.sum())
    at = params.alpha_tilde
    result = solve_affective_equilibrium(legislature, params, utility)
    utilities = np.asarray(utility.u(result.investments), dtype=float)
    s_f = float((i0_f_vec * utilities[: legislature.n_F]).sum())
    s_a = float((i0_a_vec * utilities[legislature.n_F :]).sum())
    d_omega_f, d_omega_a = _omega_derivatives(i0_f, i0_a, params.theta, at)
    sigma_term = (
        4.0
        * params.sigma
        * params.theta**2
        * at
        * i0_f
        * i0_a
        * (i0_f - i0_a)
        / (1.0 - at**2 * i0_f * i0_a) ** 2
    )
    return params.theta * (d_omega_f * s_f + d_omega_a * s_a) + sigma_term


@dataclass(frozen=True)
class PolarizationThresholds:
    """Ideological-polarization thresholds from the high-affect limits.

    Which thresholds exist depends on which party is stronger without
    affective polarization:

    * ``sigma_2`` (party F stronger): above it, vote share near the
      ceiling exceeds the no-affect vote share.
    * ``sigma_1`` (party A stronger): below it, the vote-share derivative
      is positive as alpha approaches the ceiling.
    * ``sigma_3`` (party A stronger): below it, vote share near the
      ceiling exceeds the no-affect vote share.

    Utility terms are evaluated at the investments the corresponding
    limit specifies: ceiling-side sums use the equilibrium at
    ``alpha = (1 - 1e-6) * alpha_hat``, no-affect sums the ``alpha = 0``
    equilibrium.
    """

    sigma_1: float | None
    sigma_2: float | None
    sigma_3: float | None
    stronger_party: str | None
    alpha_hat: float


def polarization_thresholds(
    legislature: Legislature, params: ModelParams, utility: UtilitySpec
) -> PolarizationThresholds:
    """Thresholds applicable to this configuration; inapplicable ones are None."""
    i0_f_vec, i0_a_vec = within_party_influence(legislature, params.beta)
    i0_f, i0_a = float(i0_f_vec.sum()), float(i0_a_vec.sum())
    alpha_hat = min(1.0 / i0_f, 1.0 / i0_a) / (2.0 * params.theta)
    if np.isclose(i0_f, i0_a, rtol=_PARTY_TIE_RTOL, atol=0.0):
        return PolarizationThresholds(None, None, None, None, alpha_hat)

    n_F = legislature.n_F
    at_zero = replace(params, alpha=0.0)
    at_edge = replace(params, alpha=ALPHA_EDGE_FRACTION * alpha_hat)
    m_zero = solve_affective_equilibrium(legislature, at_zero, utility).investments
    m_edge = solve_affective_equilibrium(legislature, at_edge, utility).investments
    u_zero = np.asarray(utility.u(m_zero), dtype=float)
    u_edge = np.asarray(utility.u(m_edge), dtype=float)

    if i0_f > i0_a:
        sigma_2 = (
            float((i0_a_vec * u_zero[n_F:]).sum())
            - float((i0_f_vec * (u_edge[:n_F] - u_zero[:n_F])).sum())
        ) / i0_a
        return PolarizationThresholds(None, sigma_2, None, "F", alpha_hat)

    # party A stronger: near the ceiling all budget flows to party A
    sigma_1 = 0.5 * float((i0_a_vec * u_edge[n_F:]).sum()) / i0_a
    sigma_3 = (
        float((i0_a_vec * (u_edge[n_F:] - u_zero[n_F:])).sum())
        - float((i0_f_vec * u_zero[:n_F]).sum())
    ) / i0_f
    return PolarizationThresholds(sigma_1, None, sigma_3, "A", alpha_hat)
