"""Comparative statics: polarization derivative and network changes.

Expected vote share is affine in ideological polarization,
``Q* = n/2 + theta * sum_i I_i u(m_i*) + theta*sigma*(I_F - I_A)``, so its
sigma-derivative is the constant ``theta * (I_F - I_A)``.  A stronger
network raises the investment term but can tilt the party gap either way;
when the against-party gains more influence the change only pays off
below the threshold ``sigma_hat``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, NotStrongerError
from .equilibrium import EquilibriumResult, solve_equilibrium
from .influence import compute_influence
from .model import Legislature, ModelParams, UtilitySpec

ALWAYS_BENEFICIAL = "always-beneficial"


def dQ_dsigma(legislature: Legislature, params: ModelParams) -> float:
    """Marginal impact of ideological polarization on expected vote share."""
    influence = compute_influence(legislature, params.beta)
    return params.theta * (influence.party_F_sum - influence.party_A_sum)


@dataclass(frozen=True, eq=False)
class NetworkChangeReport:
    """Equilibrium deltas induced by strengthening the network.

    ``sigma_hat`` is the ideological-polarization threshold below which
    the change benefits the interest group; it is ``None`` with
    ``always_beneficial`` set when party F gains at least as much
    influence as party A.  ``delta_probabilities`` and
    ``delta_vote_share`` are evaluated at the report's ``sigma``.
    """

    labels: list[str]
    sigma: float
    delta_influence: np.ndarray
    delta_influence_F: float
    delta_influence_A: float
    delta_investments: np.ndarray
    delta_probabilities: np.ndarray
    delta_vote_share: float
    investment_effect: float
    sigma_hat: float | None
    always_beneficial: bool
    base: EquilibriumResult
    changed: EquilibriumResult

    def to_csv_rows(self) -> list[list[str | float]]:
        """Rows mirroring the per-legislator delta table plus totals."""
        rows: list[list[str | float]] = [["quantity", *self.labels, "total"]]
        rows.append(["delta_influence", *self.delta_influence, float(self.delta_influence.sum())])
        rows.append(
            ["delta_investment", *self.delta_investments, float(self.delta_investments.sum())]
        )
        rows.append(
            [
                f"delta_probability(sigma={self.sigma:g})",
                *self.delta_probabilities,
                self.delta_vote_share,
            ]
        )
        marker = ALWAYS_BENEFICIAL if self.always_beneficial else self.sigma_hat
        rows.append(["sigma_hat", *[""] * len(self.labels), marker])
        return rows


def _require_stronger(base: Legislature, changed: Legislature) -> None:
    if (base.n_F, base.n_A) != (changed.n_F, changed.n_A):
        raise InputError("both networks must share the same party partition")
    diff = changed.adjacency - base.adjacency
    if np.any(diff < 0.0):
        raise NotStrongerError("some links are weaker in the comparison network")
    if not np.any(diff > 0.0):
        raise NotStrongerError("comparison network is identical; no link got stronger")


def analyze_network_change(
    legislature: Legislature,
    new_legislature: Legislature,
    params: ModelParams,
    utility: UtilitySpec,
) -> NetworkChangeReport:
    """Compare equilibria before and after the network gets stronger.

    Requires every link weight in ``new_legislature`` to be at least the
    base weight, with at least one strict increase.
    """
    _require_stronger(legislature, new_legislature)
    base = solve_equilibrium(legislature, params, utility)
    changed = solve_equilibrium(new_legislature, params, utility)

    delta_influence = changed.influence.entries - base.influence.entries
    d_F = changed.influence.party_F_sum - base.influence.party_F_sum
    d_A = changed.influence.party_A_sum - base.influence.party_A_sum
    investment_effect = float(
        (changed.influence.entries * np.asarray(utility.u(changed.investments))).sum()
        - (base.influence.entries * np.asarray(utility.u(base.investments))).sum()
    )
    always = d_F >= d_A
    sigma_hat = None if always else investment_effect / (d_A - d_F)
    return NetworkChangeReport(
        labels=legislature.labels,
        sigma=params.sigma,
        delta_influence=delta_influence,
        delta_influence_F=d_F,
        delta_influence_A=d_A,
        delta_investments=changed.investments - base.investments,
        delta_probabilities=changed.probabilities - base.probabilities,
        delta_vote_share=changed.vote_share - base.vote_share,
        investment_effect=investment_effect,
        sigma_hat=sigma_hat,
        always_beneficial=always,
        base=base,
        changed=changed,
    )
