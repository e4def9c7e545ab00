"""Walk-count influence of legislators in the susceptibility network.

The influence of legislator ``i`` is the discounted number of directed
walks ending at ``i``: the ``i``-th row sum of ``X = (I - beta*G^T)^-1``,
where ``x[i, j]`` counts discounted walks from ``j`` to ``i`` (the overall
pull of ``i`` on ``j``).  Equivalently, influence solves the recursion
``I_i = 1 + beta * sum_j g_ji * I_j``.  When every link is mutual this is
Bonacich centrality.

Systems are solved by dense direct factorization: legislatures are small,
so O(n^3) is exact and cheap.  The truncated walk series is kept only as
a test oracle.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DegenerateDenominatorError,
    DenominatorNonPositiveError,
    IndexOutOfRangeError,
    LinkAlreadyPresentError,
    SelfLoopError,
    SingularSystemError,
)
from .model import Legislature, PartyVector


def walk_matrix(legislature: Legislature, beta: float) -> np.ndarray:
    """Discounted walk counts ``X = (I - beta*G^T)^-1``.

    ``X[i, j]`` is the total discounted walk count from ``j`` to ``i``;
    diagonal entries are at least 1 (the empty walk).
    """
    n = legislature.n
    try:
        return np.linalg.inv(np.eye(n) - beta * legislature.adjacency.T)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"I - beta*G^T is singular (beta={beta})") from exc


def compute_influence(legislature: Legislature, beta: float) -> PartyVector:
    """Influence vector ``(I - beta*G^T)^-1 @ 1`` with party sums."""
    n = legislature.n
    try:
        entries = np.linalg.solve(
            np.eye(n) - beta * legislature.adjacency.T, np.ones(n)
        )
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"I - beta*G^T is singular (beta={beta})") from exc
    return PartyVector(entries=entries, n_F=legislature.n_F)


def incremental_influence(
    legislature: Legislature, beta: float, new_link: tuple[int, int]
) -> PartyVector:
    """Influence after adding the unit-weight link ``i -> j``.

    Rank-one (Sherman-Morrison) update of the prior walk matrix: every
    legislator ``k`` gains ``beta * I_i / (1 - beta * x_ij) * x_kj``, which
    is non-negative, so no influence ever drops when the network gets
    stronger.  Only unit-weight additions go through this path; weighted
    changes should be recomputed from scratch.
    """
    i, j = int(new_link[0]), int(new_link[1])
    n = legislature.n
    if not (0 <= i < n and 0 <= j < n):
        raise IndexOutOfRangeError(f"link ({i}, {j}) outside [0, {n})")
    if i == j:
        raise SelfLoopError(f"link ({i}, {j}) is a self-loop")
    if legislature.adjacency[i, j] != 0.0:
        raise LinkAlreadyPresentError(f"link ({i}, {j}) already present")
    x = walk_matrix(legislature, beta)
    influence = x.sum(axis=1)
    denom = 1.0 - beta * x[i, j]
    if denom <= 0.0:
        raise DenominatorNonPositiveError(
            f"1 - beta*x[{i},{j}] = {denom:.6g} <= 0; beta is outside the safe range"
        )
    entries = influence + (beta * influence[i] / denom) * x[:, j]
    return PartyVector(entries=entries, n_F=legislature.n_F)


def complete_network_entries(n: int, beta: float) -> tuple[float, float]:
    """Closed-form walk-matrix entries of the complete network.

    Returns ``(x_diag, x_offdiag)`` with the shared denominator
    ``1 - (n-2)*beta - (n-1)*beta**2``, valid while that denominator is
    positive (guaranteed by ``beta < 1/n``).
    """
    denom = 1.0 - (n - 2) * beta - (n - 1) * beta**2
    if denom <= 0.0:
        raise DegenerateDenominatorError(
            f"complete-network denominator {denom:.6g} <= 0 for n={n}, beta={beta}"
        )
    return (1.0 - (n - 2) * beta) / denom, beta / denom
