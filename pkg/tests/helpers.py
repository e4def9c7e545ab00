"""Shared builders for randomized test corpora."""

from __future__ import annotations

import numpy as np

from polinflux import Legislature, ModelParams


def random_legislature(
    rng: np.random.Generator,
    max_party: int = 4,
    cross_party: bool = True,
    weighted: bool = True,
) -> Legislature:
    n_F = int(rng.integers(1, max_party + 1))
    n_A = int(rng.integers(1, max_party + 1))
    n = n_F + n_A
    density = rng.uniform(0.2, 0.8)
    mask = rng.random((n, n)) < density
    weights = rng.random((n, n)) if weighted else np.ones((n, n))
    adjacency = np.where(mask, weights, 0.0)
    np.fill_diagonal(adjacency, 0.0)
    if not cross_party:
        adjacency[:n_F, n_F:] = 0.0
        adjacency[n_F:, :n_F] = 0.0
    return Legislature(n_F=n_F, n_A=n_A, adjacency=adjacency)


def random_params(
    rng: np.random.Generator, n: int, sigma: float | None = None, alpha: float = 0.0
) -> ModelParams:
    """Parameters with beta*n < 1 so every feasible network is invertible."""
    theta = rng.uniform(0.01, 0.08)
    beta_target = rng.uniform(0.1, 0.9) / n
    delta = beta_target / (2.0 * theta)
    return ModelParams(
        theta=theta,
        delta=delta,
        sigma=rng.uniform(0.0, 5.0) if sigma is None else sigma,
        alpha=alpha,
        budget=float(rng.uniform(10.0, 200.0)),
    )


def missing_link(
    rng: np.random.Generator, legislature: Legislature
) -> tuple[int, int] | None:
    """A uniformly chosen ordered pair (i, j), i != j, with no current link."""
    n = legislature.n
    zeros = [
        (i, j)
        for i in range(n)
        for j in range(n)
        if i != j and legislature.adjacency[i, j] == 0.0
    ]
    if not zeros:
        return None
    return zeros[int(rng.integers(len(zeros)))]


def random_link_instance(
    rng: np.random.Generator, max_party: int = 4, weighted: bool = False
) -> tuple[Legislature, float, tuple[int, int]]:
    """A (legislature, beta, missing link) triple with beta * n < 1."""
    while True:
        leg = random_legislature(rng, max_party=max_party, weighted=weighted)
        link = missing_link(rng, leg)
        if link is not None:
            return leg, random_params(rng, leg.n).beta, link


def with_added_link(legislature: Legislature, link: tuple[int, int]) -> Legislature:
    adjacency = np.array(legislature.adjacency)
    adjacency[link] = 1.0
    return Legislature(n_F=legislature.n_F, n_A=legislature.n_A, adjacency=adjacency)
