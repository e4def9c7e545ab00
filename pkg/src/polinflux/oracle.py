"""Independent validators: shock simulation, fixed-point iteration,
exhaustive allocation search, and the majority-rule pivotality probe.

Nothing here reuses the closed-form solution paths it checks.  The Monte
Carlo draws raw preference shocks and applies the utility-comparison
threshold with other legislators' behavior held at the analytic beliefs
(shocks are private, so beliefs are the equilibrium probabilities); the
fixed point iterates the raw best-response map; the allocation search
walks the budget simplex.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .affective import build_hat_matrix, conditional_probabilities_affective
from .equilibrium import conditional_probabilities
from .errors import InputError, NoConvergenceError, TooManyLegislatorsError
from .model import Legislature, ModelParams, UtilitySpec, sigma_vector

GENERATOR_ID = "numpy-philox-4x64"
PARTITION_TRIALS = 1 << 16
THREADS_ENV_VAR = "POLINFLUX_THREADS"
MAX_FIXED_POINT_ITERATIONS = 100_000
MAX_GRID_LEGISLATORS = 5


@dataclass(frozen=True)
class SimulationConfig:
    """Trial count, seed, and mode of a shock simulation.

    Identical (config, inputs) reproduce identical estimates bit for bit,
    independent of worker count: trials are split into fixed-size
    partitions, each with its own counter-based random stream derived
    from (seed, partition index), and merged by summing counts.
    """

    trials: int
    seed: int
    mode: str = "baseline"

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise InputError(f"trials must be >= 1, got {self.trials}")
        if self.mode not in ("baseline", "affective"):
            raise InputError(f"mode must be 'baseline' or 'affective', got {self.mode!r}")


def _deterministic_score(
    legislature: Legislature,
    params: ModelParams,
    m: np.ndarray,
    utility: UtilitySpec,
    mode: str,
) -> np.ndarray:
    """Non-stochastic part of the vote-for-f utility margin.

    Legislator ``i`` votes for the interest group's policy exactly when
    her shock satisfies ``eps_i >= -score_i``.
    """
    m = np.asarray(m, dtype=float)
    if mode == "affective":
        beliefs = conditional_probabilities_affective(legislature, params, m, utility)
        coupling = build_hat_matrix(legislature, params.delta, params.alpha)
    else:
        beliefs = conditional_probabilities(legislature, params, m, utility)
        coupling = params.delta * legislature.adjacency
    utilities = np.asarray(utility.u(m), dtype=float)
    return utilities + sigma_vector(legislature, params) + coupling @ (2.0 * beliefs - 1.0)


def _partition_counts(seed: int, index: int, trials: int, score, half_width):
    rng = np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))
    )
    shocks = rng.uniform(-half_width, half_width, size=(trials, score.size))
    return (shocks >= -score).sum(axis=0)


def monte_carlo_frequencies(
    legislature: Legislature,
    params: ModelParams,
    m: np.ndarray,
    config: SimulationConfig,
    utility: UtilitySpec,
) -> np.ndarray:
    """Empirical vote frequencies from raw preference-shock draws.

    Each trial draws independent uniform shocks on
    ``[-1/(2 theta), 1/(2 theta)]`` and applies the threshold rule with
    beliefs fixed at the analytic probabilities, which makes the
    estimator unbiased for the per-legislator voting probability.
    """
    score = _deterministic_score(legislature, params, m, utility, config.mode)
    half_width = 1.0 / (2.0 * params.theta)
    partitions = []
    remaining, index = config.trials, 0
    while remaining > 0:
        take = min(PARTITION_TRIALS, remaining)
        partitions.append((index, take))
        remaining -= take
        index += 1

    workers = max(1, int(os.environ.get(THREADS_ENV_VAR, "1")))
    counts = np.zeros(legislature.n, dtype=np.int64)
    if workers == 1 or len(partitions) == 1:
        for index, take in partitions:
            counts += _partition_counts(config.seed, index, take, score, half_width)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            jobs = [
                pool.submit(_partition_counts, config.seed, index, take, score, half_width)
                for index, take in partitions
            ]
            for job in jobs:
                counts += job.result()
    return counts / config.trials


def fixed_point_probabilities(
    legislature: Legislature,
    params: ModelParams,
    m: np.ndarray,
    tol: float,
    utility: UtilitySpec,
    mode: str = "baseline",
) -> np.ndarray:
    """Voting probabilities by iterating the best-response map from 1/2.

    Converges when the map contracts (``beta*n < 1`` in baseline mode,
    ``2*theta*||H||_inf < 1`` in affective mode); otherwise raises after
    100000 iterations.
    """
    if mode == "affective":
        coupling = build_hat_matrix(legislature, params.delta, params.alpha)
    else:
        coupling = params.delta * legislature.adjacency
    utilities = np.asarray(utility.u(np.asarray(m, dtype=float)), dtype=float)
    constant = (
        0.5
        + params.theta * (utilities + sigma_vector(legislature, params))
        - params.theta * coupling.sum(axis=1)
    )
    q = np.full(legislature.n, 0.5)
    for _ in range(MAX_FIXED_POINT_ITERATIONS):
        q_next = constant + 2.0 * params.theta * (coupling @ q)
        if not np.all(np.isfinite(q_next)) or np.max(np.abs(q_next)) > 1e12:
            raise NoConvergenceError("best-response iteration diverged (no contraction)")
        if float(np.max(np.abs(q_next - q))) < tol:
            return q_next
        q = q_next
    raise NoConvergenceError(
        f"best-response iteration did not reach tol={tol} "
        f"in {MAX_FIXED_POINT_ITERATIONS} iterations"
    )


def _simplex_compositions(total: int, parts: int) -> np.ndarray:
    """All non-negative integer vectors of length ``parts`` summing to ``total``."""
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    blocks = []
    for first in range(total + 1):
        tail = _simplex_compositions(total - first, parts - 1)
        head = np.full((tail.shape[0], 1), first, dtype=np.int64)
        blocks.append(np.hstack([head, tail]))
    return np.vstack(blocks)


def brute_force_allocation(
    influence, utility: UtilitySpec, budget: float, grid_points: int
) -> tuple[np.ndarray, float]:
    """Best influence-weighted utility over the budget-simplex grid.

    ``grid_points`` is the per-edge resolution: the budget is split into
    ``grid_points - 1`` equal steps and every composition is evaluated.
    The analytic optimum is always at least as good; the grid best
    approaches it as the resolution grows.
    """
    weights = np.asarray(getattr(influence, "entries", influence), dtype=float)
    n = weights.size
    if n > MAX_GRID_LEGISLATORS:
        raise TooManyLegislatorsError(
            f"grid search supports at most {MAX_GRID_LEGISLATORS} legislators, got {n}"
        )
    if grid_points < 2:
        raise InputError(f"grid_points must be >= 2, got {grid_points}")
    steps = grid_points - 1
    grid = _simplex_compositions(steps, n).astype(float) * (budget / steps)
    objectives = np.asarray(utility.u(grid), dtype=float) @ weights
    best = int(np.argmax(objectives))
    return grid[best], float(objectives[best])


@dataclass(frozen=True, eq=False)
class PivotReport:
    """Majority-rule pivot probabilities for a three-legislator vote.

    ``pivot_probabilities[i]`` is the chance the other two legislators
    split; ``distance_from_half`` measures how far the profile sits from
    the all-on-the-fence point where every pivot probability coincides.
    """

    pivot_probabilities: np.ndarray
    distance_from_half: float


def pivotality_probe(q) -> PivotReport:
    """Evaluate ``pi_i = q_j (1 - q_k) + q_k (1 - q_j)`` for a 3-vector."""
    probs = np.asarray(q, dtype=float)
    if probs.shape != (3,):
        raise InputError("pivotality probe expects exactly three probabilities")
    pivots = np.empty(3)
    for i in range(3):
        j, k = [idx for idx in range(3) if idx != i]
        pivots[i] = probs[j] * (1.0 - probs[k]) + probs[k] * (1.0 - probs[j])
    return PivotReport(
        pivot_probabilities=pivots,
        distance_from_half=float(np.max(np.abs(probs - 0.5))),
    )


def equal_pivot_solutions(
    target: float = 1.0 / 3.0,
    attempts: int = 64,
    seed: int = 0,
    tol: float = 1e-12,
) -> np.ndarray:
    """Probability profiles where every pivot probability equals ``target``.

    Multi-start Newton on the three bilinear equations, restricted to the
    unit cube; distinct roots are returned row-wise.  For target 1/3 the
    solutions are the two symmetric profiles ``(1 +- 1/sqrt(3))/2``; the
    on-the-fence profile (1/2, 1/2, 1/2) instead makes every pivot
    probability equal to 1/2.
    """
    rng = np.random.default_rng(seed)
    roots: list[np.ndarray] = []
    for _ in range(attempts):
        q = rng.uniform(0.0, 1.0, size=3)
        for _ in range(100):
            residual = pivotality_probe(q).pivot_probabilities - target
            if float(np.max(np.abs(residual))) < tol:
                break
            jac = np.zeros((3, 3))
            for i in range(3):
                j, k = [idx for idx in range(3) if idx != i]
                jac[i, j] = 1.0 - 2.0 * q[k]
                jac[i, k] = 1.0 - 2.0 * q[j]
            try:
                step = np.linalg.solve(jac, residual)
            except np.linalg.LinAlgError:
                break
            q = q - step
        if not np.all(np.isfinite(q)):
            continue
        residual = pivotality_probe(q).pivot_probabilities - target
        if not float(np.max(np.abs(residual))) < tol:
            continue
        if np.any(q < -1e-9) or np.any(q > 1.0 + 1e-9):
            continue
        q = np.clip(q, 0.0, 1.0)
        if not any(np.allclose(q, seen, atol=1e-8) for seen in roots):
            roots.append(q)
    return np.array(sorted(roots, key=lambda row: tuple(row))) if roots else np.empty((0, 3))
