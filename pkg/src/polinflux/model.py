"""Core domain types: legislatures, model parameters, utility families.

Legislators are indexed with every party-F member first, then every
party-A member, so party aggregates are always contiguous slices.  All
types are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyPartyError,
    IndexOutOfRangeError,
    InputError,
    SelfLoopError,
    WeightOutOfRangeError,
)

PARTY_F = "F"
PARTY_A = "A"


@dataclass(frozen=True, eq=False)
class Legislature:
    """Two-party legislature with a directed susceptibility network.

    ``adjacency[i, j]`` is the weight with which legislator ``i`` values
    voting like legislator ``j`` (0 = not susceptible, 1 = fully).  The
    diagonal is zero and every weight lies in [0, 1].
    """

    n_F: int
    n_A: int
    adjacency: np.ndarray

    def __post_init__(self) -> None:
        if self.n_F < 1 or self.n_A < 1:
            raise EmptyPartyError(
                f"both parties need at least one legislator, got n_F={self.n_F}, n_A={self.n_A}"
            )
        adj = np.array(self.adjacency, dtype=float)
        if adj.shape != (self.n, self.n):
            raise InputError(f"adjacency must be {self.n}x{self.n}, got {adj.shape}")
        if np.any(np.diag(adj) != 0.0):
            raise SelfLoopError("diagonal entries must be zero (no self-loops)")
        if np.any(adj < 0.0) or np.any(adj > 1.0):
            raise WeightOutOfRangeError("susceptibility weights must lie in [0, 1]")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    @property
    def n(self) -> int:
        return self.n_F + self.n_A

    @property
    def slice_F(self) -> slice:
        return slice(0, self.n_F)

    @property
    def slice_A(self) -> slice:
        return slice(self.n_F, self.n)

    @property
    def block_FF(self) -> np.ndarray:
        return self.adjacency[self.slice_F, self.slice_F]

    @property
    def block_FA(self) -> np.ndarray:
        return self.adjacency[self.slice_F, self.slice_A]

    @property
    def block_AF(self) -> np.ndarray:
        return self.adjacency[self.slice_A, self.slice_F]

    @property
    def block_AA(self) -> np.ndarray:
        return self.adjacency[self.slice_A, self.slice_A]

    @property
    def has_cross_party_links(self) -> bool:
        return bool(np.any(self.block_FA != 0.0) or np.any(self.block_AF != 0.0))

    @property
    def labels(self) -> list[str]:
        return [f"F{i + 1}" for i in range(self.n_F)] + [
            f"A{i + 1}" for i in range(self.n_A)
        ]

    def party_of(self, index: int) -> str:
        if not 0 <= index < self.n:
            raise IndexOutOfRangeError(f"legislator index {index} outside [0, {self.n})")
        return PARTY_F if index < self.n_F else PARTY_A

    def edge_list(self) -> list[tuple[int, int, float]]:
        """Nonzero links in row-major order, as (from, to, weight) triples."""
        rows, cols = np.nonzero(self.adjacency)
        return [(int(i), int(j), float(self.adjacency[i, j])) for i, j in zip(rows, cols)]


def build_legislature(
    n_F: int, n_A: int, edges: list[tuple[int, int, float]]
) -> Legislature:
    """Assemble a validated legislature from an edge list.

    Unlisted ordered pairs get weight zero; listing a pair twice keeps the
    last weight.  Raises on self-loops, out-of-range indices or weights,
    and empty parties.
    """
    if n_F < 1 or n_A < 1:
        raise EmptyPartyError(
            f"both parties need at least one legislator, got n_F={n_F}, n_A={n_A}"
        )
    n = n_F + n_A
    adjacency = np.zeros((n, n))
    for edge in edges:
        src, dst, weight = int(edge[0]), int(edge[1]), float(edge[2])
        if not (0 <= src < n and 0 <= dst < n):
            raise IndexOutOfRangeError(f"edge ({src}, {dst}) outside [0, {n})")
        if src == dst:
            raise SelfLoopError(f"edge ({src}, {dst}) is a self-loop")
        if not 0.0 <= weight <= 1.0:
            raise WeightOutOfRangeError(f"edge ({src}, {dst}) weight {weight} outside [0, 1]")
        adjacency[src, dst] = weight
    return Legislature(n_F=n_F, n_A=n_A, adjacency=adjacency)


@dataclass(frozen=True)
class ModelParams:
    """Scalar primitives of the voting model.

    ``theta`` is the density of the uniform preference shocks on
    ``[-1/(2 theta), 1/(2 theta)]``, ``delta`` the per-neighbor network
    utility, ``sigma`` ideological polarization, ``alpha`` affective
    polarization, and ``budget`` the interest group's resource.
    """

    theta: float
    delta: float
    sigma: float = 0.0
    alpha: float = 0.0
    budget: float = 100.0

    def __post_init__(self) -> None:
        if self.theta <= 0.0:
            raise InputError(f"theta must be positive, got {self.theta}")
        if self.delta <= 0.0:
            raise InputError(f"delta must be positive, got {self.delta}")
        if self.budget <= 0.0:
            raise InputError(f"budget must be positive, got {self.budget}")
        if self.sigma < 0.0:
            raise InputError(f"sigma must be non-negative, got {self.sigma}")
        if self.alpha < 0.0:
            raise InputError(f"alpha must be non-negative, got {self.alpha}")

    @property
    def beta(self) -> float:
        """Walk-discount factor 2*theta*delta."""
        return 2.0 * self.theta * self.delta

    @property
    def alpha_tilde(self) -> float:
        """Rescaled affective polarization 2*theta*alpha."""
        return 2.0 * self.theta * self.alpha


def ideology_signs(legislature: Legislature) -> np.ndarray:
    """+1 for party-F legislators, -1 for party-A legislators."""
    signs = np.ones(legislature.n)
    signs[legislature.slice_A] = -1.0
    return signs


def sigma_vector(legislature: Legislature, params: ModelParams) -> np.ndarray:
    """Per-legislator ideological term (+sigma in party F, -sigma in party A)."""
    return params.sigma * ideology_signs(legislature)


@dataclass(frozen=True, eq=False)
class PartyVector:
    """Per-legislator values with party block sums."""

    entries: np.ndarray
    n_F: int

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 1 or not 1 <= self.n_F < entries.size:
            raise InputError("entries must be a vector spanning both party blocks")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.size

    @property
    def party_F_sum(self) -> float:
        return float(self.entries[: self.n_F].sum())

    @property
    def party_A_sum(self) -> float:
        return float(self.entries[self.n_F :].sum())

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)


class UtilitySpec:
    """Strictly increasing, strictly concave resource-utility family.

    Subclasses provide vectorized ``u``, its derivative ``u_prime`` (which
    must diverge as investment drops to zero, keeping optimal allocations
    interior), and ``u_prime_inverse``, the inverse of the derivative on
    its range.
    """

    def u(self, m):
        raise NotImplementedError

    def u_prime(self, m):
        raise NotImplementedError

    def u_prime_inverse(self, y):
        raise NotImplementedError


@dataclass(frozen=True)
class PowerUtility(UtilitySpec):
    """u(m) = m**gamma with gamma in (0, 1); gamma = 1/2 is the default."""

    gamma: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.gamma < 1.0:
            raise InputError(f"gamma must lie in (0, 1), got {self.gamma}")

    def u(self, m):
        return np.power(m, self.gamma)

    def u_prime(self, m):
        return self.gamma * np.power(m, self.gamma - 1.0)

    def u_prime_inverse(self, y):
        return np.power(np.asarray(y) / self.gamma, 1.0 / (self.gamma - 1.0))


def utility_from_config(config: dict | None) -> UtilitySpec:
    """Build a utility from a scenario-file mapping like
    ``{"family": "power", "gamma": 0.5}``."""
    if config is None:
        return PowerUtility()
    family = config.get("family", "power")
    if family != "power":
        raise InputError(f"unknown utility family {family!r}")
    return PowerUtility(gamma=float(config.get("gamma", 0.5)))


def spectral_radius(matrix: np.ndarray, n_iter: int = 200, tol: float = 1e-10):
    """Estimate the spectral radius of a non-negative matrix.

    Power iteration on ``matrix + I``; the unit shift makes periodic
    networks (for which plain power iteration oscillates) converge, and
    shifts every eigenvalue by exactly one.

    Returns
    -------
    (estimate, converged) : tuple of float and bool
    """
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    shifted = a + np.eye(n)
    x = np.full(n, 1.0 / np.sqrt(n))
    lam = 1.0
    for _ in range(n_iter):
        y = shifted @ x
        norm = float(np.linalg.norm(y))
        x = y / norm
        lam_new = float(x @ (shifted @ x))
        if abs(lam_new - lam) <= tol:
            return lam_new - 1.0, True
        lam = lam_new
    return lam - 1.0, False


@dataclass(frozen=True)
class ValidationReport:
    """Diagnostics for a (legislature, params, mode) combination.

    Never raises: callers decide which findings are fatal.  ``beta_n_ok``
    reports the sufficient condition ``beta*n < 1``; ``beta_spectral_ok``
    the sharper condition ``beta * spectral_radius < 1``, so networks with
    ``beta*n >= 1`` but a small spectral radius can still be run.
    """

    mode: str
    beta_n: float
    beta_n_ok: bool
    spectral_radius: float
    spectral_converged: bool
    beta_spectral_ok: bool
    cross_party_ok: bool | None = None
    alpha_hat: float | None = None
    alpha_ok: bool | None = None

    @property
    def ok(self) -> bool:
        checks = [self.beta_n_ok, self.beta_spectral_ok]
        if self.mode == "affective":
            checks += [bool(self.cross_party_ok), bool(self.alpha_ok)]
        return all(checks)

    @property
    def fatal(self) -> bool:
        """True when the requested computation cannot be trusted at all."""
        if not self.beta_spectral_ok:
            return True
        if self.mode == "affective":
            return not (self.cross_party_ok and self.alpha_ok)
        return False

    def warnings(self) -> list[str]:
        notes = []
        if not self.beta_n_ok:
            notes.append(f"beta*n = {self.beta_n:.6g} >= 1 (sufficient condition violated)")
        if not self.beta_spectral_ok:
            notes.append(
                f"beta*spectral_radius >= 1 (radius estimate {self.spectral_radius:.6g})"
            )
        if not self.spectral_converged:
            notes.append("power iteration did not converge; radius estimate is approximate")
        if self.mode == "affective":
            if not self.cross_party_ok:
                notes.append("network has cross-party links (not allowed in affective mode)")
            if not self.alpha_ok:
                notes.append(f"alpha at or above the ceiling alpha_hat = {self.alpha_hat}")
        return notes


def validate_params(
    legislature: Legislature, params: ModelParams, mode: str = "baseline"
) -> ValidationReport:
    """Check the invertibility and affective-mode assumptions.

    Pure: identical inputs yield identical reports.
    """
    if mode not in ("baseline", "affective"):
        raise InputError(f"mode must be 'baseline' or 'affective', got {mode!r}")
    beta = params.beta
    beta_n = beta * legislature.n
    radius, converged = spectral_radius(legislature.adjacency)
    report = dict(
        mode=mode,
        beta_n=beta_n,
        beta_n_ok=beta_n < 1.0,
        spectral_radius=radius,
        spectral_converged=converged,
        beta_spectral_ok=beta * radius < 1.0,
    )
    if mode == "affective":
        from .affective import alpha_ceiling
        from .errors import PolinfluxError

        report["cross_party_ok"] = not legislature.has_cross_party_links
        try:
            alpha_hat = alpha_ceiling(legislature, params)
        except PolinfluxError:
            alpha_hat = float("nan")
        report["alpha_hat"] = alpha_hat
        report["alpha_ok"] = bool(params.alpha < alpha_hat)
    return ValidationReport(**report)
