import numpy as np
import pytest

from polinflux import (
    ModelParams,
    alpha_ceiling,
    alpha_star,
    build_hat_matrix,
    build_legislature,
    dQ_dalpha,
    modified_influence,
    polarization_thresholds,
    solve_affective_equilibrium,
    solve_equilibrium,
)
from polinflux.affective import dQ_dsigma as affective_dQ_dsigma
from polinflux.affective import within_party_influence
from polinflux.errors import (
    AlphaTooLargeError,
    CrossPartyLinksPresentError,
    EqualInfluenceError,
)

from helpers import random_legislature, random_params


def replace_alpha(params, alpha):
    return ModelParams(
        theta=params.theta,
        delta=params.delta,
        sigma=params.sigma,
        alpha=alpha,
        budget=params.budget,
    )


def random_affective_config(rng, require_unequal=True, max_party=4):
    """(legislature, params) with no cross links and alpha inside (0, alpha_hat)."""
    while True:
        leg = random_legislature(rng, max_party=max_party, cross_party=False)
        params = random_params(rng, leg.n)
        i0_f, i0_a = within_party_influence(leg, params.beta)
        if require_unequal and abs(i0_f.sum() - i0_a.sum()) < 1e-6:
            continue
        ceiling = alpha_ceiling(leg, params)
        alpha = float(rng.uniform(0.05, 0.95)) * ceiling
        return leg, replace_alpha(params, alpha)


# party F holds two isolated legislators, party A one: I0_F = 2, I0_A = 1
@pytest.fixture
def lopsided():
    return build_legislature(2, 1, [])


@pytest.fixture
def lopsided_params():
    return ModelParams(theta=0.05, delta=0.3, sigma=1.0, alpha=1.0)


class TestHatMatrix:
    def test_zero_alpha_is_block_diagonal(self):
        leg = build_legislature(2, 2, [(0, 1, 1.0), (2, 3, 0.5)])
        hat = build_hat_matrix(leg, delta=0.3, alpha=0.0)
        expected = np.zeros((4, 4))
        expected[0, 1] = 0.3
        expected[2, 3] = 0.15
        assert np.array_equal(hat, expected)

    def test_two_isolated_legislators(self):
        leg = build_legislature(1, 1, [])
        hat = build_hat_matrix(leg, delta=0.3, alpha=2.0)
        assert np.array_equal(hat, np.array([[0.0, -2.0], [-2.0, 0.0]]))

    def test_symmetric_when_blocks_symmetric(self):
        leg = build_legislature(2, 2, [(0, 1, 1.0), (1, 0, 1.0), (2, 3, 0.4), (3, 2, 0.4)])
        hat = build_hat_matrix(leg, delta=0.25, alpha=0.7)
        assert np.array_equal(hat, hat.T)

    def test_cross_party_links_rejected(self):
        leg = build_legislature(1, 1, [(0, 1, 1.0)])
        with pytest.raises(CrossPartyLinksPresentError):
            build_hat_matrix(leg, delta=0.3, alpha=0.5)


class TestModifiedInfluence:
    def test_zero_alpha_identity(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            leg = random_legislature(rng, cross_party=False)
            params = random_params(rng, leg.n, alpha=0.0)
            result = modified_influence(leg, params)
            assert result.omega_F == 1.0
            assert result.omega_A == 1.0
            assert np.array_equal(result.modified.entries, result.unmodified.entries)

    def test_lopsided_omegas(self, lopsided, lopsided_params):
        result = modified_influence(lopsided, lopsided_params)
        assert result.omega_F == pytest.approx(0.9 / 0.98, rel=1e-12)
        assert result.omega_A == pytest.approx(0.8 / 0.98, rel=1e-12)
        assert result.alpha_hat == pytest.approx(5.0, rel=1e-12)
        assert result.stronger_party == "F"
        # gap: (2 - 1) / (1 - 0.01*2)
        assert result.gap == pytest.approx(1.0 / 0.98, rel=1e-12)

    def test_alpha_at_ceiling_rejected(self, lopsided):
        params = ModelParams(theta=0.05, delta=0.3, alpha=5.0)
        with pytest.raises(AlphaTooLargeError):
            modified_influence(lopsided, params)

    def test_cross_party_links_rejected(self, lopsided_params):
        crossing = build_legislature(1, 1, [(0, 1, 1.0)])
        with pytest.raises(CrossPartyLinksPresentError):
            modified_influence(crossing, lopsided_params)

    def test_omega_form_matches_direct_solve_randomized(self):
        rng = np.random.default_rng(505)
        for _ in range(500):
            leg, params = random_affective_config(rng, require_unequal=False)
            result = modified_influence(leg, params)
            direct = np.linalg.solve(
                np.eye(leg.n)
                - 2.0 * params.theta * build_hat_matrix(leg, params.delta, params.alpha).T,
                np.ones(leg.n),
            )
            assert np.max(np.abs(result.modified.entries - direct)) <= 1e-9

    def test_omegas_stay_in_unit_interval(self):
        rng = np.random.default_rng(321)
        for _ in range(100):
            leg, params = random_affective_config(rng, require_unequal=False)
            result = modified_influence(leg, params)
            assert 0.0 < result.omega_F <= 1.0 + 1e-12
            assert 0.0 < result.omega_A <= 1.0 + 1e-12


class TestAlphaStar:
    def test_closed_form_example(self):
        assert alpha_star(2.0, 1.0, 0.05) == pytest.approx(
            10.0 * (1.0 - np.sqrt(0.5)), rel=1e-12
        )

    def test_equal_influence_rejected(self):
        with pytest.raises(EqualInfluenceError):
            alpha_star(1.5, 1.5, 0.05)

    def test_vanishes_for_dominant_party(self):
        values = [alpha_star(strong, 1.0, 0.05) for strong in (10.0, 100.0, 1000.0)]
        assert values[0] > values[1] > values[2] > 0.0
        assert values[2] < 0.11

    def test_local_minimum_of_strong_omega(self, lopsided):
        theta = 0.05
        astar = alpha_star(2.0, 1.0, theta)

        def omega_strong(alpha):
            params = ModelParams(theta=theta, delta=0.3, alpha=alpha)
            return modified_influence(lopsided, params).omega_F

        eps = 1e-4
        assert omega_strong(astar - eps) > omega_strong(astar)
        assert omega_strong(astar + eps) > omega_strong(astar)


class TestLemmaTwoGrids:
    def grid_omegas(self, leg, params, points=100):
        ceiling = alpha_ceiling(leg, params)
        grid = np.linspace(0.0, ceiling * (1.0 - 1e-9), points)
        omegas = [modified_influence(leg, replace_alpha(params, a)) for a in grid]
        return grid, omegas, ceiling

    def test_monotonicity_and_gap(self):
        rng = np.random.default_rng(777)
        for _ in range(10):
            leg, params = random_affective_config(rng)
            grid, results, ceiling = self.grid_omegas(leg, params)
            i0_f, i0_a = within_party_influence(leg, params.beta)
            strong_is_f = i0_f.sum() > i0_a.sum()
            weak = np.array(
                [r.omega_A if strong_is_f else r.omega_F for r in results]
            )
            assert np.all(np.diff(weak) < 0.0)
            assert weak[-1] == pytest.approx(0.0, abs=1e-6)
            gaps = np.array([r.gap for r in results])
            assert np.all(np.diff(gaps) > 0.0)
            assert np.all(gaps[1:] > gaps[0])

    def test_strong_party_minimum_at_alpha_star(self):
        rng = np.random.default_rng(101)
        for _ in range(10):
            leg, params = random_affective_config(rng)
            grid, results, ceiling = self.grid_omegas(leg, params)
            i0_f, i0_a = within_party_influence(leg, params.beta)
            f_sum, a_sum = i0_f.sum(), i0_a.sum()
            strong_is_f = f_sum > a_sum
            strong = np.array(
                [r.omega_F if strong_is_f else r.omega_A for r in results]
            )
            astar = alpha_star(max(f_sum, a_sum), min(f_sum, a_sum), params.theta)
            step = grid[1] - grid[0]
            assert abs(grid[int(np.argmin(strong))] - astar) <= step + 1e-12


class TestAffectiveEquilibrium:
    def test_zero_alpha_reduces_to_baseline(self, sqrt_utility):
        rng = np.random.default_rng(9)
        for _ in range(10):
            leg = random_legislature(rng, cross_party=False)
            params = random_params(rng, leg.n, alpha=0.0)
            affective = solve_affective_equilibrium(leg, params, sqrt_utility)
            baseline = solve_equilibrium(leg, params, sqrt_utility)
            assert np.allclose(affective.investments, baseline.investments, atol=1e-11)
            assert np.allclose(affective.probabilities, baseline.probabilities, atol=1e-11)
            assert affective.vote_share == pytest.approx(baseline.vote_share, abs=1e-11)

    def test_vote_share_closed_form(self, sqrt_utility):
        rng = np.random.default_rng(18)
        for _ in range(25):
            leg, params = random_affective_config(rng, require_unequal=False)
            result = solve_affective_equilibrium(leg, params, sqrt_utility)
            info = modified_influence(leg, params)
            i0_f, i0_a = within_party_influence(leg, params.beta)
            at = params.alpha_tilde
            closed = (
                leg.n / 2.0
                + params.theta
                * float(info.modified.entries @ sqrt_utility.u(result.investments))
                + params.theta
                * params.sigma
                * (i0_f.sum() - i0_a.sum())
                / (1.0 - at**2 * i0_f.sum() * i0_a.sum())
            )
            assert result.vote_share == pytest.approx(closed, abs=1e-9)

    def test_investments_ignore_sigma(self, sqrt_utility):
        rng = np.random.default_rng(44)
        leg, params = random_affective_config(rng)
        reference = solve_affective_equilibrium(
            leg, replace_sigma(params, 0.0), sqrt_utility
        ).investments
        for sigma in (1.0, 5.0, 10.0):
            pinned = solve_affective_equilibrium(
                leg, replace_sigma(params, sigma), sqrt_utility
            ).investments
            assert np.array_equal(reference, pinned)

    def test_symmetric_parties_lose_from_animus(self, sqrt_utility):
        # mirror-image parties: sigma term vanishes, investment value decays
        leg = build_legislature(2, 2, [(0, 1, 1.0), (1, 0, 1.0), (2, 3, 1.0), (3, 2, 1.0)])
        params = ModelParams(theta=0.04, delta=0.25, sigma=0.0, alpha=0.0)
        ceiling = alpha_ceiling(leg, params)
        grid = np.linspace(0.0, ceiling * (1 - 1e-6), 40)
        shares = [
            solve_affective_equilibrium(leg, replace_alpha(params, a), sqrt_utility).vote_share
            for a in grid
        ]
        assert np.all(np.diff(shares) < 0.0)
        assert all(share < shares[0] for share in shares[1:])


def replace_sigma(params, sigma):
    return ModelParams(
        theta=params.theta,
        delta=params.delta,
        sigma=sigma,
        alpha=params.alpha,
        budget=params.budget,
    )


class TestDQDAlpha:
    def finite_difference(self, leg, params, utility, h=1e-5):
        up = solve_affective_equilibrium(leg, replace_alpha(params, params.alpha + h), utility)
        down = solve_affective_equilibrium(leg, replace_alpha(params, params.alpha - h), utility)
        return (up.vote_share - down.vote_share) / (2 * h)

    def test_matches_finite_difference(self, sqrt_utility):
        rng = np.random.default_rng(272)
        for _ in range(20):
            leg, params = random_affective_config(rng)
            analytic = dQ_dalpha(leg, params, sqrt_utility)
            fd = self.finite_difference(leg, params, sqrt_utility)
            assert abs(analytic - fd) <= max(1e-5 * max(abs(analytic), abs(fd)), 1e-8)

    def test_strictly_negative_near_zero(self, sqrt_utility):
        rng = np.random.default_rng(55)
        for _ in range(20):
            leg, params = random_affective_config(rng, require_unequal=False)
            near_zero = replace_alpha(params, 1e-9)
            assert dQ_dalpha(leg, near_zero, sqrt_utility) < 0.0

    def test_equal_parties_drop_sigma_term(self, sqrt_utility):
        # mirror parties: the sigma-amplification term is exactly zero
        leg = build_legislature(1, 1, [])
        base = ModelParams(theta=0.05, delta=0.3, sigma=0.0, alpha=2.0)
        loaded = ModelParams(theta=0.05, delta=0.3, sigma=7.0, alpha=2.0)
        assert dQ_dalpha(leg, base, sqrt_utility) == pytest.approx(
            dQ_dalpha(leg, loaded, sqrt_utility), abs=1e-14
        )

    def test_zero_sigma_uses_only_omega_decay(self, lopsided, sqrt_utility):
        params = ModelParams(theta=0.05, delta=0.3, sigma=0.0, alpha=1.0)
        i0_f, i0_a = within_party_influence(lopsided, params.beta)
        result = solve_affective_equilibrium(lopsided, params, sqrt_utility)
        utilities = sqrt_utility.u(result.investments)
        at = params.alpha_tilde
        denom_sq = (1 - at**2 * i0_f.sum() * i0_a.sum()) ** 2
        d_f = -2 * params.theta * i0_a.sum() * (1 + at**2 * 2 - 2 * at * 2) / denom_sq
        d_a = -2 * params.theta * i0_f.sum() * (1 + at**2 * 2 - 2 * at * 1) / denom_sq
        expected = params.theta * (
            d_f * float(i0_f @ utilities[:2]) + d_a * float(i0_a @ utilities[2:])
        )
        assert dQ_dalpha(lopsided, params, sqrt_utility) == pytest.approx(expected, rel=1e-12)


class TestPropositionFiveSigns:
    def test_sigma_derivative_sign_tracks_party_gap(self, sqrt_utility):
        rng = np.random.default_rng(808)
        for _ in range(15):
            leg, params = random_affective_config(rng)
            i0_f, i0_a = within_party_influence(leg, params.beta)
            gap_sign = np.sign(i0_f.sum() - i0_a.sum())
            ceiling = alpha_ceiling(leg, params)
            for alpha in np.linspace(0.0, ceiling * (1 - 1e-6), 25):
                assert np.sign(affective_dQ_dsigma(leg, replace_alpha(params, alpha))) == gap_sign

    def test_sigma_derivative_matches_linear_difference(self, sqrt_utility):
        rng = np.random.default_rng(6060)
        leg, params = random_affective_config(rng)
        up = solve_affective_equilibrium(leg, replace_sigma(params, 3.0), sqrt_utility)
        down = solve_affective_equilibrium(leg, replace_sigma(params, 1.0), sqrt_utility)
        slope = (up.vote_share - down.vote_share) / 2.0
        assert slope == pytest.approx(affective_dQ_dsigma(leg, params), abs=1e-11)

    def test_interaction_monotone_in_alpha(self, sqrt_utility):
        rng = np.random.default_rng(909)
        for _ in range(15):
            leg, params = random_affective_config(rng)
            i0_f, i0_a = within_party_influence(leg, params.beta)
            stronger_f = i0_f.sum() > i0_a.sum()
            ceiling = alpha_ceiling(leg, params)
            grid = np.linspace(0.0, ceiling * (1 - 1e-6), 30)
            slopes = [affective_dQ_dsigma(leg, replace_alpha(params, a)) for a in grid]
            diffs = np.diff(slopes)
            assert np.all(diffs > 0.0) if stronger_f else np.all(diffs < 0.0)


class TestPolarizationThresholds:
    def test_case_structure(self, sqrt_utility):
        stronger_f = build_legislature(2, 1, [])
        params = ModelParams(theta=0.05, delta=0.3, sigma=1.0)
        result = polarization_thresholds(stronger_f, params, sqrt_utility)
        assert result.stronger_party == "F"
        assert result.sigma_2 is not None
        assert result.sigma_1 is None and result.sigma_3 is None

        stronger_a = build_legislature(1, 2, [])
        result = polarization_thresholds(stronger_a, params, sqrt_utility)
        assert result.stronger_party == "A"
        assert result.sigma_1 is not None and result.sigma_3 is not None
        assert result.sigma_2 is None

        tied = build_legislature(2, 2, [])
        result = polarization_thresholds(tied, params, sqrt_utility)
        assert result.stronger_party is None
        assert result.sigma_1 is None and result.sigma_2 is None and result.sigma_3 is None

    def test_sigma2_bounds_high_affect_gain(self, sqrt_utility):
        # F stronger: crossing sigma_2 flips the sign of Q*(near ceiling) - Q*(0)
        leg = build_legislature(3, 2, [(0, 1, 1.0), (1, 0, 1.0), (1, 2, 1.0), (2, 1, 1.0)])
        params = ModelParams(theta=0.03, delta=0.3, sigma=1.0)
        thresholds = polarization_thresholds(leg, params, sqrt_utility)
        assert thresholds.sigma_2 is not None
        edge_alpha = thresholds.alpha_hat * (1 - 1e-6)

        def gain(sigma):
            scenario = ModelParams(theta=0.03, delta=0.3, sigma=sigma, alpha=0.0)
            base = solve_affective_equilibrium(leg, scenario, sqrt_utility).vote_share
            high = solve_affective_equilibrium(
                leg, replace_alpha(scenario, edge_alpha), sqrt_utility
            ).vote_share
            return high - base

        assert gain(thresholds.sigma_2 * 1.10) > 0.0
        assert gain(thresholds.sigma_2 * 0.90) < 0.0

    def test_sigma3_is_the_root_of_the_ceiling_gain(self, sqrt_utility):
        # A stronger: sigma_3 is where Q*(ceiling) - Q*(0) crosses zero as a
        # function of sigma.  Concentrating the budget on party A is always
        # feasible in the no-affect problem, so the investment value at the
        # ceiling sits strictly below the unconstrained optimum and sigma_3
        # is negative: no non-negative sigma makes high animus profitable.
        leg = build_legislature(2, 3, [(2, 3, 1.0), (3, 2, 1.0), (3, 4, 1.0), (4, 3, 1.0)])
        params = ModelParams(theta=0.03, delta=0.3, sigma=1.0)
        thresholds = polarization_thresholds(leg, params, sqrt_utility)
        assert thresholds.sigma_3 is not None and thresholds.sigma_3 < 0
        edge_alpha = thresholds.alpha_hat * (1 - 1e-6)

        def gain(sigma):
            scenario = ModelParams(theta=0.03, delta=0.3, sigma=sigma, alpha=0.0)
            base = solve_affective_equilibrium(leg, scenario, sqrt_utility).vote_share
            high = solve_affective_equilibrium(
                leg, replace_alpha(scenario, edge_alpha), sqrt_utility
            ).vote_share
            return high - base

        low, high = gain(0.0), gain(5.0)
        root = -low / ((high - low) / 5.0)  # gain is affine in sigma
        assert thresholds.sigma_3 == pytest.approx(root, abs=1e-3)
        assert low < 0.0 and high < low

    def test_sigma1_bounds_terminal_derivative_sign(self, sqrt_utility):
        # A stronger: dQ*/dalpha near the ceiling is positive iff sigma < sigma_1
        leg = build_legislature(2, 3, [(2, 3, 1.0), (3, 2, 1.0), (3, 4, 1.0), (4, 3, 1.0)])
        params = ModelParams(theta=0.03, delta=0.3, sigma=1.0)
        thresholds = polarization_thresholds(leg, params, sqrt_utility)
        assert thresholds.sigma_1 is not None and thresholds.sigma_1 > 0
        edge_alpha = thresholds.alpha_hat * (1 - 1e-7)

        def terminal_slope(sigma):
            scenario = ModelParams(theta=0.03, delta=0.3, sigma=sigma, alpha=edge_alpha)
            return dQ_dalpha(leg, scenario, sqrt_utility)

        assert terminal_slope(thresholds.sigma_1 * 0.90) > 0.0
        assert terminal_slope(thresholds.sigma_1 * 1.10) < 0.0
