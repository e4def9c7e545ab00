import pytest

from polinflux import ModelParams, PowerUtility, build_legislature

# Worked-example network: F1 and A1 are mutually susceptible and both are
# susceptible to F2; A2 starts isolated.  The comparison network adds the
# link F2 -> A2.
FIGURE1_EDGES = [(0, 1, 1.0), (0, 2, 1.0), (2, 0, 1.0), (2, 1, 1.0)]
FIGURE1_NEW_LINK = (1, 3)
EXAMPLE_THETA = 0.03
EXAMPLE_DELTA = 0.3
EXAMPLE_BUDGET = 100.0


@pytest.fixture
def figure1():
    return build_legislature(2, 2, FIGURE1_EDGES)


@pytest.fixture
def figure1_plus():
    return build_legislature(2, 2, FIGURE1_EDGES + [(1, 3, 1.0)])


@pytest.fixture
def example_params():
    return ModelParams(
        theta=EXAMPLE_THETA, delta=EXAMPLE_DELTA, sigma=3.0, budget=EXAMPLE_BUDGET
    )


@pytest.fixture
def sqrt_utility():
    return PowerUtility(gamma=0.5)


@pytest.fixture
def example_scenario_dict():
    return {
        "n_F": 2,
        "n_A": 2,
        "edges": [[i, j, w] for i, j, w in FIGURE1_EDGES],
        "theta": EXAMPLE_THETA,
        "delta": EXAMPLE_DELTA,
        "sigma": 3.0,
        "alpha": 0.0,
        "budget": EXAMPLE_BUDGET,
        "utility": {"family": "power", "gamma": 0.5},
        "added_edges": [[1, 3, 1.0]],
    }


@pytest.fixture
def empty_two_by_two():
    return build_legislature(1, 1, [])
