"""Scenario files: JSON serialization of a legislature plus parameters.

Format (UTF-8 JSON, 0-based indices, party-F block first)::

    {
      "n_F": 2, "n_A": 2,
      "edges": [[0, 1, 1.0], [0, 2, 1.0]],
      "theta": 0.03, "delta": 0.3, "sigma": 3.0, "alpha": 0.0,
      "budget": 100.0,
      "utility": {"family": "power", "gamma": 0.5},
      "added_edges": [[1, 3, 1.0]]
    }

``added_edges`` is optional and describes the comparison network for
network-change analysis.  Parsing then re-serializing is idempotent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError, NotStrongerError
from .model import (
    Legislature,
    ModelParams,
    PowerUtility,
    UtilitySpec,
    build_legislature,
    utility_from_config,
)

_REQUIRED_KEYS = ("n_F", "n_A", "theta", "delta")


@dataclass(frozen=True, eq=False)
class Scenario:
    legislature: Legislature
    params: ModelParams
    utility: UtilitySpec
    added_edges: tuple[tuple[int, int, float], ...] = ()

    @property
    def has_comparison(self) -> bool:
        return len(self.added_edges) > 0

    def comparison_legislature(self) -> Legislature:
        """Base network with the added links applied."""
        if not self.has_comparison:
            raise InputError("scenario has no added_edges to compare against")
        leg = self.legislature
        for src, dst, weight in self.added_edges:
            if leg.adjacency[src, dst] >= weight:
                raise NotStrongerError(
                    f"added edge ({src}, {dst}, {weight}) does not strengthen the network"
                )
        return build_legislature(
            leg.n_F, leg.n_A, leg.edge_list() + list(self.added_edges)
        )


def parse_scenario(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise InputError("scenario must be a JSON object")
    missing = [key for key in _REQUIRED_KEYS if key not in data]
    if missing:
        raise InputError(f"scenario missing keys: {', '.join(missing)}")
    try:
        legislature = build_legislature(
            int(data["n_F"]), int(data["n_A"]), _parse_edges(data.get("edges", []))
        )
        params = ModelParams(
            theta=float(data["theta"]),
            delta=float(data["delta"]),
            sigma=float(data.get("sigma", 0.0)),
            alpha=float(data.get("alpha", 0.0)),
            budget=float(data.get("budget", 100.0)),
        )
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed scenario: {exc}") from exc
    utility = utility_from_config(data.get("utility"))
    added = tuple(_parse_edges(data.get("added_edges", [])))
    return Scenario(
        legislature=legislature, params=params, utility=utility, added_edges=added
    )


def _parse_edges(raw) -> list[tuple[int, int, float]]:
    edges = []
    for item in raw:
        if len(item) == 2:
            src, dst = item
            weight = 1.0
        elif len(item) == 3:
            src, dst, weight = item
        else:
            raise InputError(f"edge {item!r} must be [from, to] or [from, to, weight]")
        edges.append((int(src), int(dst), float(weight)))
    return edges


def scenario_to_dict(scenario: Scenario) -> dict:
    utility = scenario.utility
    if not isinstance(utility, PowerUtility):
        raise InputError("only power utilities are serializable to scenario files")
    data = {
        "n_F": scenario.legislature.n_F,
        "n_A": scenario.legislature.n_A,
        "edges": [[src, dst, weight] for src, dst, weight in scenario.legislature.edge_list()],
        "theta": scenario.params.theta,
        "delta": scenario.params.delta,
        "sigma": scenario.params.sigma,
        "alpha": scenario.params.alpha,
        "budget": scenario.params.budget,
        "utility": {"family": "power", "gamma": utility.gamma},
    }
    if scenario.added_edges:
        data["added_edges"] = [[s, d, w] for s, d, w in scenario.added_edges]
    return data


def load_scenario(path: str | Path) -> Scenario:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"scenario file {path} is not valid JSON: {exc}") from exc
    return parse_scenario(data)


def save_scenario(scenario: Scenario, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(scenario_to_dict(scenario), indent=2) + "\n", encoding="utf-8"
    )
