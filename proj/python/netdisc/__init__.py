"""Indiscernible initial states of networks of identical linear subsystems.

The network transition matrix is ``I_N (x) A - L (x) B``. Comparing it with
the matrix for a modified Laplacian ``Lbar`` tells whether the topology change
can be seen in the natural response, and from which initial states it cannot.
"""

import json

from ._core import (
    corrected_condition,
    indiscernible_subspace,
    laplacian,
    max_principal_angle,
    modal_matrix,
    network_invariant_modes,
    paper_scenario_json,
    shared_modal_subspace,
    spectrum,
    sync_manifold,
    trajectory_gap,
    transition_matrix,
)
from . import _core

__all__ = [
    "analyze",
    "analyze_scenario",
    "corrected_condition",
    "enumerate_scenario",
    "indiscernible_subspace",
    "laplacian",
    "max_principal_angle",
    "modal_matrix",
    "network_invariant_modes",
    "paper_example",
    "paper_scenario_json",
    "shared_modal_subspace",
    "spectrum",
    "sync_manifold",
    "trajectory_gap",
    "transition_matrix",
]


def analyze(A, B, L, Lbar, validate=False, seed=None, tol=1e-8):
    """Full report for the pair (L, Lbar) as a dict."""
    return json.loads(_core._analyze_json(A, B, L, Lbar, validate, seed, tol))


def _scenario_text(scenario):
    return scenario if isinstance(scenario, str) else json.dumps(scenario)


def analyze_scenario(scenario):
    """Report for a scenario given as a dict or JSON text."""
    return json.loads(_core._scenario_report_json(_scenario_text(scenario)))


def enumerate_scenario(scenario, jobs=None):
    """One row per single-link variation of the scenario's base graph."""
    return json.loads(_core._scenario_enumerate_json(_scenario_text(scenario), jobs))["rows"]


def paper_example():
    """Report for the built-in four-node counterexample (oracle validation on)."""
    return analyze_scenario(paper_scenario_json())
