import json

import numpy as np
import pytest

import netdisc

A = np.array([[7.0, 0, 0], [0, 0, 1], [1, 0, 1]])
B = np.array([[1.0, 1, -1], [0, -1, 1], [0, 0, 0]])
EDGES = [(1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0), (3, 4, 1.0)]
EDGES_BAR = [(1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0)]


@pytest.fixture(scope="module")
def laplacians():
    return netdisc.laplacian(4, EDGES), netdisc.laplacian(4, EDGES_BAR)


def test_laplacian_matches_printed_matrix(laplacians):
    L, _ = laplacians
    expected = np.array([[2, -1, -1, 0], [-1, 2, -1, 0], [-1, -1, 3, -1], [0, 0, -1, 1]])
    np.testing.assert_array_equal(L, expected)


def test_spectrum_of_laplacian(laplacians):
    L, _ = laplacians
    values = [v.real for v, mult, _ in netdisc.spectrum(L)]
    np.testing.assert_allclose(values, [0, 1, 3, 4], atol=1e-12)


def test_transition_matrix_against_numpy_kron(laplacians):
    L, _ = laplacians
    phi = netdisc.transition_matrix(A, B, L)
    np.testing.assert_allclose(phi, np.kron(np.eye(4), A) - np.kron(L, B))


def test_invariant_mode():
    modes = netdisc.network_invariant_modes(A, B)
    assert len(modes) == 1
    value, vector = modes[0]
    assert abs(value - 1) < 1e-12
    np.testing.assert_allclose(vector, np.array([0, 1, 1]) / np.sqrt(2), atol=1e-12)


def test_indiscernible_subspace_both_methods(laplacians):
    L, Lbar = laplacians
    phi = netdisc.transition_matrix(A, B, L)
    phibar = netdisc.transition_matrix(A, B, Lbar)
    kernel = netdisc.indiscernible_subspace(phi, phibar)
    wong = netdisc.indiscernible_subspace(phi, phibar, method="wong")
    assert kernel.shape == (12, 6)
    assert netdisc.max_principal_angle(kernel, wong) < 1e-7
    # Independent check with numpy: every basis vector has matching powers.
    for k in range(4):
        pk = np.linalg.matrix_power(phi, k)
        pbk = np.linalg.matrix_power(phibar, k)
        assert np.linalg.norm((pk - pbk) @ kernel) < 1e-8 * max(1.0, np.linalg.norm(phi, 2)) ** k
    with pytest.raises(ValueError):
        netdisc.indiscernible_subspace(phi, phibar, method="other")


def test_oracle_gap(laplacians):
    L, Lbar = laplacians
    phi = netdisc.transition_matrix(A, B, L)
    phibar = netdisc.transition_matrix(A, B, Lbar)
    shared = np.kron(np.ones(4), [0, 1, 1]).astype(complex)
    assert netdisc.trajectory_gap(phi, phibar, shared) <= 1e-9
    assert netdisc.trajectory_gap(phi, phibar, np.eye(12)[0].astype(complex)) > 0.1


def test_corrected_condition(laplacians):
    L, Lbar = laplacians
    verdict = netdisc.corrected_condition(A, B, L, Lbar)
    assert not verdict["holds"]
    assert verdict["reading"] == "union-spectra reading"

    diag = np.diag([1.0, 10.0])
    P2 = netdisc.laplacian(2, [(1, 2, 1.0)])
    P2half = netdisc.laplacian(2, [(1, 2, 0.5)])
    assert netdisc.corrected_condition(diag, np.eye(2), P2, P2half)["holds"]


def test_analyze_report(laplacians):
    L, Lbar = laplacians
    report = netdisc.analyze(A, B, L, Lbar)
    assert report["indiscernible_dim"] == 6
    assert report["extra_dim"] == 3
    assert report["verdict"] == "extra indiscernible states present"
    assert report["oracle"] is None


def test_paper_example():
    report = netdisc.paper_example()
    assert report["indiscernible_dim"] == 6
    assert report["oracle"]["passed"]
    multiplicity = {round(e["value"][0], 6): e["multiplicity"] for e in report["spectra"]["phi"]}
    assert multiplicity[1.0] == 4


def test_enumerate_scenario():
    scenario = json.loads(netdisc.paper_scenario_json())
    scenario["variation"] = {"enumerate": {"kinds": ["remove_edge"]}}
    scenario["options"]["validate"] = False
    rows = netdisc.enumerate_scenario(scenario, jobs=2)
    assert [r["variation"] for r in rows] == [
        "remove_edge(1,2)", "remove_edge(1,3)", "remove_edge(2,3)", "remove_edge(3,4)"]
    assert rows[1]["indiscernible_dim"] == 6


def test_input_errors_raise_value_error():
    with pytest.raises(ValueError):
        netdisc.laplacian(3, [(1, 1, 1.0)])
    with pytest.raises(ValueError):
        netdisc.analyze_scenario("{not json")
