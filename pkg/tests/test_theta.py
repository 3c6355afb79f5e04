import math
import random

import numpy as np
import pytest

from myctheta import (
    ConvergenceError,
    DomainError,
    complete_graph,
    complete_join,
    cycle_graph,
    empty_graph,
    extract_vector_coloring,
    mycielskian,
    optimal_edge_matrix,
    or_product,
    path_graph,
    spectral_ratio,
    theta_bar,
)
from myctheta.graphs import Graph

from conftest import random_graph


def theta_odd_cycle(n: int) -> float:
    """Closed form for odd cycles: 1 + 1/cos(pi/n)."""
    return 1.0 + 1.0 / math.cos(math.pi / n)


def test_theta_complete_graphs():
    for n in (1, 2, 3, 5, 8):
        sol = theta_bar(complete_graph(n), tol=1e-6)
        assert sol.value == pytest.approx(n, abs=1e-6)


def test_theta_c5_and_c7():
    assert theta_bar(cycle_graph(5), tol=1e-7).value == pytest.approx(
        math.sqrt(5), abs=1e-7
    )
    assert theta_bar(cycle_graph(7), tol=1e-7).value == pytest.approx(
        theta_odd_cycle(7), abs=1e-7
    )


def test_theta_edgeless_exact():
    for n in (1, 3, 6):
        sol = theta_bar(empty_graph(n))
        assert sol.value == 1.0 and sol.iterations == 0
    assert theta_bar(complete_graph(1)).value == 1.0


def test_theta_bipartite_is_two():
    assert theta_bar(path_graph(4), tol=1e-6).value == pytest.approx(2.0, abs=1e-6)


def test_theta_tol_domain():
    with pytest.raises(DomainError):
        theta_bar(cycle_graph(5), tol=1e-2)
    with pytest.raises(DomainError):
        theta_bar(cycle_graph(5), tol=1e-12)
    with pytest.raises(DomainError):
        theta_bar(Graph(0))


def test_theta_nonconvergence_carries_state():
    with pytest.raises(ConvergenceError) as err:
        theta_bar(cycle_graph(7), tol=1e-7, max_iterations=8)
    assert err.value.best_value is not None
    assert err.value.residual is not None


def test_theta_certified_on_degenerate_instance():
    # pendant vertices break strict complementarity and make the splitting
    # residuals decay sublinearly; the certified bracket must still stop
    g = Graph(9, [(0, 4), (0, 6), (1, 2), (1, 3), (1, 5), (2, 6), (2, 5),
                  (3, 4), (3, 5), (3, 8), (4, 6)])
    sol = theta_bar(g, tol=1e-4)
    assert sol.tolerance_achieved <= 1e-4 / 2 + 1e-12
    assert abs(sol.value - 3.0) <= 1e-4  # omega = chi = 3 pins theta here


def test_theta_value_is_certified():
    # the reported half-width is a rigorous error bound, so values bracketed
    # by it must contain the known optima
    for g, truth in [(cycle_graph(5), math.sqrt(5)), (complete_graph(6), 6.0)]:
        sol = theta_bar(g, tol=1e-6)
        assert abs(sol.value - truth) <= sol.tolerance_achieved + 1e-12


def test_theta_monotone_under_subgraphs():
    rng = random.Random(47)
    for _ in range(20):
        n = rng.randint(2, 8)
        big = random_graph(rng, n, 0.6)
        keep = [e for e in big.edges() if rng.random() < 0.6]
        small = Graph(n, keep)
        t_small = theta_bar(small, tol=1e-5).value
        t_big = theta_bar(big, tol=1e-5).value
        assert t_small <= t_big + 1e-4


def test_theta_join_additive():
    for g, h in [(complete_graph(2), complete_graph(3)), (cycle_graph(5), complete_graph(2))]:
        sol = theta_bar(complete_join(g, h), tol=1e-6)
        expect = theta_bar(g, tol=1e-6).value + theta_bar(h, tol=1e-6).value
        assert sol.value == pytest.approx(expect, abs=1e-3)


def test_theta_or_multiplicative():
    g, h = cycle_graph(5), complete_graph(2)
    sol = theta_bar(or_product(g, h), tol=1e-6)
    assert sol.value == pytest.approx(2 * math.sqrt(5), abs=1e-3)


def test_spectral_ratio_closed_forms():
    for n in (2, 3, 6):
        kn = complete_graph(n)
        assert spectral_ratio(kn.adjacency_matrix(), kn) == pytest.approx(n, abs=1e-12)
    c5 = cycle_graph(5)
    assert spectral_ratio(c5.adjacency_matrix(), c5) == pytest.approx(
        math.sqrt(5), abs=1e-12
    )
    k2 = complete_graph(2)
    assert spectral_ratio(np.array([[0.0, 1.0], [1.0, 0.0]]), k2) == pytest.approx(2.0)


def test_spectral_ratio_validation():
    c5 = cycle_graph(5)
    with pytest.raises(DomainError):
        spectral_ratio(np.zeros((5, 5)), c5)
    bad_support = np.zeros((5, 5))
    bad_support[0, 2] = bad_support[2, 0] = 1.0  # non-edge of C5
    with pytest.raises(DomainError):
        spectral_ratio(bad_support, c5)
    diag = np.eye(5)
    with pytest.raises(DomainError):
        spectral_ratio(diag, c5)
    asym = c5.adjacency_matrix()
    asym[0, 1] = 2.0
    with pytest.raises(DomainError):
        spectral_ratio(asym, c5)


def test_spectral_ratio_never_beats_theta():
    rng = random.Random(53)
    for _ in range(15):
        g = random_graph(rng, rng.randint(2, 7), 0.5)
        if g.m == 0:
            continue
        sol = theta_bar(g, tol=1e-6)
        adj = g.adjacency_matrix()
        # random feasible reweighting of the edges
        w = adj * (0.5 + np.random.default_rng(1).random(adj.shape))
        w = 0.5 * (w + w.T)
        assert spectral_ratio(w, g) <= sol.value + 1e-4
        assert spectral_ratio(adj, g) <= sol.value + 1e-4


def test_optimal_edge_matrix_reaches_value():
    for g in (complete_graph(2), complete_graph(4), cycle_graph(5), cycle_graph(7)):
        sol = theta_bar(g, tol=1e-7)
        t_matrix = optimal_edge_matrix(g, sol)
        ratio = spectral_ratio(t_matrix, g)
        assert ratio >= sol.value - 100 * sol.tol_requested
        assert ratio <= sol.value + 1e-4  # weak duality
    with pytest.raises(DomainError):
        optimal_edge_matrix(empty_graph(3), theta_bar(empty_graph(3)))


def test_extract_coloring_simplex():
    for n in (2, 3, 5):
        g = complete_graph(n)
        col = extract_vector_coloring(theta_bar(g, tol=1e-8), g)
        gram = col.vectors @ col.vectors.T
        target = -1.0 / (n - 1)
        off = gram[~np.eye(n, dtype=bool)]
        assert np.allclose(off, target, atol=1e-6)
        assert col.max_violation(g) < 1e-6


def test_extract_coloring_c5():
    c5 = cycle_graph(5)
    sol = theta_bar(c5, tol=1e-7)
    col = extract_vector_coloring(sol, c5)
    target = -1.0 / (math.sqrt(5) - 1.0)
    for u, v in c5.edges():
        assert float(col.vectors[u] @ col.vectors[v]) == pytest.approx(target, abs=1e-5)
    assert col.value == pytest.approx(sol.value)


def test_extract_coloring_edgeless():
    g = empty_graph(4)
    col = extract_vector_coloring(theta_bar(g), g)
    assert col.value == 1.0 and col.d == 1
    assert col.max_violation(g) == 0.0


def test_extract_requires_tight_solution():
    c5 = cycle_graph(5)
    sol = theta_bar(c5, tol=1e-4)
    if sol.tolerance_achieved > 1e-6:
        with pytest.raises(DomainError):
            extract_vector_coloring(sol, c5)


def test_solution_primal_feasibility():
    # the reported primal satisfies its affine constraints exactly and is
    # PSD up to the achieved tolerance
    for g in (cycle_graph(5), complete_graph(4), path_graph(5)):
        sol = theta_bar(g, tol=1e-6)
        x = sol.primal
        assert abs(np.trace(x) - 1.0) < 1e-12
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if not g.has_edge(u, v):
                    assert x[u, v] == 0.0
        from myctheta import eigen

        assert eigen.eigh(x)[0][0] >= -sol.tolerance_achieved


def test_solution_json():
    import json

    sol = theta_bar(cycle_graph(5), tol=1e-6)
    doc = json.loads(sol.to_json())
    assert "value" in doc and "primal" not in doc
    full = json.loads(sol.to_json(verbose=True))
    assert "primal" in full and len(full["primal"]) == 5


def test_mycielskian_theta_matches_formula():
    from myctheta import mycielski_theta_formula

    g = complete_graph(3)
    base = theta_bar(g, tol=1e-7).value
    lifted = theta_bar(mycielskian(g, 2), tol=1e-7).value
    assert lifted == pytest.approx(mycielski_theta_formula(base).m, abs=1e-5)


def test_theta_petersen():
    # vertex-transitive and self-complementary-free oracle: theta times its
    # complement value equals n, and the independence side is 4, so 10/4
    from conftest import petersen_graph

    sol = theta_bar(petersen_graph(), tol=1e-6)
    assert sol.value == pytest.approx(2.5, abs=1e-5)


def test_sandwich_omega_theta_chif_chi():
    from myctheta import chromatic_number, clique_number, fractional_chromatic

    rng = random.Random(59)
    zoo = [cycle_graph(5), cycle_graph(7), complete_graph(4), path_graph(5)]
    zoo += [random_graph(rng, rng.randint(1, 8), rng.choice([0.3, 0.5, 0.7]))
            for _ in range(16)]
    for g in zoo:
        omega = clique_number(g)
        chi = chromatic_number(g)
        assert omega.exhausted and chi.exhausted
        value = theta_bar(g, tol=1e-6).value
        chi_f = float(fractional_chromatic(g).value)
        assert omega.size <= value + 1e-6
        assert value <= chi_f + 1e-6
        assert chi_f <= chi.value + 1e-6
