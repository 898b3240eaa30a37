import cmath
import math

import numpy as np
import pytest

import circjoin
from circjoin import graphs, kuramoto


def multiset_distance(a, b):
    a, b = list(a), list(b)
    assert len(a) == len(b)
    worst = 0.0
    for x in a:
        i = min(range(len(b)), key=lambda t: abs(x - b[t]))
        worst = max(worst, abs(x - b.pop(i)))
    return worst


def k8_example():
    return circjoin.JoinSpec.uniform([circjoin.CirculantMatrix([0, 1, 0]), circjoin.CirculantMatrix([0, 1, 1, 1, 1])])


def test_circulant_layout_and_eigenvalues():
    c = circjoin.CirculantMatrix([0, 1, 0, 1])
    dense = circjoin.expand_dense(c)
    assert dense.shape == (4, 4)
    assert dense[1, 0] == 1 and dense[0, 1] == 1
    values = [v for v, _ in circjoin.circulant_eigenpairs(c)]
    assert multiset_distance(values, [2, 0, -2, 0]) < 1e-14
    assert circjoin.row_sum(c) == 2


def test_k8_minus_directed_c3_spectrum_matches_dense():
    join = k8_example()
    a = circjoin.expand_join_dense(join)
    np.testing.assert_array_equal(circjoin.condensed_matrix(join), np.array([[1, 5], [3, 4]]))
    s = circjoin.full_spectrum(join)
    assert s.diagonalizable
    assert s.dimension == 8
    assert multiset_distance(s.eigenvalue_multiset, np.linalg.eigvals(a)) < 1e-9
    w = cmath.exp(2j * math.pi / 3)
    expected = [(5 + math.sqrt(69)) / 2, (5 - math.sqrt(69)) / 2, w, w.conjugate()] + [-1] * 4
    assert multiset_distance(s.eigenvalue_multiset, expected) < 1e-9
    for value, _origin, vectors in s.chains:
        assert np.max(np.abs(a @ vectors[0] - value * vectors[0])) < 1e-9
    origins = [origin for _, _, origin in s.eigenvalues]
    assert origins.count(None) == 2
    np.testing.assert_allclose(circjoin.reduced_char_poly(join), [1, -5, -11])


def test_defective_join_has_a_chain():
    join = circjoin.JoinSpec([circjoin.CirculantMatrix([0]), circjoin.CirculantMatrix([0])], np.array([[0, 1], [0, 0]]))
    s = circjoin.full_spectrum(join)
    assert not s.diagonalizable
    assert any(len(vectors) == 2 for _, _, vectors in s.chains)
    assert abs(np.linalg.det(circjoin.eigenbasis_matrix(s))) > 0.5


def test_small_dense_helpers():
    m = np.array([[2.0, 1.0], [0.0, 2.0]])
    assert circjoin.eigenvalues(m) == [(2, 2)]
    chains = circjoin.jordan_chains(m, 2.0, 2)
    assert len(chains) == 1 and len(chains[0]) == 2


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        circjoin.CirculantMatrix([])
    with pytest.raises(ValueError):
        graphs.remove_cycle_from_complete(3, 3, True)
    assert issubclass(circjoin.ConvergenceError, ArithmeticError)


def test_graph_constructors():
    assert graphs.ring_graph(5, 1).connections == [0, 1, 0, 0, 1]
    assert graphs.complement(graphs.complete_graph(3)).connections == [0, 0, 0]
    join = graphs.join([graphs.ring_graph(5, 1), graphs.ring_graph(6, 1)])
    s = circjoin.full_spectrum(join)
    for target in (2 + math.sqrt(30), 2 - math.sqrt(30)):
        assert min(abs(v - target) for v in s.eigenvalue_multiset) < 1e-9
    closed = graphs.cycle_removal_condensed_eigenvalues(8, 3, True)
    assert sorted(closed) == pytest.approx(sorted([(5 + math.sqrt(69)) / 2, (5 - math.sqrt(69)) / 2]))


def test_kuramoto_twisted_state():
    ring = graphs.ring_graph(8, 1)
    system = kuramoto.KuramotoSystem(graphs.join([ring, ring]), 1.0)
    theta = kuramoto.build_twisted_equilibrium(system, 1, [0.0, 0.5])
    ok, residual, _ = kuramoto.check_equilibrium(system, theta)
    assert ok and residual < 1e-9
    traj = kuramoto.integrate(system, theta, 1e-2, 200)
    assert traj.shape == (201, 16)
    assert np.max(np.abs(traj - traj[0])) < 1e-6
    assert np.all(np.abs(kuramoto.reduce_phases(np.array([3 * math.pi]))) <= math.pi)
