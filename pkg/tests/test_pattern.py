"""Pattern walks: C/G closed forms, duality reports, eta transition maps."""

from __future__ import annotations

import random

import pytest

import clusterlab as cl
from clusterlab.matrices import mutate_matrix


A2 = cl.ExchangeMatrix(cl.IntMatrix(((0, 1), (-1, 0))))
A3 = cl.ExchangeMatrix(cl.IntMatrix(((0, 1, 0), (-1, 0, 1), (0, -1, 0))))


def test_a2_c_and_g_matrices_along_known_paths():
    node = cl.node_at(A2, (1,))
    assert node.C.to_lists() == [[-1, 1], [0, 1]]
    assert node.G.to_lists() == [[-1, 0], [1, 1]]
    node = cl.node_at(A2, (1, 2))
    assert node.G.to_lists() == [[-1, -1], [1, 0]]


def test_closed_form_step_matches_edge_recurrences():
    for b0 in (A2, A3):
        for node in cl.iter_pattern(b0, 4):
            F, C, G, bt = cl.recurrence_along(b0, node.path)
            assert C.rows == node.C.rows, node.path
            assert G.rows == node.G.rows, node.path
            assert bt.matrix.rows == node.B.matrix.rows, node.path


def test_step_rejects_bad_directions():
    node = cl.initial_node(A2)
    with pytest.raises(IndexError):
        cl.step(node, 0)
    with pytest.raises(IndexError):
        cl.step(node, 3)


def test_walk_report_summarizes_clean_walks():
    report = cl.walk_report(A2, 6)
    assert report.status == "pass"
    assert report.verified_depth == 6
    assert report.failure is None


def test_dualities_report_all_checks_pass_with_options():
    report = cl.dualities_report(A3, 4, assumption=True, dual_mutation=2)
    assert report["verified_depth"] == 4
    assert report["failure"] is None
    checks = report["checks"]
    assert checks["first_duality"] == "pass"
    assert checks["determinants"] == "pass"
    assert checks["sign_coherence"] == "pass"
    assert checks["assumption"] == "pass"
    assert checks["dual_mutation"] == "pass"
    assert report["details"]["explored"] > 0


def test_walks_refuse_matrices_that_leave_the_sign_skew_class():
    # sign-skew-symmetric at the root only; one mutation step breaks it
    bad = cl.ExchangeMatrix(cl.IntMatrix(((0, 1, -1), (-1, 0, 1), (2, -1, 0))))
    with pytest.raises(cl.SignSkewSymmetryError):
        cl.dualities_report(bad, 3)


def test_dual_mutation_report_shape():
    report = cl.check_dual_mutation(A2, 1, 4)
    assert report.name == "dual-mutation"
    assert report.status == "pass"
    assert report.verified_depth == 4
    with pytest.raises(IndexError):
        cl.check_dual_mutation(A2, 5, 2)


def test_assumption_reroot_covers_more_roots():
    plain = cl.check_assumption(A3, 3, reroot=False)
    rerooted = cl.check_assumption(A3, 3)
    assert plain.status == rerooted.status == "pass"
    assert rerooted.details["roots"] > plain.details["roots"]


def test_initial_gvector_change_on_a2():
    assert cl.change_initial_gvector(A2, 1, (-1, 1)) == (1, 0)
    assert cl.change_initial_gvector(A2, 1, (1, 0)) == (-1, 0)
    assert cl.change_initial_gvector(A2, 1, (-1, -1)) == (1, -2)


def test_eta_agrees_with_initial_gvector_change_everywhere():
    rng = random.Random(21)
    for b0 in (A2, A3):
        for k in range(1, b0.n + 1):
            for _ in range(200):
                g = tuple(rng.randint(-10, 10) for _ in range(b0.n))
                assert tuple(cl.eta_map(b0, k, g)) == cl.change_initial_gvector(
                    b0, k, g
                )


def test_eta_along_composes_single_edges():
    rng = random.Random(22)
    for _ in range(50):
        path = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 4)))
        w = tuple(rng.randint(-8, 8) for _ in range(3))
        image = list(w)
        b = A3
        for k in path:
            image = cl.eta_map(b, k, image)
            b = cl.ExchangeMatrix(mutate_matrix(b, k))
        assert tuple(cl.eta_along(A3, path, w)) == tuple(image)


def test_sign_equivalence_of_vectors_along_walks():
    assert cl.sign_equivalent(A2, (1, 0), (2, 0), 4)
    assert not cl.sign_equivalent(A2, (1, 0), (-1, 0), 4)


def test_path_between_geodesics():
    assert cl.path_between((1, 2), (1, 3)) == (2, 3)
    assert cl.path_between((), (1, 2)) == (1, 2)
    assert cl.path_between((2, 1), ()) == (1, 2)
    assert cl.path_between((1, 2), (1, 2)) == ()
