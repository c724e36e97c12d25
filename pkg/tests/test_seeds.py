"""Seed mutation with principal coefficients: expansions, gradings, y-hat."""

from __future__ import annotations

import pytest

import clusterlab as cl


def _a2_seed() -> cl.Seed:
    return cl.principal_seed(cl.ExchangeMatrix(cl.IntMatrix(((0, 1), (-1, 0)))))


def test_initial_seed_shape():
    seed = _a2_seed()
    assert seed.n == 2
    assert seed.ambient_vars == ("x1", "x2", "y1", "y2")
    assert [p.canonical() for p in seed.cluster] == [
        cl.laurent.LaurentPoly.variable(seed.ambient_vars, "x1").canonical(),
        cl.laurent.LaurentPoly.variable(seed.ambient_vars, "x2").canonical(),
    ]
    assert all(c.exponents in ((1, 0), (0, 1)) for c in seed.coeffs)


def test_a2_first_exchange_is_hand_checked():
    # mu_1: x1' = (y1 x2 + 1) / x1 with the tropical rule dropping (y1 (+) 1)
    seed = cl.mutate_seed(_a2_seed(), 1)
    x1p = seed.cluster[0]
    assert x1p.terms == {(-1, 0, 1, 0): 1, (-1, 1, 0, 0): 1}
    assert cl.f_polynomial(seed, 1).terms == {(0, 0): 1, (1, 0): 1}
    assert cl.g_vector_from_grading(seed, 1) == (-1, 1)
    assert seed.coeffs[0].exponents == (-1, 0)


def test_a2_exchange_graph_closes_after_five_exchanges():
    # the unlabeled A2 pattern is a pentagon; clusters repeat with period 5
    seed = _a2_seed()
    clusters = {frozenset(p.canonical() for p in seed.cluster)}
    path = (1, 2, 1, 2, 1)
    for k in path:
        seed = cl.mutate_seed(seed, k)
        clusters.add(frozenset(p.canonical() for p in seed.cluster))
    assert len(clusters) == 5


def test_mutation_of_seeds_is_involutive():
    b = cl.ExchangeMatrix(cl.IntMatrix(((0, 1, 1), (-1, 0, 1), (-1, -1, 0))))
    seed = cl.mutate_seed_along(cl.principal_seed(b), (1, 2))
    for k in (1, 2, 3):
        back = cl.mutate_seed(cl.mutate_seed(seed, k), k)
        assert [p.terms for p in back.cluster] == [p.terms for p in seed.cluster]
        assert [c.exponents for c in back.coeffs] == [c.exponents for c in seed.coeffs]
        assert back.B.matrix.rows == seed.B.matrix.rows


def test_g_matrix_and_c_matrix_track_the_pattern_walk():
    b0 = cl.ExchangeMatrix(cl.IntMatrix(((0, 2), (-1, 0))))
    seed = cl.principal_seed(b0)
    node = cl.initial_node(b0)
    for k in (1, 2, 1, 2):
        seed = cl.mutate_seed(seed, k)
        node = cl.step(node, k)
        assert cl.g_matrix_of(seed).rows == node.G.rows
        assert cl.c_matrix_of(seed).rows == node.C.rows


def test_laurent_property_denominators_are_monomial():
    # every cluster variable is a Laurent polynomial in the initial x's:
    # no negative exponents appear on the y's
    b = cl.ExchangeMatrix(cl.IntMatrix(((0, 1, 0), (-1, 0, 1), (0, -1, 0))))
    seed = cl.mutate_seed_along(cl.principal_seed(b), (2, 1, 3, 2))
    n = seed.n
    for p in seed.cluster:
        for exps in p.terms:
            assert all(e >= 0 for e in exps[n:])


def test_f_polynomial_requires_principal_coefficients_and_range():
    seed = _a2_seed()
    with pytest.raises(IndexError):
        cl.f_polynomial(seed, 3)
    with pytest.raises(IndexError):
        cl.g_vector_from_grading(seed, 0)


def test_yhat_identity_single_paths():
    b = cl.ExchangeMatrix(cl.IntMatrix(((0, 1), (-1, 0))))
    assert cl.verify_yhat_identity(b, (1,))
    assert cl.verify_yhat_identity(b, (1, 2, 1))


def test_yhat_sweep_reports_depth_and_count():
    b = cl.ExchangeMatrix(cl.IntMatrix(((0, 2), (-1, 0))))
    report = cl.verify_yhat_to_depth(b, 3)
    assert report.status == "pass"
    assert report.verified_depth == 3
    # reduced paths from the root: 2 + 2 + 2, plus the root itself
    assert report.explored == 7


def test_seed_json_roundtrip():
    seed = cl.mutate_seed(_a2_seed(), 2)
    data = seed.to_json()
    back = cl.seed_from_json(data)
    assert [p.terms for p in back.cluster] == [p.terms for p in seed.cluster]
    assert [c.exponents for c in back.coeffs] == [c.exponents for c in seed.coeffs]
    assert back.B.matrix.rows == seed.B.matrix.rows
    with pytest.raises(cl.ParseError):
        cl.seed_from_json({"cluster": []})
