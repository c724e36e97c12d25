"""G-vector cones and fan checks with exact rational sampling."""

from __future__ import annotations

import pytest

import clusterlab as cl


def _fan(rows, **kwargs):
    b = cl.ExchangeMatrix(cl.IntMatrix(rows))
    return cl.enumerate_gfan(b, **kwargs)


def test_a2_fan_rays_and_count():
    cones, nodes, truncated = _fan(((0, 1), (-1, 0)))
    assert not truncated
    assert len(cones) == 5
    rays = set()
    for cone in cones:
        rays |= cone.ray_set()
    assert rays == {(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)}


def test_rank2_cone_counts_match_exchange_graph_sizes():
    for rows in (((0, 1), (-1, 0)), ((0, 2), (-1, 0)), ((0, 3), (-1, 0))):
        cones, _, truncated = _fan(rows)
        assert not truncated
        graph = cl.explore(cl.ExchangeMatrix(cl.IntMatrix(rows)))
        assert len(cones) == graph.node_count


def test_a3_fan_is_complete():
    cones, _, truncated = _fan(((0, 1, 0), (-1, 0, 1), (0, -1, 0)))
    assert not truncated
    assert len(cones) == 14
    report = cl.check_fan(cones, samples=2000, rng_seed=5)
    assert report.ok and report.complete
    assert report.details["holes"] == 0
    assert report.details["overlaps"] == 0


def test_removing_a_cone_is_detected_by_sampling():
    cones, _, _ = _fan(((0, 1), (-1, 0)))
    report = cl.check_fan(cones[:-1], samples=2000, rng_seed=5)
    assert not report.complete
    assert report.details["holes"] > 0
    assert not report.ok


def test_overlapping_cones_fail_the_face_check():
    wide = cl.cone_of(cl.IntMatrix(((1, 0), (0, 1))))
    tilted = cl.cone_of(cl.IntMatrix(((1, -1), (0, 1))))
    report = cl.check_fan([wide, tilted], samples=500, rng_seed=5)
    assert not report.ok
    assert report.face_check_failures or report.details["overlaps"] > 0


def test_cone_membership_predicates():
    cone = cl.cone_of(cl.IntMatrix(((1, 0), (0, 1))))
    assert cone.contains((3, 2))
    assert cone.contains((0, 5))
    assert not cone.contains((-1, 2))
    assert cone.contains_interior((1, 1))
    assert not cone.contains_interior((0, 1))
    assert cone.dim == 2


def test_enumeration_truncates_at_cone_budget():
    cones, _, truncated = _fan(
        ((0, 1, 1), (-2, 0, 1), (-1, -1, 0)), depth=6, max_cones=10
    )
    assert truncated
    assert len(cones) >= 10


def test_sampling_rejects_negative_parameters():
    cones, _, _ = _fan(((0, 1), (-1, 0)))
    with pytest.raises(cl.ParseError):
        cl.check_fan(cones, samples=-1)
