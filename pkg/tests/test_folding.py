"""Group actions on quivers: admissibility, orbit mutation, folding."""

from __future__ import annotations

import pytest

import clusterlab as cl
from clusterlab import folding


A3_ALT = cl.IntMatrix(((0, 1, 0), (-1, 0, -1), (0, 1, 0)))  # 1 -> 2 <- 3
A3_PATH = cl.IntMatrix(((0, 1, 0), (-1, 0, 1), (0, -1, 0)))  # 1 -> 2 -> 3
TRI_CYC = cl.IntMatrix(((0, 1, -1), (-1, 0, 1), (1, -1, 0)))
PAIRED = cl.IntMatrix(
    ((0, 0, 1, -1), (0, 0, -1, 1), (-1, 1, 0, 0), (1, -1, 0, 0))
)
SWAP13 = (3, 2, 1)


def _quiver(matrix, generators, frozen=frozenset()):
    return cl.ActedQuiver(matrix, frozenset(frozen), tuple(generators))


def test_admissible_swap_on_alternating_a3():
    result = cl.check_admissible(_quiver(A3_ALT, [SWAP13]))
    assert result.admissible
    assert result.violated_condition is None


def test_orientation_reversing_swap_violates_condition_ii():
    result = cl.check_admissible(_quiver(A3_PATH, [SWAP13]))
    assert not result.admissible
    assert result.violated_condition == "ii"
    assert result.witness["vertices"] == [1, 2]
    assert result.witness["images"] == [3, 2]


def test_rotation_of_cyclic_triangle_violates_condition_iii():
    result = cl.check_admissible(_quiver(TRI_CYC, [(2, 3, 1)]))
    assert not result.admissible
    assert result.violated_condition == "iii"


def test_opposite_arrows_within_an_orbit_violate_condition_iv():
    result = cl.check_admissible(_quiver(PAIRED, [(2, 1, 4, 3)]))
    assert not result.admissible
    assert result.violated_condition == "iv"
    assert result.witness["vertices"][0] == 1


def test_moved_frozen_vertex_violates_condition_i():
    result = cl.check_admissible(_quiver(A3_ALT, [SWAP13], frozen={1}))
    assert not result.admissible
    assert result.violated_condition == "i"


def test_fold_images():
    assert cl.fold_matrix(_quiver(A3_ALT, [SWAP13])).to_lists() == [[0, 2], [-1, 0]]
    star = cl.IntMatrix(
        ((0, -1, -1, -1), (1, 0, 0, 0), (1, 0, 0, 0), (1, 0, 0, 0))
    )
    folded = cl.fold_matrix(_quiver(star, [(1, 3, 4, 2)]))
    assert folded.to_lists() == [[0, -1], [3, 0]]


def test_orbit_mutation_agrees_with_composition_of_ordinary_mutations():
    queue = [_quiver(A3_ALT, [SWAP13]), _quiver(
        cl.IntMatrix(((0, -1, -1, -1), (1, 0, 0, 0), (1, 0, 0, 0), (1, 0, 0, 0))),
        [(1, 3, 4, 2)],
    )]
    for _ in range(3):
        nxt = []
        for q in queue:
            for orbit in folding.orbits_of(q):
                closed = cl.orbit_mutate(q, orbit[0])
                composed = cl.orbit_mutate_by_composition(q, orbit[0])
                assert closed.matrix.rows == composed.rows
                nxt.append(closed)
        queue = nxt


def test_orbit_mutation_input_errors():
    q = _quiver(A3_ALT, [SWAP13], frozen={2})
    with pytest.raises(cl.UnsupportedInputError):
        cl.orbit_mutate(q, 2)
    bad = _quiver(PAIRED, [(2, 1, 4, 3)])
    with pytest.raises(cl.AdmissibilityError):
        cl.orbit_mutate(bad, 1)
    # check=False skips the admissibility gate
    cl.orbit_mutate(bad, 1, check=False)


def test_frame_doubles_the_quiver_with_identity_blocks():
    q = _quiver(A3_ALT, [SWAP13])
    framed = cl.frame(q)
    assert framed.n == 6
    assert framed.frozen == frozenset({4, 5, 6})
    rows = framed.matrix.rows
    for i in range(3):
        for j in range(3):
            assert rows[i][j] == A3_ALT.rows[i][j]
            assert rows[i][3 + j] == (-1 if i == j else 0)
            assert rows[3 + i][j] == (1 if i == j else 0)
            assert rows[3 + i][3 + j] == 0
    assert framed.generators == ((3, 2, 1, 6, 5, 4),)
    with pytest.raises(cl.UnsupportedInputError):
        cl.frame(framed)


def test_globally_foldable_verdicts():
    good = cl.verify_globally_foldable(cl.frame(_quiver(A3_ALT, [SWAP13])), 5)
    assert good.status == "pass"
    bad = cl.verify_globally_foldable(_quiver(PAIRED, [(2, 1, 4, 3)]), 2)
    assert bad.status == "fail"
    assert bad.failure["condition"] == "iv"
    assert bad.failure["path"] == []


def test_frozen_through_path_witness():
    # 3 -> 1 -> 2 with 2 and 3 frozen: composite arrows between frozen
    # vertices through a mutable one are exactly what folding must avoid
    m = cl.IntMatrix(((0, 1, -1), (-1, 0, 0), (1, 0, 0)))
    q = _quiver(m, [folding.perm_identity(3)], frozen={2, 3})
    witness = folding.frozen_path_witness(q)
    assert witness == {"source": 3, "through": 1, "target": 2}
    clean = _quiver(A3_ALT, [SWAP13])
    assert folding.frozen_path_witness(clean) is None


def test_group_closure_and_bound():
    s3 = folding.close_group([(2, 1, 3), (1, 3, 2)], 3)
    assert len(s3) == 6
    perms = {p for p, _ in s3}
    assert (3, 1, 2) in perms
    words = {p: w for p, w in s3}
    assert words[(1, 2, 3)] == ()
    with pytest.raises(cl.GroupTooLargeError):
        folding.close_group([(2, 1, 3), (1, 3, 2)], 3, bound=3)


def test_group_bound_env_parse(monkeypatch):
    monkeypatch.setenv("CLUSTERLAB_MAX_GROUP", "12")
    assert folding.group_bound() == 12
    monkeypatch.setenv("CLUSTERLAB_MAX_GROUP", "zero")
    with pytest.raises(cl.ParseError):
        folding.group_bound()
    monkeypatch.setenv("CLUSTERLAB_MAX_GROUP", "-4")
    with pytest.raises(cl.ParseError):
        folding.group_bound()


def test_acted_quiver_validation():
    with pytest.raises(cl.UnsupportedInputError):
        _quiver(cl.IntMatrix(((0, 1), (-2, 0))), [(1, 2)])  # not skew-symmetric
    with pytest.raises(cl.UnsupportedInputError):
        _quiver(A3_ALT, [(1, 2)])  # permutation length mismatch
    with pytest.raises(cl.UnsupportedInputError):
        _quiver(A3_ALT, [(1, 1, 2)])  # not a bijection
    with pytest.raises(cl.UnsupportedInputError):
        _quiver(A3_ALT, [SWAP13], frozen={4})


def test_quiver_json_roundtrip():
    q = _quiver(A3_ALT, [SWAP13], frozen={2})
    back = cl.quiver_from_json(q.to_json())
    assert back.matrix.rows == q.matrix.rows
    assert back.frozen == q.frozen
    assert back.generators == q.generators
    with pytest.raises(cl.ParseError):
        cl.quiver_from_json({"n": 2})
