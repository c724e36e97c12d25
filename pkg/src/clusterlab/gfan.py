"""G-vector cones, the piecewise-linear transition maps, and fan checks.

All geometry here is exact: memberships solve integer/rational systems with
Fraction arithmetic, intersections are computed on the face lattice of
simplicial cones, and no floating point appears anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import DimensionError, ParseError
from .matrices import ExchangeMatrix, IntMatrix, mutate_matrix
from .pattern import PatternNode, initial_node, step

Vector = Tuple


def eta_map(b0: ExchangeMatrix, k: int, w: Sequence) -> Vector:
    """Initial-seed-change map across the edge at direction k.

    Linear on each side of the hyperplane w_k = 0; the two branch matrices
    agree there, so the map is well defined and positively homogeneous.
    """
    rows = b0.matrix.rows
    n = b0.n
    if not 1 <= k <= n:
        raise IndexError(f"direction {k} out of range 1..{n}")
    if len(w) != n:
        raise DimensionError("vector length mismatch")
    k0 = k - 1
    wk = w[k0]
    sgn = 1 if wk >= 0 else -1
    out = []
    for j in range(n):
        if j == k0:
            out.append(-wk)
        else:
            out.append(w[j] + max(sgn * rows[j][k0], 0) * wk)
    return tuple(out)


def eta_inverse_check(b0: ExchangeMatrix, k: int, w: Sequence) -> bool:
    """The map for the mutated initial matrix undoes the original map."""
    b1 = ExchangeMatrix(mutate_matrix(b0, k))
    there = eta_map(b0, k, w)
    back = eta_map(b1, k, there)
    return all(a == b for a, b in zip(back, w))


def eta_along(b0: ExchangeMatrix, path: Sequence[int], w: Sequence) -> Vector:
    """Compose the edge maps along a path from the initial vertex."""
    cur_b = b0
    for k in path:
        w = eta_map(cur_b, k, w)
        cur_b = ExchangeMatrix(mutate_matrix(cur_b, k))
    return tuple(w)


def sign_vector(w: Sequence) -> Tuple[int, ...]:
    return tuple((v > 0) - (v < 0) for v in w)


def sign_equivalent(
    b0: ExchangeMatrix, w: Sequence, w2: Sequence, depth: int
) -> bool:
    """True iff the images of w and w2 have equal sign vectors at every
    vertex within the given depth (including the initial vertex)."""
    from collections import deque

    n = b0.n
    queue = deque([(b0, tuple(w), tuple(w2), 0, 0)])
    while queue:
        b, u, u2, level, last = queue.popleft()
        if sign_vector(u) != sign_vector(u2):
            return False
        if level == depth:
            continue
        for k in range(1, n + 1):
            if k == last:
                continue
            queue.append(
                (
                    ExchangeMatrix(mutate_matrix(b, k)),
                    eta_map(b, k, u),
                    eta_map(b, k, u2),
                    level + 1,
                    k,
                )
            )
    return True


# ---- exact linear algebra helpers ----


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _lcm(a: int, b: int) -> int:
    return abs(a * b) // _gcd(a, b) if a and b else 0


def primitive(vec: Sequence) -> Tuple[int, ...]:
    """Scale a rational vector to coprime integers, preserving direction."""
    fracs = [Fraction(v) for v in vec]
    denom = 1
    for f in fracs:
        denom = _lcm(denom, f.denominator) or f.denominator
    ints = [int(f * denom) for f in fracs]
    g = 0
    for v in ints:
        g = _gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


def invert_exact(rows: Sequence[Sequence[int]]) -> List[Tuple[Fraction, ...]]:
    """Inverse of a square integer matrix by Gauss-Jordan over Fractions."""
    n = len(rows)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise DimensionError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [tuple(row[n:]) for row in a]


def _kernel_vector(rows: List[Tuple[int, ...]], n: int) -> Optional[Tuple[int, ...]]:
    """Primitive spanning vector of the kernel if it is 1-dimensional."""
    a = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pv = a[r][col]
        a[r] = [v / pv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        return None
    fc = free[0]
    vec = [Fraction(0)] * n
    vec[fc] = Fraction(1)
    for row_idx, col in enumerate(pivots):
        vec[col] = -a[row_idx][fc]
    return primitive(vec)


# ---- cones ----


class SimplicialCone:
    """Nonnegative span of n linearly independent integer generators."""

    __slots__ = ("generators", "_inverse")

    def __init__(self, generators: Iterable[Sequence[int]]):
        gens = tuple(tuple(int(v) for v in g) for g in generators)
        n = len(gens)
        if any(len(g) != n for g in gens):
            raise DimensionError("need n generators of length n")
        cols = IntMatrix(tuple(zip(*gens)) if gens else ())
        if cols.det() == 0:
            raise DimensionError("generators are linearly dependent")
        self.generators = gens
        # inverse of the generator matrix; coordinates of v are inverse @ v
        self._inverse = invert_exact(cols.rows)

    @property
    def dim(self) -> int:
        return len(self.generators)

    def coordinates(self, v: Sequence) -> Tuple[Fraction, ...]:
        if len(v) != self.dim:
            raise DimensionError("vector length mismatch")
        return tuple(
            sum(a * b for a, b in zip(row, v)) for row in self._inverse
        )

    def contains(self, v: Sequence) -> bool:
        return all(c >= 0 for c in self.coordinates(v))

    def contains_interior(self, v: Sequence) -> bool:
        return all(c > 0 for c in self.coordinates(v))

    def ray_set(self) -> frozenset:
        return frozenset(primitive(g) for g in self.generators)

    def constraint_rows(self) -> List[Tuple[int, ...]]:
        """Integer inequality rows A with cone = {x : A x >= 0}."""
        out = []
        for row in self._inverse:
            denom = 1
            for f in row:
                denom = _lcm(denom, f.denominator) or f.denominator
            out.append(primitive([f * denom for f in row]))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialCone) and self.ray_set() == other.ray_set()

    def __hash__(self) -> int:
        return hash(self.ray_set())

    def __repr__(self) -> str:
        return f"SimplicialCone({[list(g) for g in self.generators]})"


def cone_of(g: IntMatrix) -> SimplicialCone:
    """The cone spanned by a G-matrix's columns; requires |det| = 1."""
    if abs(g.det()) != 1:
        raise DimensionError(f"G-matrix is not unimodular: det {g.det()}")
    return SimplicialCone(tuple(zip(*g.rows)))


def intersection_rays(c1: SimplicialCone, c2: SimplicialCone) -> frozenset:
    """Extreme rays (as primitive integer vectors) of the intersection.

    Candidate rays come from (n-1)-subsets of the combined facet normals
    having a 1-dimensional kernel; each candidate survives in whichever
    orientation satisfies all the inequalities. Exact and exhaustive for
    pointed simplicial input at these dimensions.
    """
    n = c1.dim
    if n != c2.dim:
        raise DimensionError("mixed dimensions")
    a_rows = c1.constraint_rows() + c2.constraint_rows()
    rays = set()
    if n == 1:
        candidates = [(1,)]
    else:
        candidates = []
        for subset in combinations(range(len(a_rows)), n - 1):
            v = _kernel_vector([a_rows[i] for i in subset], n)
            if v is not None:
                candidates.append(v)
    for v in candidates:
        for cand in (v, tuple(-x for x in v)):
            if all(sum(a * b for a, b in zip(row, cand)) >= 0 for row in a_rows):
                rays.add(primitive(cand))
    return frozenset(rays)


def is_common_face(c1: SimplicialCone, c2: SimplicialCone) -> bool:
    """The intersection must be a face of each cone, i.e. spanned by a
    subset of each cone's own generator rays."""
    rays = intersection_rays(c1, c2)
    r1, r2 = c1.ray_set(), c2.ray_set()
    if not (rays <= r1 and rays <= r2):
        return False
    # generators lying in the other cone are exactly the intersection rays
    f1 = {g for g in r1 if c2.contains(g)}
    f2 = {g for g in r2 if c1.contains(g)}
    return rays == f1 == f2


@dataclass(frozen=True)
class FanReport:
    cone_count: int
    face_check_failures: Tuple[Tuple[int, int], ...] = ()
    complete: Optional[bool] = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.face_check_failures and self.complete is not False

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "cone_count": self.cone_count,
            "face_check_failures": [list(p) for p in self.face_check_failures],
            "complete": self.complete,
            "details": self.details,
        }


def check_fan(
    cones: Sequence[SimplicialCone],
    samples: int = 0,
    rng_seed: int = 0,
    coordinate_bound: int = 1000,
) -> FanReport:
    """Pairwise face-to-face test, plus an optional covering test.

    With samples > 0, draws that many random rational points and requires
    each to lie in at least one closed cone and in at most one unless it
    sits on the boundary of every cone containing it.
    """
    if samples < 0:
        raise ParseError(f"samples must be non-negative, got {samples}")
    failures = []
    for i, j in combinations(range(len(cones)), 2):
        if not is_common_face(cones[i], cones[j]):
            failures.append((i, j))
    complete: Optional[bool] = None
    holes = overlaps = 0
    if samples > 0 and cones:
        n = cones[0].dim
        rng = random.Random(rng_seed)
        complete = True
        for _ in range(samples):
            denom = rng.randint(1, 7)
            point = tuple(
                Fraction(rng.randint(-coordinate_bound, coordinate_bound), denom)
                for _ in range(n)
            )
            containing = [c for c in cones if c.contains(point)]
            if not containing:
                complete = False
                holes += 1
            elif len(containing) > 1:
                if any(c.contains_interior(point) for c in containing):
                    complete = False
                    overlaps += 1
    return FanReport(
        cone_count=len(cones),
        face_check_failures=tuple(failures),
        complete=complete,
        details=(
            {"samples": samples, "holes": holes, "overlaps": overlaps}
            if samples > 0
            else {}
        ),
    )


def enumerate_gfan(
    b0: ExchangeMatrix,
    depth: Optional[int] = None,
    max_cones: int = 100000,
):
    """Distinct maximal G-cones discovered by walking the pattern.

    Walk states are deduplicated by the (B, C, G) triple, which closes on
    finite type; otherwise the depth bound stops the walk and the result is
    flagged truncated. Returns (cones, pattern_nodes, truncated).
    """
    from collections import deque

    seen_states = set()
    cones: List[SimplicialCone] = []
    cone_keys = set()
    nodes: List[PatternNode] = []
    truncated = False
    root = initial_node(b0)
    queue = deque([root])
    seen_states.add((root.B.matrix.rows, root.C.rows, root.G.rows))
    while queue:
        node = queue.popleft()
        nodes.append(node)
        cone = cone_of(node.G)
        key = cone.ray_set()
        if key not in cone_keys:
            cone_keys.add(key)
            cones.append(cone)
            if len(cones) >= max_cones:
                truncated = True
                break
        last = node.path[-1] if node.path else 0
        at_limit = depth is not None and len(node.path) >= depth
        for k in range(1, b0.n + 1):
            if k == last:
                continue
            child = step(node, k)
            state = (child.B.matrix.rows, child.C.rows, child.G.rows)
            if state not in seen_states:
                if at_limit:
                    # an unexplored state sits just past the depth bound
                    truncated = True
                    continue
                seen_states.add(state)
                queue.append(child)
    return cones, nodes, truncated
