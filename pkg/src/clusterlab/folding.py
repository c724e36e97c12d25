"""Quivers with finite group actions: admissibility, orbit mutation, folding.

A quiver is a skew-symmetric integer matrix (arrows i->j counted by positive
entries) with an optional frozen vertex set; the group acts by permutations
given as generators in one-line notation, 1-based. Groups are closed
explicitly, with a configurable element bound, because every admissibility
condition quantifies over all group elements, not just generators.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    AdmissibilityError,
    GroupTooLargeError,
    ParseError,
    UnsupportedInputError,
)
from .matrices import IntMatrix, is_skew_symmetric, is_sign_skew_symmetric, matrix_from_json
from .reports import CheckReport

Perm = Tuple[int, ...]

DEFAULT_GROUP_BOUND = 10000


def group_bound() -> int:
    """Group-closure element bound, overridable via CLUSTERLAB_MAX_GROUP."""
    raw = os.environ.get("CLUSTERLAB_MAX_GROUP")
    if raw is None:
        return DEFAULT_GROUP_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"CLUSTERLAB_MAX_GROUP is not an integer: {raw!r}") from None
    if value <= 0:
        raise ParseError("CLUSTERLAB_MAX_GROUP must be positive")
    return value


def perm_identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def perm_compose(p: Perm, q: Perm) -> Perm:
    """(p o q)(i) = p(q(i))."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def close_group(
    generators: Sequence[Perm], n: int, bound: Optional[int] = None
) -> List[Tuple[Perm, Tuple[int, ...]]]:
    """All group elements with a generator word for each, breadth-first.

    Words are tuples of 1-based generator indices, shortest first; the
    identity carries the empty word.
    """
    if bound is None:
        bound = group_bound()
    ident = perm_identity(n)
    elements: Dict[Perm, Tuple[int, ...]] = {ident: ()}
    queue = deque([ident])
    while queue:
        cur = queue.popleft()
        word = elements[cur]
        for gi, gen in enumerate(generators, start=1):
            nxt = perm_compose(gen, cur)
            if nxt not in elements:
                if len(elements) >= bound:
                    raise GroupTooLargeError(
                        f"group closure exceeded {bound} elements"
                    )
                elements[nxt] = (gi,) + word
                queue.append(nxt)
    return list(elements.items())


@dataclass(frozen=True)
class ActedQuiver:
    """Skew-symmetric quiver matrix + frozen set + permutation generators.

    The constructor enforces the structural facts (skew-symmetry, valid
    permutations, frozen indices in range). Whether the action is actually
    admissible is a separate check so that violations can be reported with
    witnesses instead of failing construction.
    """

    matrix: IntMatrix
    frozen: frozenset
    generators: Tuple[Perm, ...]

    def __post_init__(self):
        if not self.matrix.is_square():
            raise UnsupportedInputError("quiver matrix must be square")
        if not is_skew_symmetric(self.matrix):
            raise UnsupportedInputError(
                "quiver matrix must be skew-symmetric (no loops or 2-cycles)"
            )
        n = self.matrix.nrows
        for v in self.frozen:
            if not 1 <= v <= n:
                raise UnsupportedInputError(f"frozen vertex {v} out of range 1..{n}")
        for p in self.generators:
            if sorted(p) != list(range(1, n + 1)):
                raise UnsupportedInputError(f"not a permutation of 1..{n}: {p}")

    @property
    def n(self) -> int:
        return self.matrix.nrows

    def mutable(self) -> List[int]:
        return [i for i in range(1, self.n + 1) if i not in self.frozen]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "matrix": self.matrix.to_lists(),
            "frozen": sorted(self.frozen),
            "action_generators": [list(p) for p in self.generators],
        }


def quiver_from_json(data) -> ActedQuiver:
    if not isinstance(data, dict) or "matrix" not in data:
        raise ParseError("quiver JSON must be an object with a 'matrix'")
    matrix = matrix_from_json({"n": data.get("n"), "rows": data["matrix"]}
                              if "n" in data else {"rows": data["matrix"]})
    frozen = frozenset(int(v) for v in data.get("frozen", []))
    gens = tuple(tuple(int(i) for i in p) for p in data.get("action_generators", []))
    try:
        return ActedQuiver(matrix, frozen, gens)
    except UnsupportedInputError as exc:
        raise ParseError(str(exc)) from None


@dataclass(frozen=True)
class AdmissibilityResult:
    admissible: bool
    violated_condition: Optional[str] = None  # "i" | "ii" | "iii" | "iv"
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "admissible": self.admissible,
            "violated_condition": self.violated_condition,
            "witness": self.witness,
        }


def check_admissible(q: ActedQuiver, bound: Optional[int] = None) -> AdmissibilityResult:
    """Check the four admissibility conditions over the full closed group.

    (i) vertices keep their mutable/frozen status; (ii) the action preserves
    the matrix; (iii) no arrows inside an orbit of a mutable vertex;
    (iv) arrows from i and g(i) into a mutable j never point oppositely.
    Returns the first violation in condition order with a witness naming the
    group element as a generator word.
    """
    group = close_group(q.generators, q.n, bound)
    rows = q.matrix.rows
    n = q.n
    mutable = [i not in q.frozen for i in range(1, n + 1)]

    for g, word in group:
        for i in range(1, n + 1):
            if mutable[i - 1] != mutable[g[i - 1] - 1]:
                return AdmissibilityResult(False, "i", {
                    "vertices": [i], "image": g[i - 1], "generator_word": list(word),
                })
    for g, word in group:
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if rows[i - 1][j - 1] != rows[g[i - 1] - 1][g[j - 1] - 1]:
                    return AdmissibilityResult(False, "ii", {
                        "vertices": [i, j],
                        "images": [g[i - 1], g[j - 1]],
                        "generator_word": list(word),
                    })
    for g, word in group:
        for i in range(1, n + 1):
            if mutable[i - 1] and rows[i - 1][g[i - 1] - 1] != 0:
                return AdmissibilityResult(False, "iii", {
                    "vertices": [i], "image": g[i - 1], "generator_word": list(word),
                })
    for g, word in group:
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if not mutable[j - 1]:
                    continue
                if rows[i - 1][j - 1] * rows[g[i - 1] - 1][j - 1] < 0:
                    return AdmissibilityResult(False, "iv", {
                        "vertices": [i, j],
                        "image": g[i - 1],
                        "generator_word": list(word),
                    })
    return AdmissibilityResult(True)


def orbits_of(q: ActedQuiver) -> List[Tuple[int, ...]]:
    """Vertex orbits under the generated group, sorted by least element."""
    n = q.n
    seen = set()
    orbits = []
    for start in range(1, n + 1):
        if start in seen:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for p in q.generators:
                w = p[v - 1]
                if w not in orbit:
                    orbit.add(w)
                    frontier.append(w)
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))
    orbits.sort(key=lambda o: o[0])
    return orbits


def orbit_of(q: ActedQuiver, k: int) -> Tuple[int, ...]:
    for orbit in orbits_of(q):
        if k in orbit:
            return orbit
    raise IndexError(f"vertex {k} out of range 1..{q.n}")


def orbit_mutate(q: ActedQuiver, k: int, check: bool = True) -> ActedQuiver:
    """Simultaneous mutation at the whole orbit of a mutable vertex.

    Uses the closed-form rule; equals the composition of ordinary mutations
    over the orbit, which commute because orbit members are not connected
    to each other (condition iii).
    """
    if k in q.frozen:
        raise UnsupportedInputError(f"vertex {k} is frozen")
    if check:
        res = check_admissible(q)
        if not res.admissible:
            raise AdmissibilityError(
                f"quiver is not admissible (condition {res.violated_condition}): "
                f"{res.witness}"
            )
    orbit = set(orbit_of(q, k))
    rows = q.matrix.rows
    n = q.n
    out = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i in orbit or j in orbit:
                row.append(-rows[i - 1][j - 1])
            else:
                acc = rows[i - 1][j - 1]
                for p in orbit:
                    bip = rows[i - 1][p - 1]
                    bpj = rows[p - 1][j - 1]
                    num = abs(bip) * bpj + bip * abs(bpj)
                    # each summand is 2*b_ip*b_pj or 0; always even
                    acc += num // 2
                row.append(acc)
        out.append(tuple(row))
    return ActedQuiver(IntMatrix(out), q.frozen, q.generators)


def orbit_mutate_by_composition(q: ActedQuiver, k: int) -> IntMatrix:
    """Ordinary matrix mutation at each orbit vertex in turn; the
    independent oracle for the closed-form rule."""
    from .matrices import mutate_matrix

    m = q.matrix
    for v in orbit_of(q, k):
        m = mutate_matrix(m, v)
    return m


def orbit_index(q: ActedQuiver) -> List[Tuple[int, ...]]:
    """Orbit order used by fold_matrix: sorted by least vertex."""
    return orbits_of(q)


def fold_matrix(q: ActedQuiver, check: bool = True) -> IntMatrix:
    """Matrix indexed by vertex orbits: entry ([i],[j]) sums the arrows from
    the whole orbit of i into one representative of [j]."""
    if check:
        res = check_admissible(q)
        if not res.admissible:
            raise AdmissibilityError(
                f"quiver is not admissible (condition {res.violated_condition}): "
                f"{res.witness}"
            )
    orbits = orbit_index(q)
    rows = q.matrix.rows
    out = []
    for oi in orbits:
        row = []
        for oj in orbits:
            rep = oj[0]
            row.append(sum(rows[i - 1][rep - 1] for i in oi))
        out.append(tuple(row))
    folded = IntMatrix(out)
    if not is_sign_skew_symmetric(folded):
        raise AdmissibilityError(
            "folded matrix is not sign-skew-symmetric; admissibility check missed"
        )
    return folded


def frame(q: ActedQuiver) -> ActedQuiver:
    """Add one frozen copy i' per vertex with a single arrow i' -> i, and
    extend every generator by g(i') := g(i)'."""
    if q.frozen:
        raise UnsupportedInputError("framing requires a quiver with no frozen vertices")
    n = q.n
    rows = q.matrix.rows
    out = []
    for i in range(n):
        out.append(tuple(rows[i]) + tuple(-int(i == j) for j in range(n)))
    for i in range(n):
        out.append(tuple(int(i == j) for j in range(n)) + (0,) * n)
    gens = tuple(
        tuple(p) + tuple(p[i] + n for i in range(n)) for p in q.generators
    )
    return ActedQuiver(IntMatrix(out), frozenset(range(n + 1, 2 * n + 1)), gens)


def frozen_path_witness(q: ActedQuiver) -> Optional[dict]:
    """A pattern i' -> k -> j' (frozen to frozen through a mutable vertex),
    or None; framed quivers must never develop one under orbit mutation."""
    rows = q.matrix.rows
    frozen = sorted(q.frozen)
    for k in q.mutable():
        sources = [ip for ip in frozen if rows[ip - 1][k - 1] > 0]
        if not sources:
            continue
        targets = [jp for jp in frozen if rows[k - 1][jp - 1] > 0]
        if targets:
            return {"source": sources[0], "through": k, "target": targets[0]}
    return None


def cpart_equivariance_witness(
    q: ActedQuiver, bound: Optional[int] = None
) -> Optional[dict]:
    """Violation of c'_{g(i')g(j)} = c'_{i'j} on the frozen-row block, or None.

    This is a consequence of condition (ii) restricted to frozen rows and
    mutable columns; it is asserted separately because the folded bottom
    block is exactly the C-matrix data of the walk.
    """
    group = close_group(q.generators, q.n, bound)
    rows = q.matrix.rows
    mutable = set(q.mutable())
    for g, word in group:
        for ip in sorted(q.frozen):
            for j in sorted(mutable):
                if rows[ip - 1][j - 1] != rows[g[ip - 1] - 1][g[j - 1] - 1]:
                    return {
                        "frozen_vertex": ip,
                        "mutable_vertex": j,
                        "generator_word": list(word),
                    }
    return None


def verify_globally_foldable(
    q: ActedQuiver, depth: int, bound: Optional[int] = None
) -> CheckReport:
    """BFS over orbit-mutation sequences to the given depth, requiring
    admissibility at every node; on quivers with frozen vertices also scans
    for frozen-through-paths and checks the frozen-block equivariance."""
    has_frozen = bool(q.frozen)
    seen = {q.matrix.rows}
    queue = deque([(q, ())])
    explored = 0
    while queue:
        node, path = queue.popleft()
        explored += 1
        res = check_admissible(node, bound)
        if not res.admissible:
            return CheckReport(
                "globally-foldable", "fail", max(len(path) - 1, 0), explored,
                {"path": list(path), "condition": res.violated_condition,
                 "witness": res.witness},
            )
        if has_frozen:
            w = frozen_path_witness(node)
            if w is not None:
                return CheckReport(
                    "globally-foldable", "fail", max(len(path) - 1, 0), explored,
                    {"path": list(path), "condition": "frozen-through-path",
                     "witness": w},
                )
            w = cpart_equivariance_witness(node, bound)
            if w is not None:
                return CheckReport(
                    "globally-foldable", "fail", max(len(path) - 1, 0), explored,
                    {"path": list(path), "condition": "cpart-equivariance",
                     "witness": w},
                )
        if len(path) == depth:
            continue
        last = path[-1] if path else 0
        for orbit in orbits_of(node):
            rep = orbit[0]
            if rep in node.frozen or rep == last:
                continue
            child = orbit_mutate(node, rep, check=False)
            if child.matrix.rows not in seen:
                seen.add(child.matrix.rows)
                queue.append((child, path + (rep,)))
    return CheckReport(
        "globally-foldable", "pass", depth, explored,
        details={"checked_frozen_paths": has_frozen},
    )
