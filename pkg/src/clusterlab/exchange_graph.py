"""Exchange graphs of labeled seeds up to simultaneous relabeling.

Nodes are unlabeled seeds: two labeled seeds are identified when some
permutation matches clusters, coefficients, and exchange matrix at once.
Deduplication keys on the multiset of cluster variables alone; the stronger
statement that this multiset already determines the rest is a theorem the
graph verifier re-checks on everything it enumerates, and any counterexample
encountered during exploration is recorded as an anomaly instead of being
silently merged.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import ParseError, UnsupportedInputError
from .matrices import ExchangeMatrix, IntMatrix, matrix_from_json, matrix_to_json
from .pattern import PatternNode, initial_node, node_at, path_between, step
from .reports import CheckReport
from .seeds import Seed, g_matrix_of, principal_seed, seed_from_json


@dataclass(frozen=True)
class CanonicalSeedKey:
    """Sorted cluster serializations plus the sorting permutation.

    key[p] == cluster[perm[p] - 1]; ties (repeated variables in one cluster)
    would make the permutation ambiguous and are flagged.
    """

    key: Tuple[str, ...]
    perm: Tuple[int, ...]
    tie: bool


def canonical_key(seed: Seed) -> CanonicalSeedKey:
    serialized = [x.canonical() for x in seed.cluster]
    order = sorted(range(len(serialized)), key=lambda i: serialized[i])
    key = tuple(serialized[i] for i in order)
    tie = any(key[p] == key[p + 1] for p in range(len(key) - 1))
    return CanonicalSeedKey(key, tuple(i + 1 for i in order), tie)


@dataclass(frozen=True)
class GraphNode:
    id: int
    seed: Seed
    pattern: PatternNode
    key: CanonicalSeedKey


@dataclass(frozen=True)
class Collision:
    """A labeled seed rediscovered at an already-known unlabeled seed."""

    node_id: int
    seed: Seed
    pattern: PatternNode


@dataclass
class ExchangeGraph:
    b0: ExchangeMatrix
    nodes: List[GraphNode] = field(default_factory=list)
    edges: Dict[Tuple[int, int], int] = field(default_factory=dict)
    collisions: List[Collision] = field(default_factory=list)
    anomalies: List[dict] = field(default_factory=list)
    truncated: bool = False

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, node_id: int) -> List[int]:
        out = []
        for a, b in self.edges:
            if a == node_id:
                out.append(b)
            elif b == node_id:
                out.append(a)
        return sorted(out)


def explore(b, max_nodes: int = 100000, max_depth: int = 12) -> ExchangeGraph:
    """Breadth-first exchange graph from the principal seed at b.

    Seeds are merged by canonical key. Every mutation from an explored node
    either creates a node, or lands on a known key and is recorded as a
    collision (these witness cycles in the graph and feed the relabeling
    checks). Stops at max_depth tree distance or max_nodes, setting
    truncated; a truncated graph can miss edges between known nodes.
    """
    if isinstance(b, (list, tuple)):
        b = ExchangeMatrix(IntMatrix([tuple(r) for r in b]))
    elif isinstance(b, IntMatrix):
        b = ExchangeMatrix(b)
    graph = ExchangeGraph(b0=b)
    seed0 = principal_seed(b)
    key0 = canonical_key(seed0)
    root = GraphNode(0, seed0, initial_node(b), key0)
    graph.nodes.append(root)
    by_key: Dict[Tuple[str, ...], int] = {key0.key: 0}
    if key0.tie:
        graph.anomalies.append({"kind": "key-tie", "node": 0})

    from .seeds import mutate_seed

    queue = deque([0])
    depth_of = {0: 0}
    while queue:
        uid = queue.popleft()
        u = graph.nodes[uid]
        at_limit = depth_of[uid] >= max_depth
        for k in range(1, b.n + 1):
            seed2 = mutate_seed(u.seed, k)
            pat2 = step(u.pattern, k)
            key2 = canonical_key(seed2)
            vid = by_key.get(key2.key)
            if vid is None:
                if at_limit or len(graph.nodes) >= max_nodes:
                    # an unexplored seed sits just past the bound
                    graph.truncated = True
                    continue
                vid = len(graph.nodes)
                node = GraphNode(vid, seed2, pat2, key2)
                graph.nodes.append(node)
                by_key[key2.key] = vid
                depth_of[vid] = depth_of[uid] + 1
                if key2.tie:
                    graph.anomalies.append({"kind": "key-tie", "node": vid})
                queue.append(vid)
            else:
                graph.collisions.append(Collision(vid, seed2, pat2))
            edge = (min(uid, vid), max(uid, vid))
            if edge not in graph.edges:
                graph.edges[edge] = k
    return graph


def _seed_relabeling(a: Seed, b: Seed) -> Optional[Tuple[int, ...]]:
    """Permutation sigma with a.cluster[i-1] == b.cluster[sigma(i)-1], or None."""
    pos = {}
    for j, x in enumerate(b.cluster, start=1):
        s = x.canonical()
        if s in pos:
            return None
        pos[s] = j
    out = []
    for x in a.cluster:
        j = pos.get(x.canonical())
        if j is None:
            return None
        out.append(j)
    return tuple(out)


def _matches_under(sigma: Tuple[int, ...], a: Seed, b: Seed) -> bool:
    """Whole-seed equality after relabeling: coefficients and matrix too."""
    n = len(sigma)
    for i in range(1, n + 1):
        if a.coeffs[i - 1] != b.coeffs[sigma[i - 1] - 1]:
            return False
    am, bm = a.B.matrix.rows, b.B.matrix.rows
    for i in range(n):
        for j in range(n):
            if am[i][j] != bm[sigma[i] - 1][sigma[j] - 1]:
                return False
    return True


def verify_cluster_determines_seed(graph: ExchangeGraph) -> CheckReport:
    """Wherever two labeled seeds share an unordered cluster, the same
    permutation must carry coefficients and matrix across as well."""
    checked = 0
    for col in graph.collisions:
        rep = graph.nodes[col.node_id]
        sigma = _seed_relabeling(col.seed, rep.seed)
        if sigma is None:
            return CheckReport(
                "cluster-determines-seed", "fail", 0, checked,
                {"node": col.node_id, "path": list(col.pattern.path),
                 "kind": "cluster-mismatch"},
            )
        if not _matches_under(sigma, col.seed, rep.seed):
            return CheckReport(
                "cluster-determines-seed", "fail", 0, checked,
                {"node": col.node_id, "path": list(col.pattern.path),
                 "kind": "relabeling-mismatch", "sigma": list(sigma)},
            )
        checked += 1
    if graph.anomalies:
        return CheckReport(
            "cluster-determines-seed", "fail", 0, checked,
            {"kind": "anomalies", "anomalies": graph.anomalies},
        )
    return CheckReport("cluster-determines-seed", "pass", 0, checked)


def verify_adjacency_common_variables(graph: ExchangeGraph) -> CheckReport:
    """Adjacent seeds share exactly n-1 variables; non-adjacent share fewer.

    On a truncated graph only the forward direction is decided (an absent
    edge may simply be unexplored), so the report downgrades to partial.
    """
    n = graph.b0.n
    sets = [frozenset(node.key.key) for node in graph.nodes]
    adjacent = set(graph.edges)
    checked = 0
    for a in range(len(graph.nodes)):
        for b in range(a + 1, len(graph.nodes)):
            common = len(sets[a] & sets[b])
            if (a, b) in adjacent:
                if common != n - 1:
                    return CheckReport(
                        "adjacency-common-variables", "fail", 0, checked,
                        {"nodes": [a, b], "common": common,
                         "kind": "edge-without-n-minus-1"},
                    )
            else:
                if common >= n - 1 and not graph.truncated:
                    return CheckReport(
                        "adjacency-common-variables", "fail", 0, checked,
                        {"nodes": [a, b], "common": common,
                         "kind": "n-minus-1-without-edge"},
                    )
            checked += 1
    status = "partial" if graph.truncated else "pass"
    return CheckReport("adjacency-common-variables", status, 0, checked)


def verify_cmatrix_determines_seed(graph: ExchangeGraph) -> CheckReport:
    """Distinct nodes never share a C-matrix, and over all enumerated data
    the g-vector <-> cluster-variable correspondence is a bijection."""
    seen_c: Dict[tuple, int] = {}
    checked = 0
    for node in graph.nodes:
        c = node.pattern.C.rows
        other = seen_c.get(c)
        if other is not None:
            return CheckReport(
                "cmatrix-determines-seed", "fail", 0, checked,
                {"nodes": [other, node.id], "kind": "repeated-c-matrix"},
            )
        seen_c[c] = node.id
        checked += 1
    g_to_x: Dict[tuple, str] = {}
    x_to_g: Dict[str, tuple] = {}
    for node in graph.nodes:
        gm = g_matrix_of(node.seed)
        for i in range(1, graph.b0.n + 1):
            g = gm.column(i)
            x = node.seed.cluster[i - 1].canonical()
            if g_to_x.setdefault(g, x) != x:
                return CheckReport(
                    "cmatrix-determines-seed", "fail", 0, checked,
                    {"node": node.id, "index": i, "kind": "g-vector-not-injective"},
                )
            if x_to_g.setdefault(x, g) != g:
                return CheckReport(
                    "cmatrix-determines-seed", "fail", 0, checked,
                    {"node": node.id, "index": i, "kind": "variable-with-two-g-vectors"},
                )
    return CheckReport("cmatrix-determines-seed", "pass", 0, checked,
                       details={"distinct_g_vectors": len(g_to_x)})


def _is_indecomposable(b: ExchangeMatrix) -> bool:
    n = b.n
    if n == 1:
        return True
    rows = b.matrix.rows
    seen = {1}
    frontier = [1]
    while frontier:
        v = frontier.pop()
        for w in range(1, n + 1):
            if w not in seen and rows[v - 1][w - 1] != 0:
                seen.add(w)
                frontier.append(w)
    return len(seen) == n


def _perm_matrix(sigma: Tuple[int, ...]) -> IntMatrix:
    """Column i is the sigma(i)-th standard basis vector."""
    n = len(sigma)
    return IntMatrix(
        [tuple(int(sigma[j] == i + 1) for j in range(n)) for i in range(n)]
    )


def verify_odd_rank_theorem(graph: ExchangeGraph) -> CheckReport:
    """At odd rank, whenever two tree vertices carry the same unlabeled seed,
    the re-rooted walk from one to the other has C = G = the plain
    permutation matrix of the relabeling (never its negative), and the
    exchange matrices match under that permutation."""
    n = graph.b0.n
    if n % 2 == 0:
        raise UnsupportedInputError("odd-rank check requires odd rank")
    if not _is_indecomposable(graph.b0):
        raise UnsupportedInputError("odd-rank check requires an indecomposable matrix")
    checked = 0
    for col in graph.collisions:
        rep = graph.nodes[col.node_id]
        sigma = _seed_relabeling(col.seed, rep.seed)
        if sigma is None or not _matches_under(sigma, col.seed, rep.seed):
            return CheckReport(
                "odd-rank-relabeling", "fail", 0, checked,
                {"node": col.node_id, "path": list(col.pattern.path),
                 "kind": "not-a-relabeling"},
            )
        walk = node_at(rep.seed.B, path_between(rep.pattern.path, col.pattern.path))
        p = _perm_matrix(sigma)
        if walk.C != p or walk.G != p:
            kind = "negative-permutation" if walk.C == -p else "non-permutation"
            return CheckReport(
                "odd-rank-relabeling", "fail", 0, checked,
                {"node": col.node_id, "path": list(col.pattern.path),
                 "sigma": list(sigma), "kind": kind,
                 "C": walk.C.to_lists(), "G": walk.G.to_lists()},
            )
        pt = p.transpose()
        if pt * rep.seed.B.matrix * p != col.seed.B.matrix:
            return CheckReport(
                "odd-rank-relabeling", "fail", 0, checked,
                {"node": col.node_id, "path": list(col.pattern.path),
                 "sigma": list(sigma), "kind": "matrix-conjugation-mismatch"},
            )
        checked += 1
    return CheckReport("odd-rank-relabeling", "pass", 0, checked)


def _pattern_to_json(p: PatternNode) -> dict:
    return {
        "B": matrix_to_json(p.B.matrix),
        "C": matrix_to_json(p.C),
        "G": matrix_to_json(p.G),
        "path": list(p.path),
    }


def _pattern_from_json(data: dict) -> PatternNode:
    try:
        return PatternNode(
            ExchangeMatrix(matrix_from_json(data["B"])),
            matrix_from_json(data["C"]),
            matrix_from_json(data["G"]),
            tuple(int(k) for k in data["path"]),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad pattern node JSON: {exc}") from None


def graph_to_json(graph: ExchangeGraph) -> dict:
    return {
        "b0": matrix_to_json(graph.b0.matrix),
        "truncated": graph.truncated,
        "nodes": [
            {
                "id": node.id,
                "seed": node.seed.to_json(),
                "pattern": _pattern_to_json(node.pattern),
            }
            for node in graph.nodes
        ],
        "edges": [[a, b, k] for (a, b), k in sorted(graph.edges.items())],
        "collisions": [
            {
                "node": col.node_id,
                "seed": col.seed.to_json(),
                "pattern": _pattern_to_json(col.pattern),
            }
            for col in graph.collisions
        ],
        "anomalies": graph.anomalies,
    }


def graph_from_json(data) -> ExchangeGraph:
    if not isinstance(data, dict) or "nodes" not in data:
        raise ParseError("graph JSON must be an object with 'nodes'")
    try:
        b0 = ExchangeMatrix(matrix_from_json(data["b0"]))
        graph = ExchangeGraph(b0=b0, truncated=bool(data.get("truncated", False)))
        for entry in data["nodes"]:
            seed = seed_from_json(entry["seed"])
            graph.nodes.append(
                GraphNode(int(entry["id"]), seed,
                          _pattern_from_json(entry["pattern"]),
                          canonical_key(seed))
            )
        for a, b, k in data.get("edges", []):
            graph.edges[(int(a), int(b))] = int(k)
        for entry in data.get("collisions", []):
            graph.collisions.append(
                Collision(int(entry["node"]), seed_from_json(entry["seed"]),
                          _pattern_from_json(entry["pattern"]))
            )
        graph.anomalies = list(data.get("anomalies", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph JSON: {exc}") from None
    return graph


def export_dot(graph: ExchangeGraph) -> str:
    """Graphviz source; node labels are tree paths, edge labels directions."""
    lines = ["graph exchange {"]
    for node in graph.nodes:
        label = ",".join(str(k) for k in node.pattern.path) or "()"
        lines.append(f'  n{node.id} [label="{label}"];')
    for (a, b), k in sorted(graph.edges.items()):
        lines.append(f'  n{a} -- n{b} [label="{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
