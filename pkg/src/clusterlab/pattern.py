"""Walks of the matrix pattern (B_t, C_t, G_t) and the duality checks.

The walker advances C and G by the unimodular edge matrices built from the
sign of C's mutation column. Re-rooted quantities (matrices of the pattern
based at another tree vertex) are always produced by a fresh walk with
C = G = I at the new root; the closed-form transfer rules are then checked
against that independent computation rather than trusted.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

from .errors import DimensionError, SignUndefinedError
from .matrices import (
    ExchangeMatrix,
    IntMatrix,
    column_sign,
    edge_matrix_col,
    edge_matrix_row,
    is_sign_coherent,
    mutate_matrix,
    row_sign,
)
from .reports import CheckReport


@dataclass(frozen=True)
class PatternNode:
    B: ExchangeMatrix
    C: IntMatrix
    G: IntMatrix
    path: Tuple[int, ...]


@dataclass(frozen=True)
class LockstepPair:
    """A pattern node for B and the node at the same path for -B^T."""

    plus: PatternNode
    minus: PatternNode


def initial_node(b0: ExchangeMatrix) -> PatternNode:
    n = b0.n
    return PatternNode(b0, IntMatrix.identity(n), IntMatrix.identity(n), ())


def step(node: PatternNode, k: int) -> PatternNode:
    """One edge in direction k (1-based); raises SignUndefinedError if
    C's k-th column has no coherent sign (an invariant breach upstream)."""
    eps = column_sign(node.C, k)
    return PatternNode(
        ExchangeMatrix(mutate_matrix(node.B, k)),
        node.C * edge_matrix_row(node.B, k, eps),
        node.G * edge_matrix_col(node.B, k, eps),
        node.path + (k,),
    )


def node_at(b0: ExchangeMatrix, path: Sequence[int]) -> PatternNode:
    node = initial_node(b0)
    for k in path:
        node = step(node, k)
    return node


def iter_pattern(b0: ExchangeMatrix, depth: int) -> Iterator[PatternNode]:
    """All tree vertices within the given depth, breadth-first, directions
    ascending, pruning only the immediate parent edge (exact on a tree)."""
    n = b0.n
    queue = deque([initial_node(b0)])
    while queue:
        node = queue.popleft()
        yield node
        if len(node.path) == depth:
            continue
        last = node.path[-1] if node.path else 0
        for k in range(1, n + 1):
            if k != last:
                queue.append(step(node, k))


def tilde_root(b0: ExchangeMatrix) -> ExchangeMatrix:
    return ExchangeMatrix(-b0.matrix.transpose())


def initial_lockstep(b0: ExchangeMatrix) -> LockstepPair:
    return LockstepPair(initial_node(b0), initial_node(tilde_root(b0)))


def lockstep_step(pair: LockstepPair, k: int) -> LockstepPair:
    return LockstepPair(step(pair.plus, k), step(pair.minus, k))


def iter_lockstep(b0: ExchangeMatrix, depth: int) -> Iterator[LockstepPair]:
    n = b0.n
    queue = deque([initial_lockstep(b0)])
    while queue:
        pair = queue.popleft()
        yield pair
        if len(pair.plus.path) == depth:
            continue
        last = pair.plus.path[-1] if pair.plus.path else 0
        for k in range(1, n + 1):
            if k != last:
                queue.append(lockstep_step(pair, k))


def check_first_duality(node: PatternNode, b0: ExchangeMatrix) -> bool:
    return node.G * node.B.matrix == b0.matrix * node.C


def check_determinants(node: PatternNode) -> bool:
    dc = node.C.det()
    return dc in (1, -1) and node.G.det() == dc


def check_second_duality(pair: LockstepPair) -> bool:
    n = pair.plus.B.n
    return pair.plus.G.transpose() * pair.minus.C == IntMatrix.identity(n)


def column_signs_agree(pair: LockstepPair) -> Optional[int]:
    """First column index (1-based) where sign(C) and sign(C~) differ, else None."""
    for k in range(1, pair.plus.B.n + 1):
        if column_sign(pair.plus.C, k) != column_sign(pair.minus.C, k):
            return k
    return None


def check_assumption(
    b0: ExchangeMatrix, depth: int, reroot: bool = True
) -> CheckReport:
    """Column signs of C and C~ must agree (lockstep walk over B and -B^T).

    With reroot=True every distinct exchange matrix discovered within the
    depth is also used as a fresh initial vertex, and the lockstep runs from
    each such root; the pattern of -B^T follows the identical path.
    """
    roots = [b0]
    if reroot:
        seen = {b0.matrix.rows}
        for node in iter_pattern(b0, depth):
            if node.B.matrix.rows not in seen:
                seen.add(node.B.matrix.rows)
                roots.append(node.B)
    explored = 0
    for root_idx, root in enumerate(roots):
        for pair in iter_lockstep(root, depth):
            explored += 1
            try:
                bad = column_signs_agree(pair)
            except SignUndefinedError as exc:
                return CheckReport(
                    "assumption", "fail", len(pair.plus.path) - 1, explored,
                    {
                        "kind": "sign-undefined",
                        "root": matrix_rows(root),
                        "path": list(pair.plus.path),
                        "error": str(exc),
                    },
                )
            if bad is not None:
                return CheckReport(
                    "assumption", "fail", len(pair.plus.path) - 1, explored,
                    {
                        "kind": "column-sign-mismatch",
                        "root": matrix_rows(root),
                        "path": list(pair.plus.path),
                        "column": bad,
                        "C": pair.plus.C.to_lists(),
                        "C_tilde": pair.minus.C.to_lists(),
                    },
                )
    return CheckReport(
        "assumption", "pass", depth, explored, details={"roots": len(roots)}
    )


def matrix_rows(b) -> list:
    m = b.matrix if isinstance(b, ExchangeMatrix) else b
    return m.to_lists()


def path_between(p_from: Sequence[int], p_to: Sequence[int]) -> Tuple[int, ...]:
    """Mutation word along the tree geodesic between two vertices given by
    their root paths: climb out of the divergent part, then descend."""
    i = 0
    while i < len(p_from) and i < len(p_to) and p_from[i] == p_to[i]:
        i += 1
    return tuple(reversed(p_from[i:])) + tuple(p_to[i:])


def check_dual_mutation(b0: ExchangeMatrix, k: int, depth: int) -> CheckReport:
    """Transfer rules between roots t0 and t1 = mu_k(t0), checked at every
    vertex within depth against fresh re-rooted walks.

    (a) C and G at t equal the transposed G and C of the pattern rooted at t
        with initial matrix B_t^T, evaluated back at t0.
    (b) The closed-form left-multipliers built from B_{t0} and the row sign
        of G carry (C, G) from root t0 to root t1.
    (c) Columns of C and C~ are (plus/minus) standard basis vectors together.
    (d) Rows of G and G~ have equal signs, and are basis vectors together.
    """
    if not 1 <= k <= b0.n:
        raise IndexError(f"direction {k} out of range 1..{b0.n}")
    b1 = ExchangeMatrix(mutate_matrix(b0, k))
    explored = 0

    def fail(kind: str, pair: LockstepPair, **extra) -> CheckReport:
        witness = {"kind": kind, "k": k, "path": list(pair.plus.path)}
        witness.update(extra)
        return CheckReport(
            "dual-mutation", "fail", len(pair.plus.path) - 1, explored, witness
        )

    for pair in iter_lockstep(b0, depth):
        explored += 1
        node = pair.plus
        p = node.path

        # (a) via the transposed pattern rooted at t
        bar_root = ExchangeMatrix(node.B.matrix.transpose())
        bar = node_at(bar_root, tuple(reversed(p)))
        if node.C != bar.G.transpose() or node.G != bar.C.transpose():
            return fail("transpose-pattern-mismatch", pair)

        # (b) closed form vs a fresh walk rooted at t1
        try:
            eps_g = row_sign(node.G, k)
        except SignUndefinedError as exc:
            return fail("g-row-sign-undefined", pair, error=str(exc))
        closed_c = edge_matrix_row(b0, k, -eps_g) * node.C
        closed_g = edge_matrix_col(b0, k, -eps_g) * node.G
        q = p[1:] if p and p[0] == k else (k,) + p
        rerooted = node_at(b1, q)
        if rerooted.C != closed_c or rerooted.G != closed_g:
            return fail(
                "reroot-formula-mismatch",
                pair,
                closed_C=closed_c.to_lists(),
                rerooted_C=rerooted.C.to_lists(),
                closed_G=closed_g.to_lists(),
                rerooted_G=rerooted.G.to_lists(),
            )

        # (c) and (d): unit-vector and sign dichotomies against the -B^T pattern
        n = b0.n
        for i in range(1, n + 1):
            if _unit_axis(node.C.column(i)) != _unit_axis(pair.minus.C.column(i)):
                return fail("column-unit-mismatch", pair, column=i)
        for i in range(1, n + 1):
            row_p, row_m = node.G.row(i), pair.minus.G.row(i)
            if not (is_sign_coherent(row_p) and is_sign_coherent(row_m)):
                return fail("g-row-incoherent", pair, row=i)
            if row_sign(node.G, i) != row_sign(pair.minus.G, i):
                return fail("g-row-sign-mismatch", pair, row=i)
            if _unit_axis(row_p) != _unit_axis(row_m):
                return fail("row-unit-mismatch", pair, row=i)

    return CheckReport("dual-mutation", "pass", depth, explored)


def _unit_axis(vec: Sequence[int]) -> Optional[Tuple[int, int]]:
    """(axis, sign) if vec is plus/minus a standard basis vector, else None."""
    nz = [(j, v) for j, v in enumerate(vec) if v != 0]
    if len(nz) == 1 and nz[0][1] in (1, -1):
        return nz[0][0] + 1, nz[0][1]
    return None


def change_initial_gvector(
    b0: ExchangeMatrix, k: int, g: Sequence[int]
) -> Tuple[int, ...]:
    """Rewrite a g-vector with respect to the initial seed mutated at k.

    g'_k = -g_k and g'_j = g_j + [b_jk]_+ g_k - b_jk * min(g_k, 0); the two
    sign branches coincide with the piecewise-linear initial-seed-change map.
    """
    rows = b0.matrix.rows
    n = b0.n
    if not 1 <= k <= n:
        raise IndexError(f"direction {k} out of range 1..{n}")
    if len(g) != n:
        raise DimensionError("g-vector length mismatch")
    k0 = k - 1
    gk = g[k0]
    out = []
    for j in range(n):
        if j == k0:
            out.append(-gk)
        else:
            bjk = rows[j][k0]
            out.append(g[j] + max(bjk, 0) * gk - bjk * min(gk, 0))
    return tuple(out)


def walk_report(b0: ExchangeMatrix, depth: int) -> CheckReport:
    """First duality, determinant invariant and column sign coherence at
    every vertex within depth; the bread-and-butter per-node suite."""
    explored = 0
    for node in iter_pattern(b0, depth):
        explored += 1
        failure = None
        if not check_first_duality(node, b0):
            failure = "first-duality"
        elif not check_determinants(node):
            failure = "determinants"
        else:
            try:
                for k in range(1, b0.n + 1):
                    column_sign(node.C, k)
            except SignUndefinedError:
                failure = "column-sign-coherence"
        if failure:
            return CheckReport(
                "dualities", "fail", len(node.path) - 1, explored,
                {"kind": failure, "path": list(node.path)},
            )
    return CheckReport("dualities", "pass", depth, explored)


def dualities_report(
    b0: ExchangeMatrix,
    depth: int,
    assumption: bool = False,
    dual_mutation: Optional[int] = None,
) -> dict:
    """Aggregate report over the per-node walk checks, with optional
    assumption-lockstep and dual-mutation suites on top.

    Each check records its earliest failing path independently (the walk
    does not stop at the first bad node); the top-level failure is the
    shortest, then lexicographically least, of the recorded paths.
    """
    fails = {"first_duality": None, "determinants": None, "sign_coherence": None}
    explored = 0
    for node in iter_pattern(b0, depth):
        explored += 1
        if fails["first_duality"] is None and not check_first_duality(node, b0):
            fails["first_duality"] = tuple(node.path)
        if fails["determinants"] is None and not check_determinants(node):
            fails["determinants"] = tuple(node.path)
        if fails["sign_coherence"] is None:
            try:
                for k in range(1, b0.n + 1):
                    column_sign(node.C, k)
            except SignUndefinedError:
                fails["sign_coherence"] = tuple(node.path)
    details: dict = {"explored": explored}
    if assumption:
        rep = check_assumption(b0, depth)
        fails["assumption"] = (
            None if rep.ok else tuple(rep.failure.get("path", ()))
        )
        if not rep.ok:
            details["assumption_failure"] = rep.failure
    if dual_mutation is not None:
        rep = check_dual_mutation(b0, dual_mutation, depth)
        fails["dual_mutation"] = (
            None if rep.ok else tuple(rep.failure.get("path", ()))
        )
        if not rep.ok:
            details["dual_mutation_failure"] = rep.failure
    failing = [p for p in fails.values() if p is not None]
    failure = min(failing, key=lambda p: (len(p), p)) if failing else None
    verified = depth if not failing else max(min(len(p) for p in failing) - 1, 0)
    return {
        "verified_depth": verified,
        "checks": {
            name: "pass" if path is None else "fail"
            for name, path in fails.items()
        },
        "failure": list(failure) if failure is not None else None,
        "details": details,
    }
