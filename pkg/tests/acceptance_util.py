"""Shared matrix suite and cached sweeps for the acceptance tests.

Every suite member passes the total sign-skew-symmetry screen to depth 8
on both B and -B^T, so pattern walks over them are well defined.  The
Laurent-backed sweeps cap each member at the largest depth that stays
within a desk-scale budget: expansions in the wilder non-symmetrizable
mutation classes grow super-exponentially (nonsym1 already exceeds 10^5
terms one level past its cap, nonsym2 two levels past).
"""

from __future__ import annotations

import functools
import time
from collections import OrderedDict, deque
from functools import lru_cache
from typing import Dict, Tuple

import clusterlab as cl

Rows = Tuple[Tuple[int, ...], ...]

SUITE: "OrderedDict[str, Rows]" = OrderedDict(
    [
        ("a2", ((0, 1), (-1, 0))),
        ("b2", ((0, 2), (-1, 0))),
        ("g2", ((0, 1), (-3, 0))),
        ("g2t", ((0, 3), (-1, 0))),
        ("a3", ((0, 1, 0), (-1, 0, 1), (0, -1, 0))),
        ("tri_acyc", ((0, 1, 1), (-1, 0, 1), (-1, -1, 0))),
        ("tri_cyc", ((0, 1, -1), (-1, 0, 1), (1, -1, 0))),
        ("nonsym1", ((0, 1, 1), (-2, 0, 1), (-1, -1, 0))),
        ("nonsym2", ((0, 2, 1), (-1, 0, 2), (-1, -1, 0))),
        ("a4", ((0, 1, 0, 0), (-1, 0, 1, 0), (0, -1, 0, 1), (0, 0, -1, 0))),
        ("d4", ((0, 1, 0, 0), (-1, 0, 1, 1), (0, -1, 0, 0), (0, -1, 0, 0))),
        ("f4like", ((0, 1, 0, 0), (-1, 0, 2, 0), (0, -1, 0, 1), (0, 0, -1, 0))),
        ("nonsym4", ((0, 1, 1, 1), (-2, 0, 1, 1), (-1, -1, 0, 1), (-1, -1, -1, 0))),
    ]
)

# Acyclic non-skew-symmetrizable members (checked in test_matrices):
# nonsym1, nonsym2, nonsym4.
PATTERN_DEPTH = 8

# Rank <= 3 members only; values are the seed-sweep depths.
LAURENT_DEPTHS: Dict[str, int] = {
    "a2": 6,
    "b2": 6,
    "g2": 6,
    "g2t": 6,
    "a3": 6,
    "tri_acyc": 6,
    "tri_cyc": 6,
    "nonsym1": 5,
    "nonsym2": 4,
}

RESULTS: "OrderedDict[int, dict]" = OrderedDict()


def criterion(num: int, label: str):
    """Record a pass/fail line for the terminal summary, then re-raise."""

    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException:
                RESULTS[num] = {
                    "label": label,
                    "status": "FAIL",
                    "seconds": time.perf_counter() - t0,
                }
                raise
            RESULTS[num] = {
                "label": label,
                "status": "pass",
                "seconds": time.perf_counter() - t0,
            }

        return wrapper

    return deco


def exchange_matrix(name: str) -> cl.ExchangeMatrix:
    return cl.ExchangeMatrix(cl.IntMatrix(SUITE[name]))


def acyclic_members():
    return [n for n in SUITE if cl.is_acyclic(cl.IntMatrix(SUITE[n]))]


@lru_cache(maxsize=None)
def pattern_nodes(name: str) -> tuple:
    """All pattern vertices of a member to PATTERN_DEPTH (reduced paths)."""
    return tuple(cl.iter_pattern(exchange_matrix(name), PATTERN_DEPTH))


@lru_cache(maxsize=None)
def laurent_sweep(name: str) -> tuple:
    """(seed, pattern node) pairs walked in lockstep to the member's cap."""
    b0 = exchange_matrix(name)
    depth = LAURENT_DEPTHS[name]
    out = []
    queue = deque([(cl.principal_seed(b0), cl.initial_node(b0), 0)])
    while queue:
        seed, node, last = queue.popleft()
        out.append((seed, node))
        if len(node.path) >= depth:
            continue
        for k in range(1, b0.n + 1):
            if k != last:
                queue.append((cl.mutate_seed(seed, k), cl.step(node, k), k))
    return tuple(out)
