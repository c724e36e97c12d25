"""Exact integer matrices and the basic mutation calculus.

All entries are plain Python ints, so arithmetic is arbitrary precision and
exact; mutation entries grow exponentially and fixed-width overflow would be
a silent correctness bug. Mutation directions and truncation indices are
1-based in the public API and in all serialized forms; raw entry access on
IntMatrix is 0-based.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    DimensionError,
    ParseError,
    SignSkewSymmetryError,
    SignUndefinedError,
)


def sign(a) -> int:
    return (a > 0) - (a < 0)


class IntMatrix:
    """Immutable dense integer matrix."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged rows")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-v for v in row) for row in self.rows))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionError("shape mismatch in addition")
        return IntMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise DimensionError("shape mismatch in product")
        cols = tuple(zip(*other.rows)) if other.rows else ()
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.rows
            )
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)) if self.rows else ())

    def column(self, k: int) -> tuple:
        """k is 1-based."""
        _check_index(k, self.ncols)
        return tuple(row[k - 1] for row in self.rows)

    def row(self, k: int) -> tuple:
        _check_index(k, self.nrows)
        return self.rows[k - 1]

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise DimensionError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        a = [list(r) for r in self.rows]
        sgn, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if pivot is None:
                    return 0
                a[k], a[pivot] = a[pivot], a[k]
                sgn = -sgn
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sgn * a[n - 1][n - 1]

    def to_lists(self) -> list:
        return [list(r) for r in self.rows]


def _check_index(k: int, n: int) -> None:
    if not 1 <= k <= n:
        raise IndexError(f"index {k} out of range 1..{n}")


def mat_vec(m: IntMatrix, v: Sequence) -> tuple:
    """Matrix-vector product; vector entries may be ints or Fractions."""
    if len(v) != m.ncols:
        raise DimensionError("vector length mismatch")
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m.rows)


def is_sign_skew_symmetric(m: IntMatrix) -> bool:
    """True iff b_ij*b_ji <= 0 for all i,j, with simultaneous vanishing."""
    if not m.is_square():
        raise DimensionError("sign-skew-symmetry applies to square matrices")
    r = m.rows
    n = m.nrows
    for i in range(n):
        if r[i][i] != 0:
            return False
        for j in range(i + 1, n):
            a, b = r[i][j], r[j][i]
            if a * b > 0 or (a == 0) != (b == 0):
                return False
    return True


class ExchangeMatrix:
    """A square integer matrix validated to be sign-skew-symmetric."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix(matrix)
        if not is_sign_skew_symmetric(matrix):
            raise SignSkewSymmetryError(
                f"matrix is not sign-skew-symmetric: {matrix.to_lists()}"
            )
        self.matrix = matrix

    @property
    def n(self) -> int:
        return self.matrix.nrows

    def __getitem__(self, ij):
        return self.matrix[ij]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExchangeMatrix) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(("ExchangeMatrix", self.matrix.rows))

    def __repr__(self) -> str:
        return f"ExchangeMatrix({self.matrix.to_lists()})"


def _as_rows(b) -> tuple:
    return b.matrix.rows if isinstance(b, ExchangeMatrix) else b.rows


def mutate_matrix(b, k: int) -> IntMatrix:
    """Mutation at direction k (1-based).

    b'_ij = -b_ij if i == k or j == k, else b_ij + sign(b_ik)*max(b_ik*b_kj, 0).
    The result is a plain IntMatrix: sign-skew-symmetry of the mutated matrix
    is not guaranteed and must be re-checked by callers who rely on it.
    """
    rows = _as_rows(b)
    n = len(rows)
    _check_index(k, n)
    k0 = k - 1
    out = []
    for i in range(n):
        if i == k0:
            out.append(tuple(-v for v in rows[i]))
            continue
        bik = rows[i][k0]
        row = []
        for j in range(n):
            if j == k0:
                row.append(-rows[i][j])
            else:
                prod = bik * rows[k0][j]
                row.append(rows[i][j] + sign(bik) * (prod if prod > 0 else 0))
        out.append(tuple(row))
    return IntMatrix(out)


def mutate_along(b: ExchangeMatrix, path: Sequence[int]) -> IntMatrix:
    """Apply a mutation sequence, re-validating sign-skew-symmetry at each step."""
    cur = b.matrix
    for pos, k in enumerate(path):
        if not is_sign_skew_symmetric(cur):
            raise SignSkewSymmetryError(
                f"intermediate matrix after {list(path[:pos])} is not sign-skew-symmetric"
            )
        cur = mutate_matrix(cur, k)
    return cur


def is_acyclic(b) -> bool:
    """True iff the digraph with arc i->j whenever b_ij > 0 has no directed cycle."""
    rows = _as_rows(b)
    n = len(rows)
    state = [0] * n  # 0 unseen, 1 on stack, 2 done
    for start in range(n):
        if state[start]:
            continue
        stack = [(start, 0)]
        state[start] = 1
        while stack:
            v, nxt = stack[-1]
            advanced = False
            for j in range(nxt, n):
                stack[-1] = (v, j + 1)
                if rows[v][j] > 0:
                    if state[j] == 1:
                        return False
                    if state[j] == 0:
                        state[j] = 1
                        stack.append((j, 0))
                        advanced = True
                        break
            if not advanced and stack[-1][1] >= n:
                state[v] = 2
                stack.pop()
    return True


def skew_symmetrizer(m: IntMatrix) -> Optional[tuple]:
    """Positive integer diagonal D with d_i*b_ij = -d_j*b_ji, or None.

    Solved by propagating the forced ratios d_j/d_i = -b_ij/b_ji along the
    graph of nonzero entries and checking consistency on the non-tree edges.
    """
    if not m.is_square():
        raise DimensionError("skew-symmetrizer of a non-square matrix")
    if not is_sign_skew_symmetric(m):
        return None
    n = m.nrows
    r = m.rows
    d: list = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if r[i][j] == 0 or i == j:
                    continue
                # opposite signs guarantee the forced ratio is positive
                forced = d[i] * Fraction(-r[i][j], r[j][i])
                if d[j] is None:
                    d[j] = forced
                    queue.append(j)
                elif d[j] != forced:
                    return None
    denom_lcm = 1
    for v in d:
        denom_lcm = _lcm(denom_lcm, v.denominator)
    ints = [int(v * denom_lcm) for v in d]
    g = 0
    for v in ints:
        g = _gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _lcm(a: int, b: int) -> int:
    return a * b // _gcd(a, b) if a and b else 0


def is_skew_symmetrizable(m: IntMatrix) -> bool:
    return skew_symmetrizer(m) is not None


def is_skew_symmetric(m: IntMatrix) -> bool:
    if not m.is_square():
        raise DimensionError("skew-symmetry applies to square matrices")
    return m.transpose() == -m


@dataclass(frozen=True)
class SSSReport:
    """Outcome of the bounded totally-sign-skew-symmetric search.

    verified_depth counts the levels fully confirmed; on failure it is one
    less than the failing path length. failure_path and failing_matrix are
    present together or not at all.
    """

    verified_depth: int
    failure_path: Optional[tuple] = None
    failing_matrix: Optional[IntMatrix] = None
    explored: int = 0

    @property
    def ok(self) -> bool:
        return self.failure_path is None

    def to_json(self) -> dict:
        return {
            "verified_depth": self.verified_depth,
            "failure_path": list(self.failure_path) if self.failure_path else None,
            "failing_matrix": (
                matrix_to_json(self.failing_matrix) if self.failing_matrix else None
            ),
            "explored": self.explored,
        }


def verify_totally_sss(b: ExchangeMatrix, depth: int) -> SSSReport:
    """Breadth-first search for a sign-skew-symmetry failure within depth.

    Prunes the immediate parent edge only (the walk lives on a tree, so this
    is exact) and memoizes visited matrices; a repeated matrix reappears at
    the same or greater depth, so its subtree is already covered.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    n = b.n
    seen = {b.matrix.rows}
    queue = deque([(b.matrix, ())])
    explored = 1
    while queue:
        m, path = queue.popleft()
        if len(path) == depth:
            continue
        last = path[-1] if path else 0
        for k in range(1, n + 1):
            if k == last:
                continue
            child = mutate_matrix(m, k)
            if not is_sign_skew_symmetric(child):
                return SSSReport(
                    verified_depth=len(path),
                    failure_path=path + (k,),
                    failing_matrix=child,
                    explored=explored + 1,
                )
            if child.rows in seen:
                continue
            seen.add(child.rows)
            explored += 1
            queue.append((child, path + (k,)))
    return SSSReport(verified_depth=depth, explored=explored)


def bracket_plus(m: IntMatrix) -> IntMatrix:
    """Entrywise positive part max(., 0)."""
    return IntMatrix(tuple(tuple(v if v > 0 else 0 for v in row) for row in m.rows))


def row_trunc(m: IntMatrix, k: int) -> IntMatrix:
    """Zero all rows except the k-th (1-based)."""
    _check_index(k, m.nrows)
    z = (0,) * m.ncols
    return IntMatrix(tuple(row if i == k - 1 else z for i, row in enumerate(m.rows)))


def col_trunc(m: IntMatrix, k: int) -> IntMatrix:
    """Zero all columns except the k-th (1-based)."""
    _check_index(k, m.ncols)
    return IntMatrix(
        tuple(
            tuple(v if j == k - 1 else 0 for j, v in enumerate(row)) for row in m.rows
        )
    )


def j_matrix(n: int, k: int) -> IntMatrix:
    """Identity with the (k,k) entry replaced by -1."""
    _check_index(k, n)
    return IntMatrix(
        tuple(
            tuple((-1 if i == k - 1 else 1) if i == j else 0 for j in range(n))
            for i in range(n)
        )
    )


def edge_matrix_row(b, k: int, eps: int) -> IntMatrix:
    """J_k + [eps*B]_+^{k.}, the right-multiplier carrying C across an edge."""
    m = b.matrix if isinstance(b, ExchangeMatrix) else b
    signed = m if eps == 1 else -m
    return j_matrix(m.nrows, k) + row_trunc(bracket_plus(signed), k)


def edge_matrix_col(b, k: int, eps: int) -> IntMatrix:
    """J_k + [-eps*B]_+^{.k}, the right-multiplier carrying G across an edge."""
    m = b.matrix if isinstance(b, ExchangeMatrix) else b
    signed = -m if eps == 1 else m
    return j_matrix(m.nrows, k) + col_trunc(bracket_plus(signed), k)


def column_sign(m: IntMatrix, k: int) -> int:
    """Sign of the k-th column, requiring it nonzero and sign-coherent."""
    col = m.column(k)
    return _coherent_sign(col, f"column {k}")


def row_sign(m: IntMatrix, k: int) -> int:
    col = m.row(k)
    return _coherent_sign(col, f"row {k}")


def _coherent_sign(vec: tuple, what: str) -> int:
    has_pos = any(v > 0 for v in vec)
    has_neg = any(v < 0 for v in vec)
    if has_pos and has_neg:
        raise SignUndefinedError(f"{what} has mixed signs: {list(vec)}")
    if not has_pos and not has_neg:
        raise SignUndefinedError(f"{what} is zero")
    return 1 if has_pos else -1


def is_sign_coherent(vec: Sequence[int]) -> bool:
    """Nonzero vector with all entries >= 0 or all <= 0."""
    has_pos = any(v > 0 for v in vec)
    has_neg = any(v < 0 for v in vec)
    return has_pos != has_neg


def matrix_to_json(m: IntMatrix) -> dict:
    if not m.is_square():
        raise DimensionError("serialized matrices are square")
    return {"n": m.nrows, "rows": m.to_lists()}


def matrix_from_json(data) -> IntMatrix:
    if not isinstance(data, dict) or "rows" not in data:
        raise ParseError("matrix JSON must be an object with 'n' and 'rows'")
    rows = data["rows"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("'rows' must be a list of lists")
    try:
        m = IntMatrix(rows)
    except (DimensionError, TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix entries: {exc}") from None
    n = data.get("n", m.nrows)
    if m.nrows != n or m.ncols != n:
        raise ParseError(f"matrix is not {n}x{n}")
    return m
