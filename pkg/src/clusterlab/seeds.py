"""Seeds over a tropical semifield and the Laurent calculus on them.

A seed holds n cluster variables expanded as Laurent polynomials in the
initial variables (with tropical generators as extra polynomial variables),
n tropical coefficients, and the exchange matrix. With principal
coefficients the module also computes F-polynomials, c-/g-vectors both from
the data itself and by the edge recurrences, and checks the subtraction-free
identity expressing mutated coefficients through C, B and the F-polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence, Tuple

from .errors import (
    DimensionError,
    ExactnessError,
    ParseError,
    UnsupportedCoefficientsError,
)
from .laurent import LaurentPoly, laurent_from_json
from .matrices import (
    ExchangeMatrix,
    IntMatrix,
    column_sign,
    edge_matrix_col,
    matrix_from_json,
    matrix_to_json,
    mutate_matrix,
)
from .reports import CheckReport
from .tropical import TropicalElement

GradedVector = Tuple[int, ...]


@dataclass(frozen=True)
class Seed:
    """Labeled seed: cluster variables, tropical coefficients, exchange matrix.

    initial_B is the exchange matrix of the seed in whose variables the
    cluster entries are expanded; it fixes the grading deg(y_j) = -(column j)
    and never changes under mutation.
    """

    cluster: Tuple[LaurentPoly, ...]
    coeffs: Tuple[TropicalElement, ...]
    B: ExchangeMatrix
    x_names: Tuple[str, ...]
    trop_names: Tuple[str, ...]
    initial_B: ExchangeMatrix
    principal: bool

    @property
    def n(self) -> int:
        return len(self.cluster)

    @property
    def ambient_vars(self) -> Tuple[str, ...]:
        return self.x_names + self.trop_names

    def to_json(self) -> dict:
        return {
            "cluster": [p.to_json() for p in self.cluster],
            "coeffs": [list(t.exponents) for t in self.coeffs],
            "B": matrix_to_json(self.B.matrix),
            "x_names": list(self.x_names),
            "trop_names": list(self.trop_names),
            "initial_B": matrix_to_json(self.initial_B.matrix),
            "principal": self.principal,
        }


def seed_from_json(data: dict) -> Seed:
    try:
        return Seed(
            cluster=tuple(laurent_from_json(p) for p in data["cluster"]),
            coeffs=tuple(TropicalElement(t) for t in data["coeffs"]),
            B=ExchangeMatrix(matrix_from_json(data["B"])),
            x_names=tuple(data["x_names"]),
            trop_names=tuple(data["trop_names"]),
            initial_B=ExchangeMatrix(matrix_from_json(data["initial_B"])),
            principal=bool(data["principal"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed seed object: {exc}") from exc


def principal_seed(b: ExchangeMatrix) -> Seed:
    """Initial seed with principal coefficients: y_j is the j-th generator."""
    n = b.n
    x_names = tuple(f"x{i}" for i in range(1, n + 1))
    trop_names = tuple(f"y{i}" for i in range(1, n + 1))
    ambient = x_names + trop_names
    cluster = tuple(LaurentPoly.variable(ambient, x) for x in x_names)
    coeffs = tuple(TropicalElement.generator(n, j) for j in range(1, n + 1))
    return Seed(cluster, coeffs, b, x_names, trop_names, b, True)


def _trop_monomial(seed: Seed, t: TropicalElement) -> LaurentPoly:
    exps = (0,) * len(seed.x_names) + t.exponents
    return LaurentPoly.monomial(seed.ambient_vars, exps)


def mutate_seed(seed: Seed, k: int) -> Seed:
    """Seed mutation at direction k (1-based).

    The new variable is computed in the Laurent ring and the exchange
    relation's denominator must clear exactly; a remainder raises
    ExactnessError and signals an implementation bug, not bad input.
    """
    n = seed.n
    if not 1 <= k <= n:
        raise IndexError(f"direction {k} out of range 1..{n}")
    k0 = k - 1
    rows = seed.B.matrix.rows
    yk = seed.coeffs[k0]
    yk_floor = yk.oplus_one()

    new_coeffs = []
    for i0 in range(n):
        if i0 == k0:
            new_coeffs.append(yk.inverse())
        else:
            e = rows[k0][i0]
            new_coeffs.append(
                seed.coeffs[i0] * (yk ** max(e, 0)) * (yk_floor ** (-e))
            )

    pos = LaurentPoly.one(seed.ambient_vars)
    neg = LaurentPoly.one(seed.ambient_vars)
    for i0 in range(n):
        e = rows[i0][k0]
        if e > 0:
            pos = pos * seed.cluster[i0] ** e
        elif e < 0:
            neg = neg * seed.cluster[i0] ** (-e)
    numerator = _trop_monomial(seed, yk) * pos + neg
    denominator = _trop_monomial(seed, yk_floor) * seed.cluster[k0]
    new_x = numerator.divide_exact(denominator)

    cluster = list(seed.cluster)
    cluster[k0] = new_x
    return replace(
        seed,
        cluster=tuple(cluster),
        coeffs=tuple(new_coeffs),
        B=ExchangeMatrix(mutate_matrix(seed.B, k)),
    )


def mutate_seed_along(seed: Seed, path: Sequence[int]) -> Seed:
    for k in path:
        seed = mutate_seed(seed, k)
    return seed


def _require_principal(seed: Seed) -> None:
    if not seed.principal:
        raise UnsupportedCoefficientsError("operation requires principal coefficients")


def f_polynomial(seed: Seed, i: int) -> LaurentPoly:
    """Cluster variable i with every initial x set to 1; a polynomial in y."""
    _require_principal(seed)
    if not 1 <= i <= seed.n:
        raise IndexError(f"index {i} out of range 1..{seed.n}")
    return seed.cluster[i - 1].substitute_one(seed.x_names)


def g_vector_from_grading(seed: Seed, i: int) -> GradedVector:
    """Common degree vector of cluster variable i under deg(x_i)=e_i, deg(y_j)=-b_j."""
    _require_principal(seed)
    if not 1 <= i <= seed.n:
        raise IndexError(f"index {i} out of range 1..{seed.n}")
    n = seed.n
    b0 = seed.initial_B.matrix.rows
    deg = None
    for exps in seed.cluster[i - 1].terms:
        a, m = exps[:n], exps[n:]
        d = tuple(a[r] - sum(b0[r][j] * m[j] for j in range(n)) for r in range(n))
        if deg is None:
            deg = d
        elif deg != d:
            raise ExactnessError(
                f"cluster variable {i} is not homogeneous: degrees {deg} and {d}"
            )
    if deg is None:
        raise ExactnessError(f"cluster variable {i} is zero")
    return deg


def c_matrix_of(seed: Seed) -> IntMatrix:
    """Columns are the tropical exponent vectors of the coefficients."""
    _require_principal(seed)
    n = seed.n
    return IntMatrix(
        tuple(
            tuple(seed.coeffs[j].exponents[i] for j in range(n)) for i in range(n)
        )
    )


def g_matrix_of(seed: Seed) -> IntMatrix:
    """Columns are the g-vectors of the cluster variables, from the grading."""
    n = seed.n
    cols = [g_vector_from_grading(seed, i) for i in range(1, n + 1)]
    return IntMatrix(tuple(tuple(col[i] for col in cols) for i in range(n)))


def check_positivity(seed: Seed) -> bool:
    return all(p.has_positive_coefficients() for p in seed.cluster)


def check_constant_term_one(f: LaurentPoly) -> bool:
    return f.constant_term() == 1


def initial_recurrence_data(b: ExchangeMatrix):
    """(F, C, G) at the initial vertex: all-ones polynomials and identities."""
    n = b.n
    y_vars = tuple(f"y{i}" for i in range(1, n + 1))
    return (
        tuple(LaurentPoly.one(y_vars) for _ in range(n)),
        IntMatrix.identity(n),
        IntMatrix.identity(n),
    )


def recurrence_step(
    F: Sequence[LaurentPoly], C: IntMatrix, G: IntMatrix, B, k: int
):
    """One edge of the F-/c-/g-recurrences, direction k (1-based).

    The c-rule is the direct form c'_ij = c_ij + c_ik[b_kj]_+ + [-c_ik]_+ b_kj
    for j != k. The g-rule uses the sign eps of C's k-th column, which trades
    the initial-matrix correction term for column sign coherence; a zero or
    mixed-sign column raises SignUndefinedError. The F-rule divides by F_k
    exactly. Exponents on the y's take positive parts: the plain recurrence
    without them would not stay polynomial.
    """
    rows = B.matrix.rows if isinstance(B, ExchangeMatrix) else B.rows
    n = len(rows)
    if not 1 <= k <= n:
        raise IndexError(f"direction {k} out of range 1..{n}")
    if C.nrows != n or G.nrows != n or len(F) != n:
        raise DimensionError("recurrence data sizes disagree")
    k0 = k - 1

    c = C.rows
    new_c = []
    for i in range(n):
        row = []
        for j in range(n):
            if j == k0:
                row.append(-c[i][j])
            else:
                row.append(
                    c[i][j]
                    + c[i][k0] * max(rows[k0][j], 0)
                    + max(-c[i][k0], 0) * rows[k0][j]
                )
        new_c.append(tuple(row))
    C2 = IntMatrix(new_c)

    eps = column_sign(C, k)
    G2 = G * edge_matrix_col(IntMatrix(rows), k, eps)

    y_vars = F[0].vars
    pos = LaurentPoly.monomial(
        y_vars, tuple(max(c[j][k0], 0) for j in range(n))
    )
    neg = LaurentPoly.monomial(
        y_vars, tuple(max(-c[j][k0], 0) for j in range(n))
    )
    for j in range(n):
        e = rows[j][k0]
        if e > 0:
            pos = pos * F[j] ** e
        elif e < 0:
            neg = neg * F[j] ** (-e)
    new_F = list(F)
    new_F[k0] = (pos + neg).divide_exact(F[k0])
    return tuple(new_F), C2, G2


def recurrence_along(b: ExchangeMatrix, path: Sequence[int]):
    """Chain recurrence_step along a path, also mutating B; returns (F, C, G, B_t)."""
    F, C, G = initial_recurrence_data(b)
    cur = b
    for k in path:
        F, C, G = recurrence_step(F, C, G, cur, k)
        cur = ExchangeMatrix(mutate_matrix(cur, k))
    return F, C, G, cur


def verify_yhat_identity(b: ExchangeMatrix, path: Sequence[int]) -> bool:
    """Check Y_{j,t} = (prod_i Y_i^{c_ij}) * (prod_i F_i(Y)^{b_ij}) for all j.

    The left side mutates the coefficient tuple directly in the field of
    rational functions Q(Y_1..Y_n), reading (+) as ordinary addition; the
    right side assembles C_t, B_t and the F-polynomials independently via
    the edge recurrences. Both sides are compared as reduced fractions.
    """
    import sympy as sp

    n = b.n
    Y = sp.symbols(" ".join(f"Y{i}" for i in range(1, n + 1)), positive=True)
    if n == 1:
        Y = (Y,)

    yy = list(Y)
    bb = b.matrix
    for k in path:
        k0 = k - 1
        rows = bb.rows
        nxt = list(yy)
        nxt[k0] = sp.cancel(1 / yy[k0])
        for i0 in range(n):
            if i0 == k0:
                continue
            e = rows[k0][i0]
            nxt[i0] = sp.cancel(yy[i0] * yy[k0] ** max(e, 0) * (yy[k0] + 1) ** (-e))
        yy = nxt
        bb = mutate_matrix(bb, k)

    F, C, G, b_t = recurrence_along(b, path)
    f_sym = [
        sum(coef * sp.prod([Y[i] ** e[i] for i in range(n)]) for e, coef in f.terms.items())
        for f in F
    ]
    for j0 in range(n):
        rhs = sp.Integer(1)
        for i0 in range(n):
            rhs *= Y[i0] ** C[i0, j0]
        for i0 in range(n):
            e = b_t.matrix[i0, j0]
            if e:
                rhs *= f_sym[i0] ** e
        diff = sp.cancel(sp.together(yy[j0] - rhs))
        num, den = sp.fraction(diff)
        if sp.expand(num) != 0:
            return False
    return True


def verify_yhat_to_depth(b: ExchangeMatrix, depth: int) -> CheckReport:
    """Run verify_yhat_identity on every reduced mutation path up to depth.

    Reduced = no immediate repeats; path counts stay small at the depths
    this is meant for, so no state dedup is attempted.
    """
    checked = 0
    stack = [()]
    while stack:
        path = stack.pop()
        if not verify_yhat_identity(b, path):
            return CheckReport(
                "yhat-identity", "fail", max(len(path) - 1, 0), checked,
                {"path": list(path)},
            )
        checked += 1
        if len(path) < depth:
            last = path[-1] if path else 0
            for k in range(b.n, 0, -1):
                if k != last:
                    stack.append(path + (k,))
    return CheckReport("yhat-identity", "pass", depth, checked)
