"""Sparse multivariate Laurent polynomials with exact integer coefficients.

Terms are stored as a map from integer exponent vectors (tuples aligned with
the ordered variable list) to nonzero integer coefficients. The canonical
serialization sorts terms lexicographically by exponent vector; that string
is what seed deduplication hashes on.
"""

from __future__ import annotations

import heapq
import json
from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

from .errors import DimensionError, ExactnessError, ParseError

Exps = Tuple[int, ...]


class LaurentPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Dict[Exps, int]):
        self.vars = tuple(variables)
        width = len(self.vars)
        clean: Dict[Exps, int] = {}
        for exps, coef in terms.items():
            if len(exps) != width:
                raise DimensionError(
                    f"exponent vector {exps} does not match {width} variables"
                )
            coef = int(coef)
            if coef:
                clean[tuple(int(e) for e in exps)] = coef
        self.terms = clean

    # ---- constructors ----

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "LaurentPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Sequence[str], c: int) -> "LaurentPoly":
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def one(cls, variables: Sequence[str]) -> "LaurentPoly":
        return cls.constant(variables, 1)

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "LaurentPoly":
        variables = tuple(variables)
        idx = variables.index(name)
        exps = tuple(int(i == idx) for i in range(len(variables)))
        return cls(variables, {exps: 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Sequence[int], coef: int = 1) -> "LaurentPoly":
        return cls(variables, {tuple(exps): coef})

    # ---- queries ----

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * len(self.vars): 1}

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * len(self.vars), 0)

    def has_positive_coefficients(self) -> bool:
        return all(c > 0 for c in self.terms.values()) and bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    # ---- ring operations ----

    def _same_ring(self, other: "LaurentPoly") -> None:
        if self.vars != other.vars:
            raise DimensionError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.vars, other)
        self._same_ring(other)
        out = dict(self.terms)
        for exps, coef in other.terms.items():
            s = out.get(exps, 0) + coef
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return LaurentPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.vars, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        self._same_ring(other)
        # multiplying by a monomial is an exponent shift, no accumulation
        if len(other.terms) == 1:
            (e2, c2), = other.terms.items()
            return LaurentPoly(
                self.vars,
                {_add(e1, e2): c1 * c2 for e1, c1 in self.terms.items()},
            )
        if len(self.terms) == 1:
            return other * self
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Exps, int] = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                s = get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return LaurentPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self.terms) != 1:
                raise ExactnessError("negative power of a non-monomial")
            (exps, coef), = self.terms.items()
            if coef not in (1, -1):
                raise ExactnessError("negative power with non-unit coefficient")
            return LaurentPoly(
                self.vars, {tuple(v * e for v in exps): coef if e % 2 else 1}
            )
        result = LaurentPoly.one(self.vars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact division in the Laurent ring.

        Shifts both operands into the polynomial range, then reduces by the
        lex-leading term of the divisor. Any remainder, or a fractional
        quotient coefficient, raises ExactnessError: callers use this where
        exactness over the integers is guaranteed.
        """
        self._same_ring(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        if len(divisor.terms) == 1:
            (e2, c2), = divisor.terms.items()
            out: Dict[Exps, int] = {}
            for e1, c1 in self.terms.items():
                q, r = divmod(c1, c2)
                if r:
                    raise ExactnessError(
                        "Laurent division produced a non-integer coefficient"
                    )
                out[_sub(e1, e2)] = q
            return LaurentPoly(self.vars, out)
        shift_n = _min_exps(self.terms)
        shift_d = _min_exps(divisor.terms)
        num = {_sub(e, shift_n): Fraction(c) for e, c in self.terms.items()}
        den = list(
            {_sub(e, shift_d): Fraction(c) for e, c in divisor.terms.items()}.items()
        )
        lead_d = max(e for e, _ in den)
        lead_c = dict(den)[lead_d]
        # lazy-deletion max-heap over negated exponent tuples keeps leading
        # term retrieval logarithmic on large numerators
        heap = [tuple(-v for v in e) for e in num]
        heapq.heapify(heap)
        quot: Dict[Exps, Fraction] = {}
        while num:
            lead_n = tuple(-v for v in heap[0])
            if lead_n not in num:
                heapq.heappop(heap)
                continue
            t_exps = _sub(lead_n, lead_d)
            if any(v < 0 for v in t_exps):
                raise ExactnessError("Laurent division left a remainder")
            t_coef = num[lead_n] / lead_c
            quot[t_exps] = t_coef
            for e, c in den:
                key = _add(e, t_exps)
                cur = num.get(key)
                if cur is None:
                    num[key] = -c * t_coef
                    heapq.heappush(heap, tuple(-v for v in key))
                else:
                    s = cur - c * t_coef
                    if s:
                        num[key] = s
                    else:
                        del num[key]
        unshift = _sub(shift_n, shift_d)
        out = {}
        for e, c in quot.items():
            if c.denominator != 1:
                raise ExactnessError("Laurent division produced a non-integer coefficient")
            out[_add(e, unshift)] = int(c)
        return LaurentPoly(self.vars, out)

    def substitute_one(self, names: Iterable[str]) -> "LaurentPoly":
        """Set the named variables to 1 and drop them from the ring."""
        drop = set(names)
        unknown = drop - set(self.vars)
        if unknown:
            raise DimensionError(f"unknown variables: {sorted(unknown)}")
        keep = [i for i, v in enumerate(self.vars) if v not in drop]
        out: Dict[Exps, int] = {}
        for exps, coef in self.terms.items():
            key = tuple(exps[i] for i in keep)
            s = out.get(key, 0) + coef
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return LaurentPoly(tuple(self.vars[i] for i in keep), out)

    # ---- identity and serialization ----

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coef in self.sorted_terms():
            factors = [
                f"{v}^{e}" if e != 1 else v
                for v, e in zip(self.vars, exps)
                if e != 0
            ]
            if not factors:
                parts.append(str(coef))
            elif coef == 1:
                parts.append("*".join(factors))
            elif coef == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{coef}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                {"exp": list(e), "coef": c} for e, c in self.sorted_terms()
            ],
        }

    def canonical(self) -> str:
        """Deterministic serialization; the dedup key for seeds."""
        return json.dumps(self.to_json(), separators=(",", ":"))


def laurent_from_json(data) -> LaurentPoly:
    if not isinstance(data, dict) or "vars" not in data or "terms" not in data:
        raise ParseError("Laurent JSON must have 'vars' and 'terms'")
    variables = data["vars"]
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise ParseError("'vars' must be a list of names")
    terms: Dict[Exps, int] = {}
    for item in data["terms"]:
        try:
            exps = tuple(int(e) for e in item["exp"])
            coef = int(item["coef"])
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"bad term: {item!r}") from None
        if exps in terms:
            raise ParseError(f"duplicate exponent vector {list(exps)}")
        terms[exps] = coef
    try:
        return LaurentPoly(variables, terms)
    except DimensionError as exc:
        raise ParseError(str(exc)) from None


def _min_exps(terms: Dict[Exps, int]) -> Exps:
    it = iter(terms)
    acc = list(next(it))
    for exps in it:
        for i, v in enumerate(exps):
            if v < acc[i]:
                acc[i] = v
    return tuple(acc)


def _add(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Exps, b: Exps) -> Exps:
    return tuple(x - y for x, y in zip(a, b))
