"""Elements of a tropical semifield on finitely many generators.

An element is the monomial with the given integer exponent vector over the
generators z_1..z_m; multiplication adds exponents and tropical addition
takes the componentwise minimum.
"""

from __future__ import annotations

from typing import Sequence, Tuple

from .errors import DimensionError


class TropicalElement:
    __slots__ = ("exponents",)

    def __init__(self, exponents: Sequence[int]):
        self.exponents: Tuple[int, ...] = tuple(int(e) for e in exponents)

    @classmethod
    def one(cls, m: int) -> "TropicalElement":
        return cls((0,) * m)

    @classmethod
    def generator(cls, m: int, j: int) -> "TropicalElement":
        """The j-th generator, 1-based."""
        if not 1 <= j <= m:
            raise IndexError(f"generator index {j} out of range 1..{m}")
        return cls(tuple(int(i == j - 1) for i in range(m)))

    def _check(self, other: "TropicalElement") -> None:
        if len(self.exponents) != len(other.exponents):
            raise DimensionError("tropical elements over different generator sets")

    def __mul__(self, other: "TropicalElement") -> "TropicalElement":
        self._check(other)
        return TropicalElement(
            tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def __truediv__(self, other: "TropicalElement") -> "TropicalElement":
        self._check(other)
        return TropicalElement(
            tuple(a - b for a, b in zip(self.exponents, other.exponents))
        )

    def __pow__(self, e: int) -> "TropicalElement":
        return TropicalElement(tuple(a * e for a in self.exponents))

    def inverse(self) -> "TropicalElement":
        return TropicalElement(tuple(-a for a in self.exponents))

    def oplus(self, other: "TropicalElement") -> "TropicalElement":
        """Tropical addition: componentwise minimum of exponents."""
        self._check(other)
        return TropicalElement(
            tuple(min(a, b) for a, b in zip(self.exponents, other.exponents))
        )

    def oplus_one(self) -> "TropicalElement":
        """self (+) 1, i.e. exponents clamped to at most 0."""
        return TropicalElement(tuple(min(a, 0) for a in self.exponents))

    def is_one(self) -> bool:
        return all(a == 0 for a in self.exponents)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TropicalElement) and self.exponents == other.exponents
        )

    def __hash__(self) -> int:
        return hash(("TropicalElement", self.exponents))

    def __repr__(self) -> str:
        return f"TropicalElement({list(self.exponents)})"
