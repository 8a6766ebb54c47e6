"""Arithmetic modes shared by the linear-model stack.

A model instance is built in exactly one mode.  Exact mode works over
``fractions.Fraction`` and supports equality testing with zero tolerance;
float mode carries an explicit tolerance used by every comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class ArithmeticMode:
    name: str
    tolerance: float = 0.0

    @property
    def exact(self) -> bool:
        return self.name == "exact"

    def of(self, value):
        """Coerce an int/Fraction into this mode's scalar type."""
        if self.exact:
            return Fraction(value)
        return float(value)

    def is_zero(self, value) -> bool:
        if self.exact:
            return value == 0
        return abs(value) <= self.tolerance

    def eq(self, a, b) -> bool:
        return self.is_zero(a - b)


EXACT = ArithmeticMode("exact", 0.0)


def float_mode(tolerance: float = 1e-10) -> ArithmeticMode:
    if tolerance <= 0:
        raise ValueError("float mode requires a positive tolerance")
    return ArithmeticMode("float", tolerance)
