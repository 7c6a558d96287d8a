"""Semi-totalistic rule space for two-chain actin automata.

A rule R(phi, psi) is a pair of 5-entry lookup tables indexed by the
neighbourhood sum 0..4: ``phi`` decides the next state of a resting (0)
cell, ``psi`` of an excited (1) cell.  Each table is written as five bits
b0..b4 with decimal value sum(2**(4-k) * b_k), so the most significant
bit answers "what happens on sum 0".  There are 32*32 = 1024 rules.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

__all__ = [
    "Subrule",
    "Rule",
    "rule_from_decimal",
    "rule_to_decimal",
    "rule_index",
    "enumerate_rules",
]


@dataclass(frozen=True)
class Subrule:
    """One 5-bit transition table, indexed by neighbourhood sum 0..4."""

    bits: tuple[int, int, int, int, int]

    def __post_init__(self):
        if len(self.bits) != 5:
            raise ValueError(f"subrule needs exactly 5 bits, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"subrule bits must be 0 or 1, got {self.bits}")

    @classmethod
    def from_decimal(cls, value: int) -> "Subrule":
        if not 0 <= value <= 31:
            raise ValueError(f"subrule code must be in [0, 31], got {value}")
        return cls(tuple((value >> (4 - k)) & 1 for k in range(5)))

    @property
    def decimal(self) -> int:
        return sum(b << (4 - k) for k, b in enumerate(self.bits))

    def __call__(self, total: int) -> int:
        """Next state for a cell whose four neighbours sum to ``total``."""
        return self.bits[total]


@dataclass(frozen=True)
class Rule:
    """Pair of subrules: ``phi`` for resting cells, ``psi`` for excited ones."""

    phi: Subrule
    psi: Subrule

    def table(self) -> np.ndarray:
        """2x5 uint8 lookup: ``table[state, neighbour_sum]`` -> next state."""
        return np.array([self.phi.bits, self.psi.bits], dtype=np.uint8)

    def __str__(self) -> str:
        return f"R({self.phi.decimal},{self.psi.decimal})"


def rule_from_decimal(phi_dec: int, psi_dec: int) -> Rule:
    """Build R(phi_dec, psi_dec) from the two decimal subrule codes."""
    return Rule(Subrule.from_decimal(phi_dec), Subrule.from_decimal(psi_dec))


def rule_to_decimal(rule: Rule) -> tuple[int, int]:
    """Decimal (phi, psi) codes of a rule; inverse of rule_from_decimal."""
    return rule.phi.decimal, rule.psi.decimal


def rule_index(rule: Rule) -> int:
    """Lexicographic index 32*phi + psi in [0, 1023]."""
    return 32 * rule.phi.decimal + rule.psi.decimal


def enumerate_rules() -> Iterator[Rule]:
    """All 1024 rules in lexicographic (phi, psi) order."""
    for phi in range(32):
        for psi in range(32):
            yield rule_from_decimal(phi, psi)
