"""Two-variable boolean predicates and their sparsifiability classes.

A predicate is stored as a 4-bit truth table.  Bit ``2*x + y`` of the table
holds ``P(x, y)``, so inputs are ordered (0,0), (0,1), (1,0), (1,1) and the
integer value of the table runs 0..15 in the same order as the usual
naming chart ("0", "nOr", "01", ..., "Or", "1").
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

NAMES = (
    "0", "nOr", "01", "0x", "Dicut", "x0", "Cut", "nAnd",
    "And", "unCut", "x1", "n10", "1x", "n01", "Or", "1",
)
_BY_NAME = {name: table for table, name in enumerate(NAMES)}


class SparsifiabilityClass(enum.Enum):
    NONTRIVIAL = "SparsifiableNontrivial"
    TRIVIAL = "SparsifiableTrivial"
    NON_SPARSIFIABLE = "NonSparsifiable"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class Predicate:
    table: int

    def __post_init__(self):
        if not isinstance(self.table, int) or not 0 <= self.table < 16:
            raise ValueError(f"truth table must be an integer in [0, 16), got {self.table!r}")

    @property
    def name(self) -> str:
        return NAMES[self.table]

    @property
    def bits(self) -> tuple[int, int, int, int]:
        """Truth table as (P(0,0), P(0,1), P(1,0), P(1,1))."""
        return tuple((self.table >> i) & 1 for i in range(4))

    def __call__(self, x: int, y: int) -> int:
        return evaluate(self, x, y)

    def __repr__(self) -> str:
        return f"Predicate({self.name})"

    @classmethod
    def from_name(cls, name: str) -> "Predicate":
        try:
            return cls(_BY_NAME[name])
        except KeyError:
            raise ValueError(f"unknown predicate {name}") from None


def predicate_from_truth_table(bits: Iterable[int]) -> Predicate:
    """Build the predicate whose values on (00, 01, 10, 11) are ``bits``."""
    bits = [int(b) for b in bits]
    if len(bits) != 4 or any(b not in (0, 1) for b in bits):
        raise ValueError("expected exactly four bits")
    return Predicate(sum(b << i for i, b in enumerate(bits)))


def evaluate(p: Predicate, x: int, y: int) -> int:
    return (p.table >> (2 * int(x) + int(y))) & 1


ZERO, NOR, P01, P0X, DICUT, X0, CUT, NAND = (Predicate(t) for t in range(8))
AND, UNCUT, X1, N10, P1X, N01, OR, ONE = (Predicate(t) for t in range(8, 16))

ALL_PREDICATES = tuple(Predicate(t) for t in range(16))

TRIVIAL = frozenset({ZERO, ONE, P0X, X0, X1, P1X})
# predicates whose value depends only on the first / second argument
SOURCE_ONLY = frozenset({P0X, P1X})
TARGET_ONLY = frozenset({X0, X1})


def classify(p: Predicate) -> SparsifiabilityClass:
    if bin(p.table).count("1") == 1:
        return SparsifiabilityClass.NON_SPARSIFIABLE
    if p in TRIVIAL:
        return SparsifiabilityClass.TRIVIAL
    return SparsifiabilityClass.NONTRIVIAL
