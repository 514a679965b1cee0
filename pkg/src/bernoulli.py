"""
Bernoulli Numbers - Exact values in the x/(e^x - 1) convention (B_1 = -1/2)
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, List, Mapping, Tuple

__all__ = ["BernoulliTable", "bernoulli_upto", "recurrence_residuals", "series_product"]


@dataclass(frozen=True)
class BernoulliTable:
    """B_0..B_n as exact Fractions, indexed from 0"""

    values: Tuple[Fraction, ...]

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def get(self, i: int) -> Fraction:
        """B_i, extending the table on demand"""
        if i < len(self.values):
            return self.values[i]
        return bernoulli_upto(i)[i]

    def perturbed(self, overrides: Mapping[int, Fraction]) -> "BernoulliTable":
        """Copy with selected entries replaced; used to build negative controls"""
        if not overrides:
            return self
        size = max(len(self.values), max(overrides) + 1)
        values = list(bernoulli_upto(size - 1).values) if size > len(self.values) else list(self.values)
        for i, value in overrides.items():
            if i < 0:
                raise ValueError(f"Bernoulli index must be >= 0, got {i}")
            values[i] = Fraction(value)
        return BernoulliTable(tuple(values))


def bernoulli_upto(n: int) -> BernoulliTable:
    """
    Bernoulli numbers B_0..B_n from the recurrence
        sum_{k=0}^{m} C(m+1, k) B_k = 0   (m >= 1),  B_0 = 1.

    Args:
        n: highest index, n >= 0

    Returns:
        BernoulliTable of length n + 1
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    B: List[Fraction] = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum((comb(m + 1, k) * B[k] for k in range(m)), Fraction(0))
        B.append(-s / (m + 1))
    return BernoulliTable(tuple(B))


def recurrence_residuals(table: BernoulliTable) -> List[Fraction]:
    """sum_{k=0}^{m} C(m+1,k) B_k for m = 1..n; all zero for a correct table"""
    return [
        sum((comb(m + 1, k) * table[k] for k in range(m + 1)), Fraction(0))
        for m in range(1, table.n + 1)
    ]


def series_product(table: BernoulliTable, order: int) -> List[Fraction]:
    """
    Coefficients of (sum_i B_i x^i / i!) * ((e^x - 1)/x) modulo x^order.
    A correct table gives [1, 0, 0, ...].
    """
    if order > len(table):
        raise ValueError(f"table has {len(table)} entries, need {order}")
    gen = [table[i] / factorial(i) for i in range(order)]
    # (e^x - 1)/x = sum_j x^j / (j+1)!
    other = [Fraction(1, factorial(j + 1)) for j in range(order)]
    return [sum((gen[i] * other[k - i] for i in range(k + 1)), Fraction(0)) for k in range(order)]
