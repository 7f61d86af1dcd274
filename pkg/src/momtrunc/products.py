"""Finite truncations of momentum-matrix products.

The square-cutoff triple product converges (delicately) while the direct
middle-index expansion of P P^2 P and the fourth power of the truncated
matrix diverge; the operations here expose both behaviours with fixed,
reproducible summation orders.

Sign bookkeeping: with P = i A the cube is P^3 = -i A^3, so the real number
reported for a triple product is -(A^3)_mn, and the square is P^2 = -A A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .operator import (
    _check_index,
    _square_array,
    momentum_array,
    momentum_entry,
    momentum_row,
    p3_hermitian_entry,
)

__all__ = [
    "ConvergenceSeries",
    "triple_product_sum",
    "sweep_triple_product",
    "p2_partial_sum",
    "associativity_gap",
    "pp2p_partial_sum",
    "quad_power_entry",
]


@dataclass(frozen=True)
class ConvergenceSeries:
    """Values of a truncated sum at increasing truncation sizes."""

    m: int
    n: int
    points: tuple[tuple[int, float], ...]
    target: float | None = None

    def __post_init__(self) -> None:
        sizes = [size for size, _ in self.points]
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError("points must be strictly increasing in size")

    @property
    def sizes(self) -> list[int]:
        return [size for size, _ in self.points]

    @property
    def values(self) -> list[float]:
        return [value for _, value in self.points]


def triple_product_sum(m: int, n: int, size: int, *, compensated: bool = True) -> float:
    """Square-cutoff triple product: -(A^3)_mn summed over r, s = 1..size.

    This is the real number conventionally reported for the i-factored cube
    (the remaining factor of the stored matrices is i^3 = -i).  The double
    sum runs with the outer index r ascending and the inner index s
    ascending; partial sums are exactly rounded via math.fsum.  Set
    ``compensated=False`` for a plain left-to-right accumulation, kept only
    to demonstrate that the convergence behaviour is not a rounding
    artifact.
    """
    m = _check_index(m, "m")
    n = _check_index(n, "n")
    size = _check_index(size, "size")
    if size < max(m, n):
        raise ValueError(f"size must be >= max(m, n) = {max(m, n)}, got {size}")
    a = momentum_array(size)
    left = a[m - 1]  # a_mr, r ascending
    right = a[:, n - 1]  # a_sn, s ascending
    terms = left[:, None] * (a * right[None, :])  # terms[r, s] = a_mr a_rs a_sn
    if compensated:
        row_sums = [math.fsum(row.tolist()) for row in terms]
        return -math.fsum(row_sums)
    total = 0.0
    for row in terms:
        row_total = 0.0
        for t in row.tolist():
            row_total += t
        total += row_total
    return -total


def sweep_triple_product(m: int, n: int, sizes: list[int]) -> ConvergenceSeries:
    """Triple product at each truncation size, with its observed limit.

    Each point is a fresh evaluation of :func:`triple_product_sum`; the
    target is the Hermitian-part entry the sequence converges to.
    """
    if not sizes:
        raise ValueError("sizes must be nonempty")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly ascending")
    points = tuple((int(size), triple_product_sum(m, n, size)) for size in sizes)
    return ConvergenceSeries(m=m, n=n, points=points, target=p3_hermitian_entry(m, n))


def p2_partial_sum(m: int, n: int, size: int) -> float:
    """Partial sum of the square's entry: -sum_{s<=size} a_ms a_sn.

    Converges to m n on the diagonal and to 0 off it, with error O(1/size).
    Terms ascend in s and are summed exactly (math.fsum).
    """
    m = _check_index(m, "m")
    n = _check_index(n, "n")
    size = _check_index(size, "size")
    # a_sn = -a_ns, so -a_ms a_sn = a_ms a_ns.
    terms = momentum_row(m, size) * momentum_row(n, size)
    return math.fsum(terms.tolist())


def associativity_gap(m: int, n: int) -> tuple[float, float]:
    """Both one-sided products with the exact square, i-factored.

    The exact square is diagonal, so each infinite sum collapses to a single
    term: multiplying by the square on the right gives n^2 a_mn, on the left
    m^2 a_mn.  For m + n odd the two sides differ by the factor n^2/m^2 --
    the associative law fails for the infinite matrices.  For m + n even
    both sides vanish.
    """
    entry = momentum_entry(m, n)
    return (float(n * n) * entry, float(m * m) * entry)


def pp2p_partial_sum(m: int, n: int, s_max: int) -> float:
    """Partial sum of the middle-index expansion of P P^2 P.

    Value: -16 m n / pi^2 * sum_s s^4 / ((m^2 - s^2)(s^2 - n^2)) over s of
    parity opposite to m and n, s <= s_max.  Each summand tends to -1 as s
    grows, so the partial sums diverge linearly in s_max.  Requires m + n
    even (for odd m + n the expansion has no common middle parity).
    """
    m = _check_index(m, "m")
    n = _check_index(n, "n")
    s_max = _check_index(s_max, "s_max")
    if (m + n) % 2 == 1:
        raise ValueError(f"m + n must be even, got m={m}, n={n}")
    start = 2 if m % 2 == 1 else 1
    s = np.arange(start, s_max + 1, 2, dtype=float)
    if s.size == 0:
        return 0.0
    terms = s**4 / ((m * m - s**2) * (s**2 - n * n))
    prefactor = -16.0 * m * n / math.pi**2
    return prefactor * math.fsum(terms.tolist())


def quad_power_entry(m: int, n: int, size: int) -> float:
    """Entry (m, n) of the fourth power of the size-truncated matrix.

    Computed as sum_s B_ms B_sn with B the full dense square of the
    truncation (cached per size).  Unlike the exact fourth power, whose
    entries are m^2 n^2 on the diagonal and 0 elsewhere, this diverges as
    the truncation grows: the middle sum picks up contributions from s of
    the order of the truncation size.
    """
    m = _check_index(m, "m")
    n = _check_index(n, "n")
    size = _check_index(size, "size")
    if size < max(m, n):
        raise ValueError(f"size must be >= max(m, n) = {max(m, n)}, got {size}")
    square = _square_array(size)
    return float(np.dot(square[m - 1], square[:, n - 1]))
