import math

import numpy as np
import pytest

from conftest import TABLE1, tol_from_printed
from momtrunc import products
from momtrunc.operator import momentum_array, momentum_entry, p3_hermitian_entry
from momtrunc.products import (
    ConvergenceSeries,
    associativity_gap,
    p2_partial_sum,
    pp2p_partial_sum,
    quad_power_entry,
    sweep_triple_product,
    triple_product_sum,
)


def brute_triple(m: int, n: int, size: int) -> float:
    """Independent O(size^2) oracle built from scalar entries only."""
    row_sums = [
        math.fsum(
            momentum_entry(m, r) * momentum_entry(r, s) * momentum_entry(s, n)
            for s in range(1, size + 1)
        )
        for r in range(1, size + 1)
    ]
    return -math.fsum(row_sums)


class TestTripleProduct:
    @pytest.mark.parametrize("m,n,size", [(1, 2, 40), (2, 3, 55), (4, 7, 60)])
    def test_matches_brute_force_oracle(self, m, n, size):
        lib = triple_product_sum(m, n, size)
        ref = brute_triple(m, n, size)
        assert lib == pytest.approx(ref, rel=1e-13)

    def test_matches_printed_reference_cells(self):
        for (m, n), size in [((1, 2), 100), ((2, 3), 999), ((60, 91), 99)]:
            printed = TABLE1[(m, n)][size]
            value = triple_product_sum(m, n, size)
            assert value == pytest.approx(float(printed), abs=tol_from_printed(printed))

    def test_diagonal_cancels_exactly(self):
        # terms are antisymmetric under swapping the two middle labels, so
        # exact summation returns a signed zero
        assert triple_product_sum(1, 1, 50) == 0.0
        assert triple_product_sum(3, 3, 60) == 0.0

    def test_swap_antisymmetry(self):
        for m, n, size in [(1, 2, 60), (2, 5, 60)]:
            assert triple_product_sum(m, n, size) == pytest.approx(
                -triple_product_sum(n, m, size), rel=1e-12
            )

    def test_compensated_vs_naive(self):
        comp = triple_product_sum(1, 2, 2000)
        naive = triple_product_sum(1, 2, 2000, compensated=False)
        assert abs(comp - naive) <= 1e-9 * abs(comp)

    def test_oscillation_straddles_target(self):
        # consecutive odd/even truncation sizes land on opposite sides of the
        # limit once the size is well beyond the labels
        for m, n, sizes in [
            (1, 2, [99, 100, 999, 1000]),
            (2, 3, [99, 100]),
            (20, 31, [999, 1000]),
        ]:
            series = sweep_triple_product(m, n, sizes)
            errors = [value - series.target for value in series.values]
            for err_odd, err_even in zip(errors[::2], errors[1::2]):
                assert err_odd * err_even < 0

    def test_requires_size_at_least_max_label(self):
        with pytest.raises(ValueError):
            triple_product_sum(3, 5, 4)

    def test_rejects_bad_labels(self):
        with pytest.raises(ValueError):
            triple_product_sum(0, 1, 10)


class TestSweep:
    def test_matches_fresh_evaluations(self):
        series = sweep_triple_product(1, 2, [50, 99, 100])
        for size, value in series.points:
            fresh = triple_product_sum(1, 2, size)
            assert value == pytest.approx(fresh, rel=1e-12)
        assert series.target == p3_hermitian_entry(1, 2)

    def test_printed_pair(self):
        series = sweep_triple_product(1, 2, [99, 100])
        assert series.values[0] == pytest.approx(2.156, abs=5e-4)
        assert series.values[1] == pytest.approx(2.088, abs=5e-4)

    def test_diagonal_sweep_is_zero(self):
        assert sweep_triple_product(1, 1, [50]).values == [0.0]

    def test_validates_sizes(self):
        with pytest.raises(ValueError):
            sweep_triple_product(1, 2, [])
        with pytest.raises(ValueError):
            sweep_triple_product(1, 2, [100, 50])

    def test_series_type_validates_points(self):
        with pytest.raises(ValueError):
            ConvergenceSeries(m=1, n=2, points=((10, 0.5), (10, 0.6)))


class TestSquarePartialSums:
    def test_diagonal_converges_to_square(self):
        value = p2_partial_sum(1, 1, 10**5)
        assert abs(value - 1.0) <= 1e-3
        # the error is genuinely O(1/size), not rounding noise
        assert 1e-7 <= abs(value - 1.0) <= 2e-5

    def test_off_diagonal_same_parity_converges_to_zero(self):
        assert abs(p2_partial_sum(1, 3, 10**5)) <= 1e-3

    def test_opposite_parity_vanishes_exactly(self):
        assert p2_partial_sum(1, 2, 1000) == 0.0

    def test_monotone_from_below_on_diagonal(self):
        values = [p2_partial_sum(2, 2, size) for size in range(1, 11)]
        assert all(v < 4.0 for v in values)
        assert all(b >= a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("m,n", [(1, 1), (2, 4)])
    def test_error_decays_like_one_over_size(self, m, n):
        sizes = [10**3, 10**4, 10**5]
        exact = float(m * n) if m == n else 0.0
        errors = [abs(p2_partial_sum(m, n, size) - exact) for size in sizes]
        slope = np.polyfit(np.log10(sizes), np.log10(errors), 1)[0]
        assert -1.2 <= slope <= -0.8


class TestAssociativityGap:
    def test_odd_pair_collapses_to_scaled_entries(self):
        left, right = associativity_gap(1, 2)
        assert left == pytest.approx(4.0 * 8.0 / (3.0 * math.pi), rel=1e-14)
        assert right == pytest.approx(8.0 / (3.0 * math.pi), rel=1e-14)
        left, right = associativity_gap(2, 3)
        a23 = 24.0 / (5.0 * math.pi)
        assert left == pytest.approx(9.0 * a23, rel=1e-14)
        assert right == pytest.approx(4.0 * a23, rel=1e-14)

    def test_even_pair_vanishes(self):
        assert associativity_gap(3, 3) == (0.0, 0.0)
        assert associativity_gap(2, 4) == (0.0, 0.0)

    def test_ratio_is_square_of_label_ratio(self):
        for m, n in [(1, 2), (3, 8), (5, 12)]:
            left, right = associativity_gap(m, n)
            assert left / right == pytest.approx(n * n / (m * m), rel=1e-12)


class TestMiddleSumDivergence:
    def test_summand_tends_to_minus_one(self):
        s = 10**6
        term = s**4 / ((1 - s**2) * (s**2 - 9))
        assert term == pytest.approx(-1.0, abs=1e-5)

    def test_linear_growth_rate(self):
        # one term per parity step, each tending to -1, times -48/pi^2
        v1 = pp2p_partial_sum(1, 3, 2000)
        v2 = pp2p_partial_sum(1, 3, 4000)
        slope = (v2 - v1) / 2000.0
        assert slope == pytest.approx(24.0 / math.pi**2, rel=0.01)

    def test_equal_labels_diverges_positively(self):
        # the two denominator factors have opposite signs for every middle
        # label, so the prefactor -16/pi^2 makes the total positive
        v1 = pp2p_partial_sum(1, 1, 1000)
        v2 = pp2p_partial_sum(1, 1, 2000)
        assert 0.0 < v1 < v2

    def test_rejects_odd_label_sum(self):
        with pytest.raises(ValueError):
            pp2p_partial_sum(1, 2, 100)


class TestQuadPower:
    def test_matches_matrix_power_oracle(self):
        size = 30
        fourth = np.linalg.matrix_power(momentum_array(size), 4)
        for m, n in [(1, 1), (1, 3), (2, 2), (3, 7)]:
            assert quad_power_entry(m, n, size) == pytest.approx(
                fourth[m - 1, n - 1], rel=1e-10
            )

    def test_diverges_from_exact_value(self):
        deviations = [abs(quad_power_entry(1, 1, size) - 1.0) for size in (60, 120, 240)]
        assert deviations[0] < deviations[1] < deviations[2]

    def test_opposite_parity_entry_vanishes_exactly(self):
        assert quad_power_entry(1, 2, 100) == 0.0

    def test_requires_size_at_least_max_label(self):
        with pytest.raises(ValueError):
            quad_power_entry(1, 40, 30)
