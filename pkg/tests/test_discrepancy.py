import random
from collections import Counter
from fractions import Fraction

import pytest

from padiclds.discrepancy import (
    discrepancy_profile,
    meijer_bound_check,
    padic_discrepancy,
    padic_discrepancy_truncated,
    real_extreme_discrepancy,
    separation_depth,
)
from padiclds.padic import digits_of, monna_of_int, valuation
from padiclds.polynomials import parse_poly
from padiclds.sequence import linear_sequence, poly_sequence


# --------------------------------------------------------------------------
# Independent oracles
# --------------------------------------------------------------------------

def naive_padic_discrepancy(values, p):
    """Direct sup: every level up to k_sep+1, every residue, plus the tail."""
    N = len(values)
    k_sep = separation_depth(values, p)
    best = Fraction(0)
    for k in range(1, k_sep + 2):
        pk = p**k
        counts = Counter(v % pk for v in values)
        for z in range(pk):
            term = abs(Fraction(counts.get(z, 0), N) - Fraction(1, pk))
            best = max(best, term)
    cstar = max(Counter(values).values())
    return max(best, Fraction(cstar, N))


def naive_real_discrepancy(points):
    """Grid maximization with closed and open endpoint variants.

    Half-open intervals approach, but do not attain, their extreme counts;
    the supremum is attained on the endpoint grid once both the closed count
    (shrunk interval) and open count (grown interval) are considered.
    """
    pts = sorted(points)
    N = len(pts)
    grid = sorted(set(pts) | {Fraction(0), Fraction(1)})
    best = Fraction(0)
    for i, a in enumerate(grid):
        for b in grid[i:]:
            closed = sum(1 for x in pts if a <= x <= b)
            opened = sum(1 for x in pts if a < x < b)
            length = b - a
            best = max(best, Fraction(closed, N) - length, length - Fraction(opened, N))
    return best


def pair_valuation_depth(values, p):
    """Literal definition: 1 + max valuation over differences of distinct values."""
    best = 0
    found = False
    for i, x in enumerate(values):
        for y in values[i + 1:]:
            if x != y:
                found = True
                best = max(best, valuation(x - y, p))
    return 1 + best if found else 1


# --------------------------------------------------------------------------
# Separation depth
# --------------------------------------------------------------------------

class TestSeparationDepth:
    @pytest.mark.parametrize(
        "values,p,expected", [([1, 2, 3], 3, 1), ([1, 10], 3, 3), ([5], 7, 1)]
    )
    def test_examples(self, values, p, expected):
        assert separation_depth(values, p) == expected
        assert pair_valuation_depth(values, p) == expected

    def test_matches_pairwise_definition(self):
        rng = random.Random(83)
        for _ in range(200):
            p = rng.choice([2, 3, 5])
            values = [rng.randint(-200, 200) for _ in range(rng.randint(1, 25))]
            assert separation_depth(values, p) == pair_valuation_depth(values, p)

    def test_all_equal(self):
        assert separation_depth([4, 4, 4], 3) == 1


# --------------------------------------------------------------------------
# p-adic discrepancy
# --------------------------------------------------------------------------

class TestPAdicDiscrepancy:
    def test_three_consecutive(self):
        res = padic_discrepancy([1, 2, 3], 3)
        assert res.value == Fraction(1, 3)
        assert res.witness_level == "tail"
        assert res.witness_residue is None

    def test_single_point(self):
        assert padic_discrepancy([1], 3).value == 1

    def test_permutation_sequence_is_one_over_N(self):
        values = poly_sequence(parse_poly("x^3 + x"), 200)
        for N in list(range(1, 31)) + [64, 100, 200]:
            res = padic_discrepancy(values[:N], 3)
            assert res.value == Fraction(1, N)
        for N in range(1, 31):
            assert naive_padic_discrepancy(values[:N], 3) == Fraction(1, N)

    def test_agrees_with_naive_oracle(self):
        rng = random.Random(89)
        for _ in range(120):
            N = rng.randint(1, 30)
            values = [rng.randint(0, 120) for _ in range(N)]
            assert padic_discrepancy(values, 3).value == naive_padic_discrepancy(values, 3)

    def test_translation_invariance(self):
        rng = random.Random(97)
        for _ in range(60):
            values = [rng.randint(0, 500) for _ in range(rng.randint(1, 40))]
            c = rng.randint(-1000, 1000)
            assert (
                padic_discrepancy(values, 3).value
                == padic_discrepancy([v + c for v in values], 3).value
            )

    def test_range_invariant(self):
        rng = random.Random(101)
        for _ in range(100):
            N = rng.randint(1, 40)
            values = [rng.randint(-50, 50) for _ in range(N)]
            v = padic_discrepancy(values, rng.choice([2, 3, 5])).value
            assert Fraction(1, N) <= v <= 1

    def test_witness_is_reproducible(self):
        rng = random.Random(103)
        for _ in range(80):
            N = rng.randint(2, 25)
            values = [rng.randint(0, 80) for _ in range(N)]
            res = padic_discrepancy(values, 3)
            if res.witness_level == "tail":
                cstar = max(Counter(values).values())
                assert res.value == Fraction(cstar, N)
            else:
                k, z = res.witness_level, res.witness_residue
                count = sum(1 for v in values if v % 3**k == z)
                assert res.value == abs(Fraction(count, N) - Fraction(1, 3**k))

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            padic_discrepancy([], 3)


class TestTruncatedDiscrepancy:
    def test_unit_slope_identity(self):
        seq = linear_sequence(digits_of(1, 3, 4), digits_of(0, 3, 4), 9)
        assert padic_discrepancy_truncated(seq, 3).value == Fraction(1, 9)

    def test_non_unit_slope_misses_residues(self):
        seq = linear_sequence(digits_of(3, 3, 4), digits_of(0, 3, 4), 9)
        res = padic_discrepancy_truncated(seq, 3)
        assert res.value >= Fraction(1, 3)

    def test_single_point(self):
        assert padic_discrepancy_truncated([digits_of(5, 3, 2)], 3).value == 1

    def test_insufficient_precision(self):
        # residues 0 and 3 agree mod 3 but split at level 1 = K-1: depth 2 > K-1
        pts = [digits_of(0, 3, 2), digits_of(3, 3, 2)]
        with pytest.raises(ValueError, match="insufficient precision"):
            padic_discrepancy_truncated(pts, 3)

    def test_matches_exact_when_values_small(self):
        rng = random.Random(107)
        for _ in range(60):
            N = rng.randint(1, 20)
            K = 6
            values = [rng.randint(0, 3**3) for _ in range(N)]
            approx = [digits_of(v, 3, K) for v in values]
            try:
                truncated = padic_discrepancy_truncated(approx, 3)
            except ValueError:
                continue
            assert truncated.value == padic_discrepancy(values, 3).value


class TestDiscrepancyProfile:
    def test_equals_pointwise_computation(self):
        rng = random.Random(109)
        for _ in range(25):
            N = rng.randint(1, 60)
            values = [rng.randint(-100, 400) for _ in range(N)]
            p = rng.choice([2, 3, 5])
            profile = discrepancy_profile(values, p)
            assert len(profile) == N
            for n in range(1, N + 1):
                assert profile[n - 1] == padic_discrepancy(values[:n], p).value

    def test_permutation_profile(self):
        values = poly_sequence(parse_poly("x^3 + x"), 300)
        assert discrepancy_profile(values, 3) == [Fraction(1, n) for n in range(1, 301)]


# --------------------------------------------------------------------------
# Real discrepancy and the transfer inequality
# --------------------------------------------------------------------------

class TestRealExtremeDiscrepancy:
    def test_worked_examples(self):
        pts = [Fraction(1, 9), Fraction(1, 3), Fraction(2, 3)]
        assert naive_real_discrepancy(pts) == Fraction(4, 9)
        assert real_extreme_discrepancy(pts) == Fraction(4, 9)
        assert real_extreme_discrepancy([Fraction(0), Fraction(1, 2)]) == Fraction(1, 2)
        grid = [Fraction(k, 10) for k in range(10)]
        assert real_extreme_discrepancy(grid) == Fraction(1, 10)

    def test_matches_grid_oracle_randomized(self):
        rng = random.Random(113)
        for _ in range(150):
            N = rng.randint(1, 12)
            pts = [
                Fraction(rng.randint(0, d - 1), d)
                for d in (rng.randint(1, 64) for _ in range(N))
            ]
            assert real_extreme_discrepancy(pts) == naive_real_discrepancy(pts)

    def test_point_outside_unit_interval(self):
        with pytest.raises(ValueError, match="outside"):
            real_extreme_discrepancy([Fraction(3, 2)])
        with pytest.raises(ValueError, match="outside"):
            real_extreme_discrepancy([Fraction(-1, 2)])

    def test_repeated_points(self):
        pts = [Fraction(1, 2)] * 4
        assert real_extreme_discrepancy(pts) == naive_real_discrepancy(pts) == 1


class TestMeijerBound:
    def test_worked_point(self):
        holds, upper = meijer_bound_check(Fraction(1, 3), Fraction(4, 9), 3)
        assert holds is True
        assert upper == pytest.approx(2.0, abs=1e-12)

    def test_lower_failure(self):
        holds, _ = meijer_bound_check(Fraction(1, 2), Fraction(1, 4), 3)
        assert holds is False

    def test_indeterminate_band(self):
        # a tiny delta keeps the upper bound below 1, so d can sit exactly on
        # it (float-to-Fraction conversion is exact): the check must refuse to
        # decide rather than guess
        delta = Fraction(1, 10**9)
        _, upper = meijer_bound_check(delta, Fraction(1, 2), 3)
        d = Fraction(upper)
        assert delta < d < 1
        holds, _ = meijer_bound_check(delta, d, 3)
        assert holds is None

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            meijer_bound_check(Fraction(0), Fraction(1, 2), 3)
        with pytest.raises(ValueError):
            meijer_bound_check(Fraction(1, 2), Fraction(0), 3)

    def test_pipeline_point(self):
        values = [1, 2, 3, 4, 5, 6, 7, 8, 9]
        delta = padic_discrepancy(values, 3).value
        points = [monna_of_int(v, 3) for v in values]
        d = real_extreme_discrepancy(points)
        assert delta == Fraction(1, 9)
        holds, _ = meijer_bound_check(delta, d, 3)
        assert holds is True

    def test_lower_inequality_on_random_value_sets(self):
        rng = random.Random(127)
        for _ in range(40):
            N = rng.randint(1, 50)
            values = [rng.randint(0, 3**6) for _ in range(N)]
            delta = padic_discrepancy(values, 3).value
            d = real_extreme_discrepancy([monna_of_int(v, 3) for v in values])
            assert delta < d or (delta == 1 and d == 1)
