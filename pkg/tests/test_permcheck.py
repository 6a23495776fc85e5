import itertools
import random

import pytest

from padiclds.permcheck import (
    METHOD_BRUTE_FORCE,
    METHOD_NOEBAUER,
    METHOD_UNIT_REDUCTION,
    Verdict,
    classify_low_discrepancy,
    classify_via_reduction,
    divergence_scan,
    first_missing_residue,
    is_permutation_mod,
    noebauer_mod_p2,
    smallest_root_mod,
)
from padiclds.polynomials import IntPolynomial, affine_compose, eval_mod, parse_poly


def perm_oracle(f, m):
    """Independent occupancy check via a set of images."""
    return len({eval_mod(f, x, m) for x in range(m)}) == m


class TestIsPermutationMod:
    @pytest.mark.parametrize(
        "text,m,expected",
        [
            ("x^3 - 2x", 3, True),
            ("x^3 - 2x", 9, True),   # oracle-confirmed below
            ("x^2 + x", 3, False),
        ],
    )
    def test_examples(self, text, m, expected):
        f = parse_poly(text)
        assert perm_oracle(f, m) == expected
        assert is_permutation_mod(f, m) == expected

    def test_cap(self):
        with pytest.raises(ValueError, match="enumeration too large"):
            is_permutation_mod(parse_poly("x"), 10**7 + 1)

    def test_missing_residue_helper(self):
        f = parse_poly("x^2")  # mod 3 misses residue 2
        assert first_missing_residue(f, 3) == 2
        assert first_missing_residue(parse_poly("x"), 3) is None


class TestNoebauer:
    def test_prop_family_member(self):
        v = noebauer_mod_p2(parse_poly("x^3 + x"), 3)
        assert v.perm_mod_p and v.perm_mod_p2 and v.low_discrepancy
        assert v.derivative_root is None
        assert v.method == METHOD_NOEBAUER

    def test_monomial_with_derivative_root(self):
        v = noebauer_mod_p2(parse_poly("x^5"), 3)
        assert v.perm_mod_p and not v.perm_mod_p2
        assert v.derivative_root == 0

    def test_cube_mod_5(self):
        v = noebauer_mod_p2(parse_poly("x^3"), 5)
        assert v.perm_mod_p and not v.perm_mod_p2
        assert v.derivative_root == 0

    def test_missing_residue_when_not_perm(self):
        v = noebauer_mod_p2(parse_poly("x^2"), 3)
        assert not v.perm_mod_p
        assert v.missing_residue == (1, 2)


class TestClassify:
    def test_positive(self):
        assert classify_low_discrepancy(parse_poly("x^3 + x"), 3).low_discrepancy

    def test_monomial_family_negative(self):
        v = classify_low_discrepancy(parse_poly("2x^9 + 3"), 3)
        assert not v.low_discrepancy

    def test_table_instance(self):
        assert classify_low_discrepancy(parse_poly("x^6 + 2x"), 11).low_discrepancy

    def test_method_tag_and_witnesses(self):
        v = classify_low_discrepancy(parse_poly("x^5"), 3)
        assert v.method == METHOD_BRUTE_FORCE
        assert v.perm_mod_p and not v.perm_mod_p2
        assert v.derivative_root == 0
        # n^5 mod 9 never hits 3: the smallest missing level-2 residue
        assert v.missing_residue == (2, 3)
        assert 3 not in {pow(n, 5, 9) for n in range(9)}

    def test_verdict_invariants_enforced(self):
        with pytest.raises(ValueError, match="conjunction"):
            Verdict(True, True, False, 0, None, METHOD_BRUTE_FORCE)
        with pytest.raises(ValueError, match="derivative-root"):
            Verdict(False, True, False, None, None, METHOD_NOEBAUER)
        with pytest.raises(ValueError, match="level-1"):
            Verdict(False, False, False, None, None, METHOD_BRUTE_FORCE)


class TestClassifyViaReduction:
    def test_examples(self):
        assert not classify_via_reduction(parse_poly("x^5 + x"), 3).low_discrepancy
        assert classify_via_reduction(parse_poly("x^3 + x"), 3).low_discrepancy
        # the known false positive: formula says yes, ground truth says no
        v = classify_via_reduction(parse_poly("x^5"), 3)
        assert v.low_discrepancy
        assert v.method == METHOD_UNIT_REDUCTION
        assert not classify_low_discrepancy(parse_poly("x^5"), 3).low_discrepancy

    def test_agrees_below_fold_degree(self):
        # below degree p-1 the foldings are literally f and f'
        rng = random.Random(61)
        for p in (3, 5, 7):
            for _ in range(120):
                deg = rng.randint(0, p - 2)
                f = IntPolynomial([rng.randint(0, p - 1) for _ in range(deg + 1)])
                assert (
                    classify_via_reduction(f, p).low_discrepancy
                    == classify_low_discrepancy(f, p).low_discrepancy
                )

    def test_rejects_p2(self):
        with pytest.raises(ValueError):
            classify_via_reduction(parse_poly("x"), 2)


class TestNoebauerEquivalenceSweep:
    """Reduced-scale version of the acceptance sweep (full scale in test_acceptance)."""

    def test_p3_exhaustive_degree3(self):
        p = 3
        for coeffs in itertools.product(range(p * p), repeat=4):
            f = IntPolynomial(coeffs)
            assert noebauer_mod_p2(f, p).perm_mod_p2 == is_permutation_mod(f, p * p)

    def test_p5_sampled(self):
        rng = random.Random(67)
        p = 5
        for _ in range(4000):
            f = IntPolynomial([rng.randint(0, p * p - 1) for _ in range(4)])
            assert noebauer_mod_p2(f, p).perm_mod_p2 == is_permutation_mod(f, p * p)

    def test_hensel_lift_p5_sampled(self):
        rng = random.Random(71)
        p = 5
        found = 0
        while found < 60:
            f = IntPolynomial([rng.randint(0, p * p - 1) for _ in range(4)])
            if is_permutation_mod(f, p * p):
                found += 1
                assert is_permutation_mod(f, p**3)


class TestMonomialImpossibility:
    def test_sweep(self):
        for p in (3, 5, 7):
            for a in range(1, p):
                for b in range(p):
                    for n in range(2, 11):
                        coeffs = [b] + [0] * (n - 1) + [a]
                        v = classify_low_discrepancy(IntPolynomial(coeffs), p)
                        assert not v.low_discrepancy, (p, a, b, n)


class TestAffineStability:
    def test_exhaustive_p3_degree4(self):
        p = 3
        maps = [
            ((a, b), (c, d))
            for a in (1, 2) for b in (0, 1, 2) for c in (1, 2) for d in (0, 1, 2)
        ]
        rng = random.Random(73)
        for coeffs in itertools.product(range(p), repeat=5):
            f = IntPolynomial(coeffs)
            base = classify_low_discrepancy(f, p).low_discrepancy
            outer, inner = rng.choice(maps)
            g = affine_compose(f, outer, inner, p)
            assert classify_low_discrepancy(g, p).low_discrepancy == base

    def test_perm_mod_p_preserved_exhaustive_small(self):
        p = 3
        for coeffs in itertools.product(range(p), repeat=4):
            f = IntPolynomial(coeffs)
            base = is_permutation_mod(f, p)
            for outer, inner in [((2, 1), (1, 0)), ((1, 0), (2, 2)), ((2, 2), (2, 1))]:
                g = affine_compose(f, outer, inner, p)
                assert is_permutation_mod(g, p) == base


class TestDivergenceScan:
    def test_degree4_entries_all_genuine_and_no_quintic(self):
        report = divergence_scan(3, 4, range(0, 3))
        assert all(e.poly.degree <= 4 for e in report.entries)
        for e in report.entries:
            assert e.ground_truth.low_discrepancy != e.formula.low_discrepancy
            # re-verify both sides independently
            assert e.ground_truth.low_discrepancy == (
                perm_oracle(e.poly, 3) and perm_oracle(e.poly, 9)
            )

    def test_degree6_contains_the_quintic_witness(self):
        report = divergence_scan(3, 6, range(0, 3))
        quintic = next(e for e in report.entries if e.poly.coeffs == (0, 0, 0, 0, 0, 1))
        assert quintic.formula.low_discrepancy
        assert not quintic.ground_truth.low_discrepancy
        assert pow(3, 5, 9) == pow(0, 5, 9) == 0  # the collision behind the verdict

    def test_degree1_empty(self):
        report = divergence_scan(3, 1, range(0, 3))
        assert report.entries == ()

    def test_ordering_and_cap(self):
        report = divergence_scan(3, 5, range(0, 3))
        keys = [(e.poly.degree, e.poly.coeffs) for e in report.entries]
        assert keys == sorted(keys)
        with pytest.raises(ValueError, match="cap"):
            divergence_scan(3, 20, range(0, 3), cap=1000)

    def test_canonicalizes_coefficient_range(self):
        # ranges that differ only by mod-p lifts scan the same residue space
        r1 = divergence_scan(3, 3, range(0, 3))
        r2 = divergence_scan(3, 3, range(0, 6))
        assert [e.poly for e in r1.entries] == [e.poly for e in r2.entries]
