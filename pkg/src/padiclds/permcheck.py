"""Permutation-polynomial decision procedures and the low-discrepancy classifier.

Three routes are provided:

* brute force -- exhaustive evaluation mod p and mod p^2; always correct and
  cheap at the primes this toolkit targets, so it is the authoritative route;
* the Noebauer criterion -- permutation mod p^2 iff permutation mod p and the
  derivative has no root mod p; used for human-readable certificates and as an
  internal cross-check of the brute-force route;
* the unit-group folding formula -- verdicts read off the two degree <= p-2
  reductions of f and f'.  The folding is only valid at unit residues, so this
  route can disagree with ground truth; it is never treated as authoritative,
  and ``divergence_scan`` hunts for exactly those disagreements.

All decision procedures are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .padic import check_prime
from .polynomials import (
    IntPolynomial,
    derivative,
    eval_mod,
    unit_derivative_poly,
    unit_value_poly,
)

# Refuse exhaustive enumerations beyond this many residues; keeps worst-case
# classification fast while covering every prime of interest (p^2 <= cap).
DEFAULT_ENUMERATION_CAP = 10_000_000

METHOD_BRUTE_FORCE = "brute_force"
METHOD_NOEBAUER = "noebauer"
METHOD_UNIT_REDUCTION = "unit_reduction"


@dataclass(frozen=True)
class Verdict:
    """Classification outcome for a polynomial at a prime.

    ``missing_residue`` is a (level, residue) pair with level in {1, 2}
    witnessing non-surjectivity mod p^level.  ``derivative_root`` is the
    smallest root of f' mod p when one exists.  For the unit-reduction method
    the fields describe the folded polynomials rather than f itself.
    """

    low_discrepancy: bool
    perm_mod_p: bool
    perm_mod_p2: bool
    derivative_root: int | None
    missing_residue: tuple[int, int] | None
    method: str

    def __post_init__(self) -> None:
        if self.method in (METHOD_BRUTE_FORCE, METHOD_NOEBAUER):
            if self.low_discrepancy != (self.perm_mod_p and self.perm_mod_p2):
                raise ValueError("inconsistent verdict: low_discrepancy must equal the conjunction")
            if self.perm_mod_p and not self.perm_mod_p2 and self.derivative_root is None:
                raise ValueError("inconsistent verdict: missing derivative-root certificate")
            if not self.perm_mod_p and (
                self.missing_residue is None or self.missing_residue[0] != 1
            ):
                raise ValueError("inconsistent verdict: missing level-1 witness")

    def as_dict(self) -> dict:
        return {
            "low_discrepancy": self.low_discrepancy,
            "perm_mod_p": self.perm_mod_p,
            "perm_mod_p2": self.perm_mod_p2,
            "derivative_root": self.derivative_root,
            "missing_residue": list(self.missing_residue) if self.missing_residue else None,
            "method": self.method,
        }


def _values_mod(f: IntPolynomial, m: int) -> list[int]:
    coeffs = f.coeffs
    out = []
    for x in range(m):
        v = 0
        for c in reversed(coeffs):
            v = (v * x + c) % m
        out.append(v)
    return out


def is_permutation_mod(f: IntPolynomial, m: int, cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """True iff f induces a bijection on Z/mZ, by exhaustive evaluation."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    if m > cap:
        raise ValueError(f"enumeration too large: m={m} exceeds cap {cap}")
    seen = bytearray(m)
    coeffs = f.coeffs
    for x in range(m):
        v = 0
        for c in reversed(coeffs):
            v = (v * x + c) % m
        if seen[v]:
            return False
        seen[v] = 1
    return True


def first_missing_residue(f: IntPolynomial, m: int, cap: int = DEFAULT_ENUMERATION_CAP) -> int | None:
    """Smallest residue mod m not attained by f, or None if f is surjective."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    if m > cap:
        raise ValueError(f"enumeration too large: m={m} exceeds cap {cap}")
    seen = bytearray(m)
    for v in _values_mod(f, m):
        seen[v] = 1
    for z in range(m):
        if not seen[z]:
            return z
    return None


def smallest_root_mod(f: IntPolynomial, p: int) -> int | None:
    """Smallest x in [0, p) with f(x) == 0 mod p, or None."""
    for x in range(p):
        if eval_mod(f, x, p) == 0:
            return x
    return None


def noebauer_mod_p2(f: IntPolynomial, p: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Verdict:
    """Decide permutation mod p^2 from the mod-p data alone.

    f is a permutation mod p^2 iff it is a permutation mod p and f' has no
    root mod p.  The smallest derivative root (when present) is recorded as a
    certificate.
    """
    check_prime(p)
    perm_p = is_permutation_mod(f, p, cap)
    root = smallest_root_mod(derivative(f), p)
    perm_p2 = perm_p and root is None
    missing = None
    if not perm_p:
        missing = (1, first_missing_residue(f, p, cap))
    return Verdict(
        low_discrepancy=perm_p and perm_p2,
        perm_mod_p=perm_p,
        perm_mod_p2=perm_p2,
        derivative_root=root,
        missing_residue=missing,
        method=METHOD_NOEBAUER,
    )


def classify_low_discrepancy(f: IntPolynomial, p: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Verdict:
    """Ground-truth verdict: exhaustive permutation tests mod p and mod p^2.

    The sequence (f(n)) is low-discrepancy exactly when both tests pass.  The
    result is cross-checked against the Noebauer criterion; a mismatch would
    mean a broken invariant, so it raises rather than returning.
    """
    check_prime(p)
    if p * p > cap:
        raise ValueError(f"enumeration too large: p^2={p * p} exceeds cap {cap}")
    perm_p = is_permutation_mod(f, p, cap)
    perm_p2 = is_permutation_mod(f, p * p, cap)
    root = smallest_root_mod(derivative(f), p)
    if perm_p2 != (perm_p and root is None):
        raise RuntimeError(
            f"internal error: Noebauer criterion disagrees with enumeration for {f} mod {p}"
        )
    missing = None
    if not perm_p:
        missing = (1, first_missing_residue(f, p, cap))
    elif not perm_p2:
        missing = (2, first_missing_residue(f, p * p, cap))
    return Verdict(
        low_discrepancy=perm_p and perm_p2,
        perm_mod_p=perm_p,
        perm_mod_p2=perm_p2,
        derivative_root=root,
        missing_residue=missing,
        method=METHOD_BRUTE_FORCE,
    )


def classify_via_reduction(f: IntPolynomial, p: int) -> Verdict:
    """Verdict computed only from the unit-group foldings of f and f'.

    The folded value polynomial must be a permutation mod p and the folded
    derivative polynomial must be root-free.  Because the folding ignores the
    residue 0, this verdict can differ from ground truth; it is reported, not
    trusted.  Fields describe the folded polynomials: ``perm_mod_p`` is the
    permutation test of the value folding, ``derivative_root`` the smallest
    root of the derivative folding.
    """
    check_prime(p)
    if p < 3:
        raise ValueError("unit-group folding requires p >= 3")
    g_val = unit_value_poly(f, p)
    g_der = unit_derivative_poly(f, p)
    perm = is_permutation_mod(g_val, p)
    root = smallest_root_mod(g_der, p)
    verdict = perm and root is None
    missing = None
    if not perm:
        missing = (1, first_missing_residue(g_val, p))
    return Verdict(
        low_discrepancy=verdict,
        perm_mod_p=perm,
        perm_mod_p2=verdict,
        derivative_root=root,
        missing_residue=missing,
        method=METHOD_UNIT_REDUCTION,
    )


@dataclass(frozen=True)
class DivergenceEntry:
    """One polynomial where the folding formula contradicts ground truth."""

    poly: IntPolynomial
    ground_truth: Verdict
    formula: Verdict


@dataclass(frozen=True)
class DivergenceReport:
    p: int
    max_degree: int
    coefficient_range: tuple[int, int]
    candidates: int
    entries: tuple[DivergenceEntry, ...]


def divergence_scan(
    p: int,
    max_degree: int,
    coefficient_range: range | tuple[int, int],
    cap: int = 1_000_000,
) -> DivergenceReport:
    """Enumerate polynomials and list every disagreement between the two classifiers.

    Coefficients are canonicalized into [0, p) before enumeration: both the
    permutation tests and the derivative-root test depend only on the
    coefficient residues mod p, so distinct lifts carry the same verdicts.
    Entries are reported in (degree, coefficient-tuple) order, which is
    deterministic regardless of any internal parallelism.
    """
    check_prime(p)
    if isinstance(coefficient_range, range):
        lo, hi = coefficient_range.start, coefficient_range.stop
    else:
        lo, hi = coefficient_range
    if hi <= lo:
        raise ValueError("empty coefficient range")
    residues = sorted({c % p for c in range(lo, hi)})
    width = len(residues)
    nonzero = [r for r in residues if r != 0]

    total = width  # degree-0 candidates (plus the zero polynomial among them)
    for d in range(1, max_degree + 1):
        total += width ** d * len(nonzero)
    if total > cap:
        raise ValueError(f"search space of {total} candidates exceeds cap {cap}")

    import itertools

    entries: list[DivergenceEntry] = []
    for d in range(max_degree + 1):
        if d == 0:
            candidates = ([c] for c in residues)
        else:
            candidates = (
                list(body) + [lead]
                for body in itertools.product(residues, repeat=d)
                for lead in nonzero
            )
        for coeffs in candidates:
            f = IntPolynomial(coeffs)
            if f.degree != d and not (d == 0 and f.is_zero):
                continue  # canonical duplicate of a lower degree
            truth = classify_low_discrepancy(f, p)
            formula = classify_via_reduction(f, p)
            if truth.low_discrepancy != formula.low_discrepancy:
                entries.append(DivergenceEntry(f, truth, formula))
    entries.sort(key=lambda e: (e.poly.degree, e.poly.coeffs))
    return DivergenceReport(
        p=p,
        max_degree=max_degree,
        coefficient_range=(lo, hi),
        candidates=total,
        entries=tuple(entries),
    )
