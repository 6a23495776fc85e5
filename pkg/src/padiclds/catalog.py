"""Machine-readable catalog of the small-degree permutation-polynomial tables.

Each catalog row is a parametrized family together with the prime (or prime
congruence class) where it applies, the admissibility predicate on the
parameter, and the expected derivative-root behavior.  Rows written with a
``+-`` in source notation are expanded into explicit sign variants; for rows
carrying two signs the variants where both signs agree are the asserted ones
(the crossed variants are generated and verified anyway, and their outcomes
are reported rather than suppressed, since the source notation does not
disambiguate the coupling).

The module also provides the exhaustive small-degree search that reproduces
the table contents from scratch, and the diff that partitions search hits
into explained/unexplained.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .padic import check_prime
from .permcheck import classify_low_discrepancy, is_permutation_mod
from .polynomials import (
    IntPolynomial,
    affine_compose,
    derivative,
    eval_mod,
    reduce_coeffs_mod,
)

PRED_NONSQUARE = "nonsquare"
PRED_NOT_FOURTH_POWER = "not_fourth_power"
PRED_NONZERO = "nonzero"
PRED_SQUARE = "square"
PRED_NONE = "none"

PRIME_FAMILY_5M2 = "5m+-2"

# Finite sample of the "p congruent to +-2 mod 5" prime class used wherever a
# concrete prime list is needed; exhausting the class is impossible.
FAMILY_5M2_SAMPLE_PRIMES = (2, 3, 7, 13, 17, 23)


@dataclass(frozen=True)
class DicksonEntry:
    """One expanded catalog row.

    ``build(a, p)`` instantiates the family at parameter a (ignored when the
    predicate is "none") with coefficients reduced mod p.  ``asserted`` is
    False for the crossed sign variants of two-sign rows: they are verified
    and reported but the catalog makes no claim about them.
    """

    name: str
    source_table: int
    prime_spec: int | str
    parameter_predicate: str
    build: Callable[[int, int], IntPolynomial]
    expected_derivative_roots: frozenset[int] | None = None
    derivative_root_exists: bool | None = None
    sign_variant: str | None = None
    asserted: bool = True

    def matches_prime(self, p: int) -> bool:
        if isinstance(self.prime_spec, int):
            return p == self.prime_spec
        return p != 5 and p % 5 in (2, 3)

    def admissible_parameters(self, p: int) -> list[int]:
        return admissible_parameters(self.parameter_predicate, p)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "source_table": self.source_table,
            "prime_spec": self.prime_spec,
            "parameter_predicate": self.parameter_predicate,
            "expected_derivative_roots": (
                sorted(self.expected_derivative_roots)
                if self.expected_derivative_roots is not None
                else None
            ),
            "derivative_root_exists": self.derivative_root_exists,
            "sign_variant": self.sign_variant,
            "asserted": self.asserted,
        }


def admissible_parameters(predicate: str, p: int) -> list[int]:
    """Concrete parameter values satisfying the predicate at p."""
    check_prime(p)
    units = range(1, p)
    if predicate == PRED_NONE:
        return [0]
    if predicate == PRED_NONZERO:
        return list(units)
    squares = {y * y % p for y in units}
    if predicate == PRED_NONSQUARE:
        return [a for a in units if a not in squares]
    if predicate == PRED_SQUARE:
        return [a for a in units if a in squares]
    if predicate == PRED_NOT_FOURTH_POWER:
        fourths = {pow(y, 4, p) for y in units}
        return [a for a in units if a not in fourths]
    raise ValueError(f"unknown parameter predicate {predicate!r}")


def _sgn(s: int) -> str:
    return "+" if s > 0 else "-"


def _entries_table2() -> list[DicksonEntry]:
    rows: list[DicksonEntry] = []
    rows.append(
        DicksonEntry(
            name="x^3 - a*x",
            source_table=2,
            prime_spec=3,
            parameter_predicate=PRED_NONSQUARE,
            build=lambda a, p: IntPolynomial([0, -a % p, 0, 1]),
        )
    )
    for s in (1, -1):
        rows.append(
            DicksonEntry(
                name=f"x^4 {_sgn(s)} 3*x",
                source_table=2,
                prime_spec=7,
                parameter_predicate=PRED_NONE,
                build=lambda a, p, s=s: IntPolynomial([0, s * 3 % p, 0, 0, 1]),
                expected_derivative_roots=frozenset({1, 2, 4} if s > 0 else {3, 5, 6}),
                sign_variant=_sgn(s),
            )
        )
    rows.append(
        DicksonEntry(
            name="x^5 - a*x",
            source_table=2,
            prime_spec=5,
            parameter_predicate=PRED_NOT_FOURTH_POWER,
            build=lambda a, p: IntPolynomial([0, -a % p, 0, 0, 0, 1]),
        )
    )
    for s in (1, -1):
        rows.append(
            DicksonEntry(
                name=f"x^5 + a*x^3 {_sgn(s)} x^2 + 3*a^2*x",
                source_table=2,
                prime_spec=7,
                parameter_predicate=PRED_NONSQUARE,
                build=lambda a, p, s=s: IntPolynomial(
                    [0, 3 * a * a % p, s % p, a % p, 0, 1]
                ),
                derivative_root_exists=True,
                sign_variant=_sgn(s),
            )
        )
    rows.append(_entry_inverse5(source_table=2))
    rows.append(
        DicksonEntry(
            name="x^5 + a*x^3 + 3*a^2*x",
            source_table=2,
            prime_spec=13,
            parameter_predicate=PRED_NONSQUARE,
            build=lambda a, p: IntPolynomial([0, 3 * a * a % p, 0, a % p, 0, 1]),
            derivative_root_exists=True,
        )
    )
    rows.append(_entry_deg5_double_coeff(source_table=2))
    rows.extend(_entries_x6_linear(source_table=2))
    for s1, s2 in itertools.product((1, -1), repeat=2):
        joint = s1 == s2
        rows.append(
            DicksonEntry(
                name=f"x^6 {_sgn(s1)} a^2*x^3 + a*x^2 {_sgn(s2)} 5*x",
                source_table=2,
                prime_spec=11,
                parameter_predicate=PRED_SQUARE,
                build=lambda a, p, s1=s1, s2=s2: IntPolynomial(
                    [0, s2 * 5 % p, a % p, s1 * a * a % p, 0, 0, 1]
                ),
                derivative_root_exists=True if joint else None,
                sign_variant=f"{_sgn(s1)}{_sgn(s2)}",
                asserted=joint,
            )
        )
    for s1, s2 in itertools.product((1, -1), repeat=2):
        joint = s1 == s2
        rows.append(
            DicksonEntry(
                name=f"x^6 {_sgn(s1)} 4*a^2*x^3 + a*x^2 {_sgn(s2)} 4*x",
                source_table=2,
                prime_spec=11,
                parameter_predicate=PRED_NONSQUARE,
                build=lambda a, p, s1=s1, s2=s2: IntPolynomial(
                    [0, s2 * 4 % p, a % p, s1 * 4 * a * a % p, 0, 0, 1]
                ),
                derivative_root_exists=True if joint else None,
                sign_variant=f"{_sgn(s1)}{_sgn(s2)}",
                asserted=joint,
            )
        )
    return rows


def _entry_inverse5(source_table: int) -> DicksonEntry:
    def build(a: int, p: int) -> IntPolynomial:
        if p == 5 or p % 5 not in (2, 3):
            raise ValueError(f"prime {p} incompatible with the 5m+-2 family")
        inv5 = pow(5, -1, p)
        return IntPolynomial([0, inv5 * a * a % p, 0, a % p, 0, 1])

    return DicksonEntry(
        name="x^5 + a*x^3 + 5^-1*a^2*x",
        source_table=source_table,
        prime_spec=PRIME_FAMILY_5M2,
        parameter_predicate=PRED_NONZERO,
        build=build,
    )


def _entry_deg5_double_coeff(source_table: int) -> DicksonEntry:
    return DicksonEntry(
        name="x^5 + 2*a*x^3 + a^2*x",
        source_table=source_table,
        prime_spec=5,
        parameter_predicate=PRED_NONSQUARE,
        build=lambda a, p: IntPolynomial([0, a * a % p, 0, 2 * a % p, 0, 1]),
        derivative_root_exists=False,
    )


def _entries_x6_linear(source_table: int) -> list[DicksonEntry]:
    rows = []
    for coef in (2, 4):
        for s in (1, -1):
            rows.append(
                DicksonEntry(
                    name=f"x^6 {_sgn(s)} {coef}*x",
                    source_table=source_table,
                    prime_spec=11,
                    parameter_predicate=PRED_NONE,
                    build=lambda a, p, s=s, coef=coef: IntPolynomial(
                        [0, s * coef % p, 0, 0, 0, 0, 1]
                    ),
                    expected_derivative_roots=frozenset(),
                    sign_variant=_sgn(s),
                )
            )
    return rows


def _entries_table1() -> list[DicksonEntry]:
    rows = [_entry_deg5_double_coeff(source_table=1)]
    rows.extend(_entries_x6_linear(source_table=1))
    rows.append(_entry_inverse5(source_table=1))
    return rows


_ENTRIES: tuple[DicksonEntry, ...] | None = None


def dickson_entries() -> tuple[DicksonEntry, ...]:
    """All expanded catalog rows (both source tables)."""
    global _ENTRIES
    if _ENTRIES is None:
        _ENTRIES = tuple(_entries_table2() + _entries_table1())
    return _ENTRIES


# --------------------------------------------------------------------------
# Verification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ParameterResult:
    a: int
    poly: IntPolynomial
    is_perm: bool
    derivative_roots: tuple[int, ...]
    low_discrepancy: bool | None = None


@dataclass(frozen=True)
class EntryVerification:
    entry: DicksonEntry
    p: int
    results: tuple[ParameterResult, ...]
    failures: tuple[str, ...]
    notes: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def _derivative_roots(f: IntPolynomial, p: int) -> tuple[int, ...]:
    df = derivative(f)
    return tuple(x for x in range(p) if eval_mod(df, x, p) == 0)


def verify_entry(entry: DicksonEntry, p: int, check_lds: bool = False) -> EntryVerification:
    """Re-derive one row's claims at a concrete prime.

    For every admissible parameter the instantiation must be a permutation
    mod p, the recomputed derivative-root set must match the recorded
    expectation (exact set or existence flag), and with ``check_lds`` the
    full low-discrepancy classification must come out positive.  Failed
    claims go to ``failures``; outcomes of non-asserted sign variants go to
    ``notes``.
    """
    check_prime(p)
    if not entry.matches_prime(p):
        raise ValueError(f"prime {p} incompatible with entry {entry.name!r}")
    results: list[ParameterResult] = []
    failures: list[str] = []
    notes: list[str] = []
    sink = notes if not entry.asserted else failures
    for a in entry.admissible_parameters(p):
        f = entry.build(a, p)
        perm = is_permutation_mod(f, p)
        roots = _derivative_roots(f, p)
        lds: bool | None = None
        if check_lds:
            lds = classify_low_discrepancy(f, p).low_discrepancy
        results.append(ParameterResult(a, f, perm, roots, lds))
        label = f"{entry.name} @ p={p}, a={a}"
        if not perm:
            sink.append(f"{label}: not a permutation mod {p}")
        if entry.expected_derivative_roots is not None and set(roots) != set(
            entry.expected_derivative_roots
        ):
            sink.append(
                f"{label}: derivative roots {sorted(roots)} != expected "
                f"{sorted(entry.expected_derivative_roots)}"
            )
        if entry.derivative_root_exists is True and not roots:
            sink.append(f"{label}: expected a derivative root, found none")
        if entry.derivative_root_exists is False and roots:
            sink.append(f"{label}: expected no derivative roots, found {sorted(roots)}")
        if check_lds and not lds:
            sink.append(f"{label}: not classified low-discrepancy")
    return EntryVerification(entry, p, tuple(results), tuple(failures), tuple(notes))


def verification_primes(entry: DicksonEntry) -> tuple[int, ...]:
    if isinstance(entry.prime_spec, int):
        return (entry.prime_spec,)
    return FAMILY_5M2_SAMPLE_PRIMES


# --------------------------------------------------------------------------
# Exhaustive search
# --------------------------------------------------------------------------

DEFAULT_SEARCH_CAP = 100_000_000


@dataclass(frozen=True)
class SearchConstraints:
    monic: bool = False
    zero_constant: bool = False
    nonzero_linear: bool = False


def _perm_tuple(coeffs: tuple[int, ...], m: int) -> bool:
    seen = bytearray(m)
    for x in range(m):
        v = 0
        for c in reversed(coeffs):
            v = (v * x + c) % m
        if seen[v]:
            return False
        seen[v] = 1
    return True


def _fast_filter(coeffs: tuple[int, ...], p: int) -> bool:
    """Permutation mod p and derivative root-free mod p (early-exit)."""
    seen = bytearray(p)
    for x in range(p):
        v = 0
        for c in reversed(coeffs):
            v = (v * x + c) % p
        if seen[v]:
            return False
        seen[v] = 1
    dcoeffs = tuple(i * c % p for i, c in enumerate(coeffs))[1:]
    for x in range(p):
        v = 0
        for c in reversed(dcoeffs):
            v = (v * x + c) % p
        if v == 0:
            return False
    return True


def _chunk_candidates(p: int, d: int, a1: int | None, cons: SearchConstraints):
    lead = (1,) if cons.monic else tuple(range(1, p))
    a0s = (0,) if cons.zero_constant else tuple(range(p))
    if d == 1:
        for L in lead:  # the lead is a_1 here, so nonzero_linear is automatic
            for a0 in a0s:
                yield (a0, L)
        return
    for L in lead:
        for a0 in a0s:
            for mids in itertools.product(range(p), repeat=d - 2):
                yield (a0, a1, *mids, L)


def _search_chunk(args) -> list[tuple[int, ...]]:
    p, d, a1, cons = args
    hits = []
    pp = p * p
    for coeffs in _chunk_candidates(p, d, a1, cons):
        if _fast_filter(coeffs, p) and _perm_tuple(coeffs, pp):
            hits.append(coeffs)
    return hits


def exhaustive_search(
    p: int,
    max_degree: int,
    constraints: SearchConstraints = SearchConstraints(),
    cap: int = DEFAULT_SEARCH_CAP,
    workers: int = 1,
) -> list[IntPolynomial]:
    """All polynomials of degree 1..max_degree (coefficients in [0, p)) under
    the given shape constraints that generate low-discrepancy sequences.

    Verdicts depend only on coefficient residues mod p (the permutation test
    mod p^2 reduces to mod-p data via the derivative criterion), so [0, p) is
    the complete search space.  Candidates pass a mod-p fast filter before
    brute-force confirmation mod p^2.  Output is in (degree, coefficient
    tuple) order, byte-identical for any worker count.
    """
    check_prime(p)
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    n_lead = 1 if constraints.monic else p - 1
    n_a0 = 1 if constraints.zero_constant else p
    n_a1 = p - 1 if constraints.nonzero_linear else p
    total = 0
    for d in range(1, max_degree + 1):
        if d == 1:
            total += n_lead * n_a0
        else:
            total += n_lead * n_a0 * n_a1 * p ** (d - 2)
    if total > cap:
        raise ValueError(f"search space of {total} candidates exceeds cap {cap}")

    chunks = []
    for d in range(1, max_degree + 1):
        if d == 1:
            chunks.append((p, 1, None, constraints))
        else:
            a1s = range(1, p) if constraints.nonzero_linear else range(p)
            for a1 in a1s:
                chunks.append((p, d, a1, constraints))

    if workers <= 1:
        results = [_search_chunk(c) for c in chunks]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_chunk, chunks))

    hits = sorted(
        (t for chunk in results for t in chunk), key=lambda t: (len(t), t)
    )
    return [IntPolynomial(t) for t in hits]


# --------------------------------------------------------------------------
# Diff against the catalog
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MatchReport:
    """Partition of search hits by what explains them.

    ``linear`` holds the degree <= 1 hits: those are settled by the linear
    unit criterion and lie outside the degree-2..6 classification the tables
    cover.  ``unexplained`` entries are verbatim counterexamples to the
    completeness of the tables.
    """

    table1: tuple[IntPolynomial, ...]
    prop_family: tuple[IntPolynomial, ...]
    affine: tuple[IntPolynomial, ...]
    linear: tuple[IntPolynomial, ...]
    unexplained: tuple[IntPolynomial, ...]

    def category_of(self) -> dict:
        out = {}
        for cat in ("table1", "prop_family", "affine", "linear", "unexplained"):
            for f in getattr(self, cat):
                out[f.coeffs] = cat
        return out


def table1_instances(p: int) -> list[IntPolynomial]:
    """Concrete Table-1 polynomials applicable at p, coefficients in [0, p)."""
    out = []
    seen = set()
    for entry in dickson_entries():
        if entry.source_table != 1 or not entry.matches_prime(p):
            continue
        for a in entry.admissible_parameters(p):
            f = reduce_coeffs_mod(entry.build(a, p), p)
            if f.coeffs not in seen:
                seen.add(f.coeffs)
                out.append(f)
    return out


def prop_family_instances(p: int) -> list[IntPolynomial]:
    """Monic zero-constant representatives x^p + a*x with a and a+1 units."""
    out = []
    for a in range(1, p - 1):
        coeffs = [0] * (p + 1)
        coeffs[1] = a
        coeffs[p] = 1
        out.append(IntPolynomial(coeffs))
    return out


def _is_prop_instance(f: IntPolynomial, p: int) -> bool:
    if f.degree != p or f.coefficient(p) != 1:
        return False
    if any(f.coefficient(i) != 0 for i in range(2, p)):
        return False
    a = f.coefficient(1) % p
    return a % p != 0 and (a + 1) % p != 0


def _affine_canon(f: IntPolynomial, p: int) -> tuple[int, ...]:
    """Monic zero-constant normal form under value-side affine maps u*f + v."""
    lead = f.coeffs[-1] % p
    u = pow(lead, -1, p)
    cs = [u * c % p for c in f.coeffs]
    cs[0] = 0
    return tuple(cs)


def _affine_orbit_canons(templates: list[IntPolynomial], p: int) -> set[tuple[int, ...]]:
    canons: set[tuple[int, ...]] = set()
    for g in templates:
        for c in range(1, p):
            for d in range(p):
                h = affine_compose(g, (1, 0), (c, d), p)
                canons.add(_affine_canon(h, p))
    return canons


def match_against_table(found: list[IntPolynomial], p: int) -> MatchReport:
    """Partition search hits into {table 1, degree-p family, affine image, linear, unexplained}."""
    check_prime(p)
    t1 = table1_instances(p)
    literal_t1 = {f.coeffs for f in t1}
    templates = t1 + prop_family_instances(p)
    orbit = _affine_orbit_canons(templates, p)

    buckets: dict[str, list[IntPolynomial]] = {
        "table1": [], "prop_family": [], "affine": [], "linear": [], "unexplained": []
    }
    for f in found:
        g = reduce_coeffs_mod(f, p)
        if g.coeffs in literal_t1:
            buckets["table1"].append(f)
        elif _is_prop_instance(g, p):
            buckets["prop_family"].append(f)
        elif g.degree <= 1:
            buckets["linear"].append(f)
        elif _affine_canon(g, p) in orbit:
            buckets["affine"].append(f)
        else:
            buckets["unexplained"].append(f)
    return MatchReport(
        table1=tuple(buckets["table1"]),
        prop_family=tuple(buckets["prop_family"]),
        affine=tuple(buckets["affine"]),
        linear=tuple(buckets["linear"]),
        unexplained=tuple(buckets["unexplained"]),
    )
