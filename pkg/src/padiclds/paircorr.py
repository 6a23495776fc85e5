"""Exact pair-correlation statistics for sequences in the p-adic integers.

The statistic counts ordered pairs i != j whose values are p-adically within
s/N^alpha of each other, normalized by N^2 and by the measure of the ball of
that radius.  Closeness below a p-adic radius is congruence mod p^k for the
right k, so with rational alpha everything reduces to exact integer
comparisons and class counting.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .padic import PAdicApprox, check_prime
from .polynomials import IntPolynomial
from .sequence import SequenceSpec, poly_sequence


@dataclass(frozen=True)
class PairCorrInput:
    """Inputs of one statistic evaluation.

    alpha is restricted to a rational so the radius comparison stays exact;
    s = 0 is rejected because the normalizing ball measure vanishes.
    """

    values: tuple
    p: int
    alpha: Fraction
    s: Fraction

    def __post_init__(self) -> None:
        check_prime(self.p)
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "s", Fraction(self.s))
        if not 0 < self.alpha <= 1:
            raise ValueError("alpha must lie in (0, 1]")
        if self.s <= 0:
            raise ValueError("s must be positive: the normalizing measure vanishes at s = 0")
        if not self.values:
            raise ValueError("need at least one value")


def threshold_level(s: Fraction, N: int, alpha: Fraction, p: int) -> int:
    """Smallest k >= 0 with p^(-k) <= s / N^alpha, decided in exact integers.

    Being within the radius s/N^alpha is then exactly congruence mod p^k.
    With alpha = u/v and s = su/sv, the condition is N^u * sv^v <= su^v * p^(k*v).
    """
    check_prime(p)
    s = Fraction(s)
    alpha = Fraction(alpha)
    if s <= 0:
        raise ValueError("s must be positive")
    if N < 1:
        raise ValueError("N must be >= 1")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    u, v = alpha.numerator, alpha.denominator
    lhs = N ** u * s.denominator ** v
    rhs = s.numerator ** v
    step = p ** v
    k = 0
    while lhs > rhs:
        rhs *= step
        k += 1
    return k


def _residues(values, p: int, k: int) -> list[int]:
    pk = p ** k
    out = []
    for v in values:
        if isinstance(v, PAdicApprox):
            if v.p != p:
                raise ValueError("values must live at the given prime")
            out.append(v.residue(k))  # raises on insufficient precision
        else:
            out.append(v % pk)
    return out


def pair_count(values, p: int, k: int) -> int:
    """Ordered pairs i != j with x_i congruent to x_j mod p^k.

    Computed from class sizes as sum of m*(m-1); level 0 counts all N^2 - N
    ordered pairs.
    """
    check_prime(p)
    if k < 0:
        raise ValueError("level k must be >= 0")
    counts = Counter(_residues(values, p, k))
    return sum(m * (m - 1) for m in counts.values())


def F_statistic(inp: PairCorrInput) -> Fraction:
    """The normalized pair count (p^k / N^2) * #{close ordered pairs}."""
    N = len(inp.values)
    k = threshold_level(inp.s, N, inp.alpha, inp.p)
    cnt = pair_count(inp.values, inp.p, k)
    return Fraction(inp.p ** k * cnt, N * N)


def ppc_sweep(
    source,
    p: int,
    alpha: Fraction,
    s_list: list[Fraction],
    N_schedule: list[int],
) -> list[tuple[int, Fraction, Fraction]]:
    """Evaluate the statistic on an (N, s) grid, emitted in schedule order.

    ``source`` may be a polynomial, a sequence spec, a full value list whose
    prefixes are used, or a callable N -> values.
    """
    if not N_schedule:
        raise ValueError("schedule must be nonempty")
    if isinstance(source, IntPolynomial):
        source = poly_sequence(source, max(N_schedule))
    elif isinstance(source, SequenceSpec):
        source = source.integer_values(max(N_schedule))
    rows: list[tuple[int, Fraction, Fraction]] = []
    for N in N_schedule:
        if callable(source):
            values = source(N)
        else:
            if N > len(source):
                raise ValueError(f"only {len(source)} values available, N={N} requested")
            values = source[:N]
        for s in s_list:
            inp = PairCorrInput(values=tuple(values), p=p, alpha=Fraction(alpha), s=Fraction(s))
            rows.append((N, Fraction(s), F_statistic(inp)))
    return rows
