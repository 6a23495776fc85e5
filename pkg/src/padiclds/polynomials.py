"""Integer polynomial algebra with exact coefficients.

Polynomials are stored little-endian: index i holds the coefficient of x^i,
trailing zeros trimmed, the zero polynomial being the empty tuple.
Coefficients are arbitrary signed integers; modular reduction happens at
evaluation or reduction time, never silently at construction.

Besides parsing/printing and exact evaluation, this module provides the two
degree-lowering reductions used by the classifier: folding exponents with the
period of the unit group mod p yields low-degree polynomials that agree with f
(respectively f') at every unit residue.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .padic import check_prime


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with arbitrary-precision integer coefficients.

    ``coeffs[i]`` is the coefficient of x^i.  The representation is canonical:
    no trailing zeros, zero polynomial == empty tuple, degree of the zero
    polynomial is -1.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs=()) -> None:
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"coefficient {c!r} is not an integer")
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(
            self.coefficient(i) + other.coefficient(i) for i in range(n)
        )

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial(other * c for c in self.coeffs)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, x: int) -> int:
        """Exact integer evaluation (Horner)."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)!r})"


def eval_mod(f: IntPolynomial, x: int, m: int) -> int:
    """f(x) mod m via Horner with every intermediate reduced; result in [0, m)."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    v = 0
    x %= m
    for c in reversed(f.coeffs):
        v = (v * x + c) % m
    return v


def derivative(f: IntPolynomial) -> IntPolynomial:
    """Formal derivative."""
    return IntPolynomial(i * c for i, c in enumerate(f.coeffs) if i >= 1)


def reduce_coeffs_mod(f: IntPolynomial, m: int) -> IntPolynomial:
    """Canonical representative with all coefficients in [0, m)."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    return IntPolynomial(c % m for c in f.coeffs)


def affine_compose(
    f: IntPolynomial,
    outer: tuple[int, int],
    inner: tuple[int, int],
    m: int,
) -> IntPolynomial:
    """a*f(c*x + d) + b with coefficients reduced mod m.

    outer = (a, b), inner = (c, d); a and c must be units mod m, otherwise the
    map is not an affine equivalence and the permutation property would not be
    preserved.
    """
    a, b = outer
    c, d = inner
    if m < 1:
        raise ValueError("modulus must be >= 1")
    if gcd(a, m) != 1 or gcd(c, m) != 1:
        raise ValueError("not an affine equivalence: multipliers must be units mod m")
    # Horner over polynomials: result = result*(c x + d) + coeff.
    inner_poly = IntPolynomial([d % m, c % m])
    acc = IntPolynomial()
    for coef in reversed(f.coeffs):
        acc = reduce_coeffs_mod(acc * inner_poly + IntPolynomial([coef]), m)
    acc = reduce_coeffs_mod(acc * (a % m), m)
    return reduce_coeffs_mod(acc + IntPolynomial([b]), m)


def reduce_functional(f: IntPolynomial, p: int) -> IntPolynomial:
    """The unique polynomial of degree <= p-1 agreeing with f on every residue mod p.

    Computed by repeatedly substituting x^p -> x (valid at every residue,
    including 0) and reducing coefficients mod p.  Exponent e >= p folds onto
    e - (p-1) >= 1, so the constant term is never touched.
    """
    check_prime(p)
    cs = list(f.coeffs)
    for e in range(len(cs) - 1, p - 1, -1):
        if cs[e]:
            cs[e - (p - 1)] += cs[e]
            cs[e] = 0
    return IntPolynomial(c % p for c in cs)


def unit_value_poly(f: IntPolynomial, p: int) -> IntPolynomial:
    """Degree <= p-2 polynomial agreeing with f at every unit residue mod p.

    Exponents are folded with period p-1 (the order of the unit group), so the
    coefficient of x^k, 0 <= k <= p-2, collects every a_{k + j(p-1)}.  At
    x = 0 the folding is invalid and the result may disagree with f; callers
    that care about 0 must check it separately.
    """
    check_prime(p)
    if p < 3:
        raise ValueError("unit-group folding requires p >= 3")
    out = [0] * (p - 1)
    for k in range(p - 1):
        j = 0
        while k + j * (p - 1) < len(f.coeffs):
            out[k] += f.coeffs[k + j * (p - 1)]
            j += 1
    return IntPolynomial(c % p for c in out)


def unit_derivative_poly(f: IntPolynomial, p: int) -> IntPolynomial:
    """Degree <= p-2 polynomial agreeing with f' at every unit residue mod p.

    The x^k coefficient collects (k+1-j) * a_{k+1+j(p-1)} over j >= 0,
    skipping summands whose integer weight k+1-j is divisible by p (they
    contribute 0 mod p, so the skip is observationally neutral).
    """
    check_prime(p)
    if p < 3:
        raise ValueError("unit-group folding requires p >= 3")
    out = [0] * (p - 1)
    for k in range(p - 1):
        j = 0
        while k + 1 + j * (p - 1) < len(f.coeffs):
            w = k + 1 - j
            if w % p != 0:
                out[k] += w * f.coeffs[k + 1 + j * (p - 1)]
            j += 1
    return IntPolynomial(c % p for c in out)


# --------------------------------------------------------------------------
# Parsing and printing
# --------------------------------------------------------------------------

class PolyParseError(ValueError):
    """Syntax error in a polynomial expression, with 0-based position."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"syntax error at position {position}: {message}")
        self.position = position


def parse_poly(text: str) -> IntPolynomial:
    """Parse a polynomial expression into canonical form.

    Two input forms are accepted:

    * sums of terms like ``x^5 + 2*x^3 - 4x + 1`` (the ``*`` is optional,
      whitespace is ignored, unary minus is allowed);
    * a bracketed coefficient list in degree-descending order,
      ``[a_k, ..., a_1, a_0]``.

    Like terms are combined; the result is canonical.
    """
    stripped = text.lstrip()
    if stripped.startswith("["):
        return _parse_coeff_list(text)
    return _parse_terms(text)


def _parse_coeff_list(text: str) -> IntPolynomial:
    s = text.strip()
    if not s.startswith("[") or not s.endswith("]"):
        raise PolyParseError("coefficient list must be enclosed in [ ]", len(s) - 1)
    inner = s[1:-1].strip()
    if not inner:
        return IntPolynomial()
    parts = inner.split(",")
    coeffs: list[int] = []
    for part in parts:
        p = part.strip()
        try:
            coeffs.append(int(p))
        except ValueError:
            raise PolyParseError(f"invalid integer {part.strip()!r}", text.find(part)) from None
    coeffs.reverse()  # input is degree-descending
    return IntPolynomial(coeffs)


def _parse_terms(text: str) -> IntPolynomial:
    terms: dict[int, int] = {}
    i = 0
    n = len(text)

    def skip_ws(j: int) -> int:
        while j < n and text[j].isspace():
            j += 1
        return j

    def read_int(j: int) -> tuple[int, int]:
        start = j
        while j < n and text[j].isdigit():
            j += 1
        if j == start:
            raise PolyParseError("expected digits", start)
        return int(text[start:j]), j

    i = skip_ws(i)
    if i == n:
        raise PolyParseError("empty polynomial expression", i)
    first = True
    while i < n:
        sign = 1
        i = skip_ws(i)
        if i < n and text[i] in "+-":
            sign = -1 if text[i] == "-" else 1
            i = skip_ws(i + 1)
        elif not first:
            raise PolyParseError(f"expected '+' or '-', found {text[i]!r}", i)
        first = False
        if i >= n:
            raise PolyParseError("dangling sign", i)

        coef = 1
        have_coef = False
        if text[i].isdigit():
            coef, i = read_int(i)
            have_coef = True
            i = skip_ws(i)
            if i < n and text[i] == "*":
                i = skip_ws(i + 1)
                if i >= n or text[i] != "x":
                    raise PolyParseError("expected 'x' after '*'", i)
        if i < n and text[i] == "x":
            i = skip_ws(i + 1)
            power = 1
            if i < n and text[i] == "^":
                i = skip_ws(i + 1)
                power, i = read_int(i)
            terms[power] = terms.get(power, 0) + sign * coef
        else:
            if not have_coef:
                raise PolyParseError(f"expected term, found {text[i]!r}", i)
            terms[0] = terms.get(0, 0) + sign * coef
        i = skip_ws(i)

    if not terms:
        return IntPolynomial()
    top = max(terms)
    return IntPolynomial(terms.get(k, 0) for k in range(top + 1))


def render(f: IntPolynomial) -> str:
    """Canonical text form; parse_poly(render(f)) == f."""
    if f.is_zero:
        return "0"
    parts: list[str] = []
    for k in range(f.degree, -1, -1):
        c = f.coefficient(k)
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif k == 1:
            body = "x" if mag == 1 else f"{mag}*x"
        else:
            body = f"x^{k}" if mag == 1 else f"{mag}*x^{k}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
