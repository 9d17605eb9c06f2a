"""Constant-term and coefficient identities, each computed two ways.

Every identity in this module has a brute-force route through the sparse
polynomial engine and an exact closed form built from factorials.  The
closed forms are evaluated in rational arithmetic with a final
integrality assertion — a cheap transcription test — and the pair of
routes is compared wherever either is used.

Variable conventions follow the classical statements: the Dyson and
Aomoto products live on variables x_0..x_n, the key coefficient on
x_1..x_n (indexed 0..n-1 internally).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .mpoly import SparsePoly, constant_term_laurent, sum_of_variables, targeted_coeff


class TooFewVariables(ValueError):
    """An identity over at least two variables got fewer."""


class ParameterOutOfRange(ValueError):
    """Identity parameter outside its legal range."""


class NonIntegerResult(ArithmeticError):
    """A factorial-ratio product failed to be an integer.

    The closed forms here are integers whenever their hypotheses hold, so
    this firing means the formula was transcribed wrong, not that the
    input was unlucky.
    """


class HypothesisViolated(ValueError):
    """Closed form evaluated outside the regime where it is proved."""


class DegreeInfeasible(ValueError):
    """The balancing power of (x_1 + ... + x_n) would need a negative exponent."""


class InterpolationMismatch(ArithmeticError):
    """An extra sample point fell off the interpolated polynomial."""


def chi(condition) -> int:
    """Indicator: 1 if the condition holds, else 0."""
    return 1 if condition else 0


def _as_integer(x: Fraction) -> int:
    if x.denominator != 1:
        raise NonIntegerResult(f"expected an integer, got {x}")
    return x.numerator


def _unit(nvars, i, e=1):
    return tuple(e if j == i else 0 for j in range(nvars))


def _one_minus_ratio(nvars, i, j) -> SparsePoly:
    """1 - x_i/x_j as a Laurent polynomial."""
    e = list(_unit(nvars, i))
    e[j] -= 1
    return SparsePoly(nvars, {(0,) * nvars: 1, tuple(e): -1})


def _difference(nvars, i, j) -> SparsePoly:
    """x_i - x_j."""
    return SparsePoly(nvars, {_unit(nvars, i): 1, _unit(nvars, j): -1})


def _check_avec(avec):
    avec = tuple(int(a) for a in avec)
    if any(a < 0 for a in avec):
        raise ParameterOutOfRange(f"entries must be >= 0, got {avec}")
    return avec


# ----------------------------------------------------------------------
# Dyson's identity
# ----------------------------------------------------------------------

def dyson_constant_term(avec) -> int:
    """Constant term of prod_{i != j} (1 - x_i/x_j)^{a_j}, by expansion.

    The product runs over ordered pairs of the len(avec) variables; the
    exponent depends on the second index only.
    """
    avec = _check_avec(avec)
    nv = len(avec)
    if nv < 2:
        raise TooFewVariables(f"need at least 2 variables, got {nv}")
    factors = []
    for j in range(nv):
        if avec[j] == 0:
            continue
        for i in range(nv):
            if i != j:
                factors.append((_one_minus_ratio(nv, i, j), avec[j]))
    return constant_term_laurent(factors) if factors else 1


def dyson_closed_form(avec) -> int:
    """The multinomial coefficient (sum a_j)! / prod a_j!."""
    avec = _check_avec(avec)
    val = Fraction(factorial(sum(avec)))
    for a in avec:
        val /= factorial(a)
    return _as_integer(val)


def zeilberger_coefficient(avec) -> int:
    """Dyson's constant term recovered from a single coefficient of
    prod_{i < j} (x_i - x_j)^{a_i + a_j}.

    Clearing denominators in the Dyson product and grouping each ordered
    pair with its reverse gives

        constant term = sign * [prod_j x_j^{n*a_j}] prod_{i<j} (x_i - x_j)^{a_i+a_j}

    with n = len(avec) - 1 and sign = (-1)^{sum_j j*a_j}.  (The variant
    sometimes quoted with target monomial prod x_j^{a_j} is degree-
    inconsistent for n >= 2: the product is homogeneous of degree
    n * sum(a_j), so that coefficient is identically zero.)  This route
    shares no code with :func:`dyson_constant_term` past the raw
    polynomial engine, so their agreement is a real cross-check.
    """
    avec = _check_avec(avec)
    nv = len(avec)
    if nv < 2:
        raise TooFewVariables(f"need at least 2 variables, got {nv}")
    n = nv - 1
    sign = -1 if sum(j * a for j, a in enumerate(avec)) % 2 else 1
    factors = []
    for i in range(nv):
        for j in range(i + 1, nv):
            rep = avec[i] + avec[j]
            if rep:
                factors.append((_difference(nv, i, j), rep))
    target = tuple(n * a for a in avec)
    return sign * targeted_coeff(factors, target)


# ----------------------------------------------------------------------
# Aomoto's identity
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class AomotoParams:
    """Parameters of the shifted Dyson product on x_0..x_n.

    n  -- number of non-x_0 variables
    s  -- how many of the inner factors carry the +1 shift (0 <= s <= n)
    a  -- exponent on the (1 - x_l/x_0) factors
    b  -- exponent on the (1 - x_0/x_l) factors
    m  -- symmetric exponent on the (1 - x_i/x_j) factors, 1 <= i != j <= n
    """

    n: int
    s: int
    a: int
    b: int
    m: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterOutOfRange(f"n must be >= 1, got {self.n}")
        if not 0 <= self.s <= self.n:
            raise ParameterOutOfRange(f"s must lie in [0, {self.n}], got {self.s}")
        if self.a < 0 or self.b < 0 or self.m < 0:
            raise ParameterOutOfRange(
                f"a, b, m must be >= 0, got a={self.a}, b={self.b}, m={self.m}"
            )


def _aomoto_factors(params: AomotoParams, chi_side: str):
    """Laurent factors of the Aomoto product.

    chi_side chooses where the +1 shift for l <= s sits:
      "a" -- on the (1 - x_l/x_0) exponent (the orientation of the
             identity as usually stated),
      "b" -- on the (1 - x_0/x_l) exponent (the inverted orientation
             reached by substituting x_l -> 1/x_l).
    """
    if chi_side not in ("a", "b"):
        raise ValueError(f"chi_side must be 'a' or 'b', got {chi_side!r}")
    nv = params.n + 1
    factors = []
    for l in range(1, params.n + 1):
        up = params.a + (chi(l <= params.s) if chi_side == "a" else 0)
        down = params.b + (chi(l <= params.s) if chi_side == "b" else 0)
        if up:
            factors.append((_one_minus_ratio(nv, l, 0), up))
        if down:
            factors.append((_one_minus_ratio(nv, 0, l), down))
    if params.m:
        for i in range(1, params.n + 1):
            for j in range(1, params.n + 1):
                if i != j:
                    factors.append((_one_minus_ratio(nv, i, j), params.m))
    return factors


def aomoto_constant_term(params: AomotoParams, chi_side: str = "a") -> int:
    """Constant term of the Aomoto product, by expansion on n+1 variables."""
    return constant_term_laurent(_aomoto_factors(params, chi_side))


def aomoto_closed_form(params: AomotoParams) -> int:
    """Factorial product equal to the chi-side-'a' constant term:

        prod_{l=0}^{n-1} (a+b+ml+chi(l>=n-s))! (ml+m)!
                         / [ (a+ml+chi(l>=n-s))! (ml+b)! m! ]
    """
    n, s, a, b, m = params.n, params.s, params.a, params.b, params.m
    val = Fraction(1)
    for l in range(n):
        c = chi(l >= n - s)
        val *= Fraction(
            factorial(a + b + m * l + c) * factorial(m * l + m),
            factorial(a + m * l + c) * factorial(m * l + b) * factorial(m),
        )
    return _as_integer(val)


def aomoto_inverted_closed_form(a: int, b: int, s: int, m: int, n: int) -> int:
    """Factorial product equal to the chi-side-'b' constant term.

    Substituting x_l -> 1/x_l swaps the roles of a and b, which moves the
    chi shift onto the b-side factorials:

        prod_{l=0}^{n-1} (a+b+ml+chi(l>=n-s))! (ml+m)!
                         / [ (ml+a)! (b+ml+chi(l>=n-s))! m! ]
    """
    AomotoParams(n=n, s=s, a=a, b=b, m=m)  # reuse the range checks
    val = Fraction(1)
    for l in range(n):
        c = chi(l >= n - s)
        val *= Fraction(
            factorial(a + b + m * l + c) * factorial(m * l + m),
            factorial(m * l + a) * factorial(b + m * l + c) * factorial(m),
        )
    return _as_integer(val)


# ----------------------------------------------------------------------
# The key coefficient and its closed form
# ----------------------------------------------------------------------

def key_coefficient(sizes, m: int) -> int:
    """[prod_j x_j^{sizes_j - 1}] prod_{i != j} (x_i - x_j)^m (x_1+...+x_n)^E

    with E = sum(sizes_j - 1) - m*n*(n-1), evaluated by pruned expansion.
    This is the coefficient whose nonvanishing mod p certifies the
    restricted-sumset lower bound for sets of the given sizes.
    """
    sizes = tuple(int(sz) for sz in sizes)
    n = len(sizes)
    if n < 1:
        raise ParameterOutOfRange("need at least one set size")
    if any(sz < 1 for sz in sizes):
        raise ParameterOutOfRange(f"sizes must be >= 1, got {sizes}")
    if m < 0:
        raise ParameterOutOfRange(f"m must be >= 0, got {m}")
    balance = sum(sizes) - n - m * n * (n - 1)
    if balance < 0:
        raise DegreeInfeasible(
            f"sum(sizes_j - 1) = {sum(sizes) - n} < m*n*(n-1) = {m * n * (n - 1)}"
        )
    factors = []
    if m:
        for i in range(n):
            for j in range(n):
                if i != j:
                    factors.append((_difference(n, i, j), m))
    factors.append((sum_of_variables(n), balance))
    return targeted_coeff(factors, tuple(sz - 1 for sz in sizes))


def key_coefficient_closed_form(n: int, m: int, k: int, s: int) -> int:
    """Closed form of :func:`key_coefficient` when s sizes equal k+1 and
    n-s equal k, valid for k > m*(n-1):

        (prod_{j=0}^{s-1} 1/(k-jm)) * (sum k_j - m n^2 + m n - n)!/(m!)^n
        * prod_{j=1}^{n} (jm)! / (k-1-jm+m)!
    """
    if n < 1 or m < 0 or k < 1 or not 0 <= s <= n:
        raise ParameterOutOfRange(f"bad parameters n={n}, m={m}, k={k}, s={s}")
    if k <= m * (n - 1):
        raise HypothesisViolated(f"need k > m*(n-1), got k={k}, m*(n-1)={m * (n - 1)}")
    total = n * k + s
    val = Fraction(1)
    for j in range(s):
        val /= k - j * m
    val *= factorial(total - m * n * n + m * n - n)
    val /= factorial(m) ** n
    for j in range(1, n + 1):
        val *= Fraction(factorial(j * m), factorial(k - 1 - j * m + m))
    out = _as_integer(val)
    if out <= 0:
        raise ArithmeticError(
            f"closed form should be positive under the hypothesis, got {out}"
        )
    return out


# ----------------------------------------------------------------------
# Polynomiality in the shift parameter and the leading coefficient
# ----------------------------------------------------------------------

def _interpolate(xs, ys):
    """Exact Lagrange interpolation; coefficients ascending by degree."""
    npts = len(xs)
    coeffs = [Fraction(0)] * npts
    for i in range(npts):
        basis = [Fraction(1)]
        denom = 1
        for j in range(npts):
            if j == i:
                continue
            nxt = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d + 1] += c
                nxt[d] -= c * xs[j]
            basis = nxt
            denom *= xs[i] - xs[j]
        scale = Fraction(ys[i], denom)
        for d, c in enumerate(basis):
            coeffs[d] += c * scale
    return coeffs


def _eval_poly(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class LeadingCoefficientReport:
    """Outcome of :func:`leading_coefficient_check`."""

    n: int
    s: int
    b: int
    m: int
    degree: int
    sample_values: tuple
    coefficients: tuple          # interpolant, ascending degree, Fractions
    leading_coefficient: Fraction
    expected_leading: Fraction   # constant term route, divided by degree!
    agree: bool


def leading_coefficient_check(n: int, s: int, b: int, m: int,
                              degree_bound_slack: int = 2) -> LeadingCoefficientReport:
    """Check that the inverted closed form is a polynomial in its first
    argument and that its leading coefficient matches an independent
    constant-term computation.

    With a_l = b + chi(l <= s) for l = 1..n and D = sum(a_l), the value
    f(a) = aomoto_inverted_closed_form(a, b, s, m, n) is sampled at
    a = 0..D+slack.  The first D+1 samples determine a degree-<=D
    interpolant; the slack samples must fall on it (else
    InterpolationMismatch).  Its degree-D coefficient is compared with

        (1/D!) * constant term of (x_1+...+x_n)^D prod_l x_l^{-a_l}
                                  prod_{i != j} (1 - x_i/x_j)^m.
    """
    if n < 1 or b < 0 or m < 0 or not 0 <= s <= n:
        raise ParameterOutOfRange(f"bad parameters n={n}, s={s}, b={b}, m={m}")
    if degree_bound_slack < 0:
        raise ParameterOutOfRange(f"slack must be >= 0, got {degree_bound_slack}")
    a_l = [b + chi(l <= s) for l in range(1, n + 1)]
    degree = sum(a_l)
    xs = list(range(degree + 1 + degree_bound_slack))
    ys = [aomoto_inverted_closed_form(a, b, s, m, n) for a in xs]
    coeffs = _interpolate(xs[: degree + 1], ys[: degree + 1])
    for x, y in zip(xs[degree + 1:], ys[degree + 1:]):
        got = _eval_poly(coeffs, x)
        if got != y:
            raise InterpolationMismatch(
                f"sample at a={x} is {y}, but the degree-{degree} "
                f"interpolant gives {got}"
            )
    factors = [
        (sum_of_variables(n), degree),
        SparsePoly(n, {tuple(-al for al in a_l): 1}),
    ]
    if m:
        for i in range(n):
            for j in range(n):
                if i != j:
                    factors.append((_one_minus_ratio(n, i, j), m))
    expected = Fraction(constant_term_laurent(factors), factorial(degree))
    leading = coeffs[degree]
    return LeadingCoefficientReport(
        n=n, s=s, b=b, m=m,
        degree=degree,
        sample_values=tuple(ys),
        coefficients=tuple(coeffs),
        leading_coefficient=leading,
        expected_leading=expected,
        agree=leading == expected,
    )


@dataclass(frozen=True)
class IdentityReport:
    """A single brute-vs-closed comparison, as emitted in CLI rows."""

    identity: str
    params: dict
    brute_value: int
    closed_value: int

    @property
    def agree(self) -> bool:
        return self.brute_value == self.closed_value
