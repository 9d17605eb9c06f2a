"""Restricted sumsets over Z/pZ: enumeration, bounds, and certificates.

The central object is a :class:`SumsetInstance`: source sets A_1..A_n
over Z/pZ together with, for every ordered index pair (i, j), i != j, a
forbidden difference set S_ij.  The restricted sumset is

    C = { a_1 + ... + a_n : a_j in A_j,  a_i - a_j not in S_ij for i != j }.

This module enumerates C exactly, evaluates the lower-bound formulas the
CLI reports as thm1/thm2/thm3 (plus the older floor bound they improve
on), checks coefficient certificates for those bounds, and carries the
shrink and coverage-threshold constructions built on top of them.
Instances can be serialized to a small JSON document and regenerated
deterministically from a seed.
"""

import itertools
import json
from dataclasses import dataclass
from math import comb, isqrt, prod

from .ffield import FieldElem, PrimeField
from .identities import DegreeInfeasible, ParameterOutOfRange, key_coefficient
from .mpoly import SparsePoly, sum_of_variables, targeted_coeff

DEFAULT_BUDGET = 10 ** 7
BUDGET_ENV_VAR = "SUMSETLAB_BUDGET"

HYPOTHESIS_CHOICES = ("none", "thm1", "thm2", "thm3")


class BudgetExceeded(RuntimeError):
    """The requested computation is larger than the configured budget."""


class NotInShrinkRegime(ValueError):
    """Shrinking only applies when p <= n(k-1) - mn(n-1) and p > mn."""


class CannotSatisfyHypothesis(ValueError):
    """No instance with these parameters can satisfy the requested hypothesis."""


class NonUniformForbidden(ValueError):
    """An operation requiring uniform |S_ij| met a non-uniform instance."""


class InstanceFormatError(ValueError):
    """Malformed instance document."""


class SumsetInstance:
    """Source sets plus per-ordered-pair forbidden difference sets.

    ``sets`` are stored as sorted tuples of canonical residues;
    ``forbidden`` maps every ordered pair (i, j), 0-based, i != j, to a
    frozenset (missing pairs are treated as empty).  Instances are
    immutable by convention.
    """

    def __init__(self, field, sets, forbidden=None):
        self.field = field if isinstance(field, PrimeField) else PrimeField(field)
        p = self.field.p
        norm_sets = []
        for idx, raw in enumerate(sets):
            elems = tuple(sorted(int(x) for x in raw))
            if not elems:
                raise InstanceFormatError(f"set {idx + 1} is empty")
            if len(set(elems)) != len(elems):
                raise InstanceFormatError(f"set {idx + 1} has repeated elements")
            if elems[0] < 0 or elems[-1] >= p:
                raise InstanceFormatError(
                    f"set {idx + 1} has elements outside [0, {p})"
                )
            norm_sets.append(elems)
        if not norm_sets:
            raise InstanceFormatError("need at least one set")
        n = len(norm_sets)
        norm_forb = {}
        forbidden = dict(forbidden or {})
        for key, raw in forbidden.items():
            i, j = key
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise InstanceFormatError(f"bad forbidden-set index pair {key}")
            elems = sorted(int(x) for x in raw)
            if len(set(elems)) != len(elems):
                raise InstanceFormatError(f"forbidden set for pair {key} has repeats")
            if elems and (elems[0] < 0 or elems[-1] >= p):
                raise InstanceFormatError(
                    f"forbidden set for pair {key} has elements outside [0, {p})"
                )
            norm_forb[(i, j)] = frozenset(elems)
        for i in range(n):
            for j in range(n):
                if i != j:
                    norm_forb.setdefault((i, j), frozenset())
        self.sets = tuple(norm_sets)
        self.forbidden = norm_forb

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def sizes(self) -> tuple:
        return tuple(len(A) for A in self.sets)

    @property
    def uniform_size(self):
        """Common |A_j| when the sizes are all equal, else None."""
        sizes = set(self.sizes)
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def uniform_m(self):
        """Common |S_ij| when all forbidden sets have equal size, else None.

        A single-set instance has no pairs; its m is 0.
        """
        if self.n == 1:
            return 0
        ms = {len(S) for S in self.forbidden.values()}
        return ms.pop() if len(ms) == 1 else None

    def __eq__(self, other):
        if not isinstance(other, SumsetInstance):
            return NotImplemented
        return (self.p == other.p and self.sets == other.sets
                and self.forbidden == other.forbidden)

    def __repr__(self):
        return (f"SumsetInstance(p={self.p}, sizes={self.sizes}, "
                f"m={self.uniform_m})")


def uniform_forbidden(n: int, s_set) -> dict:
    """The forbidden map with S_ij = s_set for every ordered pair."""
    S = frozenset(int(x) for x in s_set)
    return {(i, j): S for i in range(n) for j in range(n) if i != j}


# ----------------------------------------------------------------------
# Enumeration
# ----------------------------------------------------------------------

def enumerate_restricted_sumset(inst: SumsetInstance, budget: int = DEFAULT_BUDGET) -> set:
    """The exact restricted sumset C, as a set of canonical residues.

    Depth-first over A_1 x ... x A_n; each new coordinate is checked
    against all earlier ones (both orientations of the pair constraint)
    before descending, which prunes hard when forbidden sets are dense.
    The tuple count prod |A_j| must stay within the budget.
    """
    total = prod(inst.sizes)
    if total > budget:
        raise BudgetExceeded(
            f"{total} tuples exceed the enumeration budget of {budget}"
        )
    p = inst.p
    n = inst.n
    sets = inst.sets
    earlier = [
        [(i, inst.forbidden[i, d], inst.forbidden[d, i]) for i in range(d)]
        for d in range(n)
    ]
    out = set()
    chosen = [0] * n

    def walk(d, acc):
        if d == n:
            out.add(acc % p)
            return
        for a in sets[d]:
            for i, forb_id, forb_di in earlier[d]:
                ai = chosen[i]
                if (ai - a) % p in forb_id or (a - ai) % p in forb_di:
                    break
            else:
                chosen[d] = a
                walk(d + 1, acc + a)

    walk(0, 0)
    return out


# ----------------------------------------------------------------------
# Bound formulas with hypothesis checking
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BoundEntry:
    name: str
    formula: str
    value: int | None          # None when the shape prerequisites fail
    hypothesis_met: bool
    reason: str


@dataclass(frozen=True)
class BoundReport:
    brute_cardinality: int | None
    thm1: BoundEntry
    thm2: BoundEntry
    thm3: BoundEntry
    old: BoundEntry

    def entries(self):
        return (self.thm1, self.thm2, self.thm3, self.old)


_F1 = "n*(k-1) - m*n*(n-1) + 1"
_F2 = "sum(|A_j| - 1) - m*n*(n-1) + 1"
_F3 = "min(p, n*(k-1) - m*n*(n-1) + 1)"
_FOLD = "n*floor((p-1)/n) + 1"


def compute_bounds(inst: SumsetInstance, brute_cardinality: int | None = None) -> BoundReport:
    """Evaluate every bound formula and flag each one's hypothesis.

    Bounds whose shape prerequisites fail (non-uniform sizes where a
    common k is required, non-uniform forbidden sets) get value None;
    a computable bound whose arithmetic hypothesis fails keeps its value
    but has hypothesis_met False.  Never raises: inapplicable bounds are
    flagged, not thrown.  The enumerated cardinality is echoed if the
    caller supplies it.
    """
    p, n = inst.p, inst.n
    sizes = inst.sizes
    k = inst.uniform_size
    m = inst.uniform_m

    if m is None:
        why = "forbidden-set sizes are not uniform"
        thm1 = BoundEntry("thm1", _F1, None, False, why)
        thm2 = BoundEntry("thm2", _F2, None, False, why)
        thm3 = BoundEntry("thm3", _F3, None, False, why)
        old = BoundEntry("old", _FOLD, None, False, why)
        return BoundReport(brute_cardinality, thm1, thm2, thm3, old)

    deg = m * n * (n - 1)

    if k is None:
        why = "set sizes are not uniform"
        thm1 = BoundEntry("thm1", _F1, None, False, why)
        thm3 = BoundEntry("thm3", _F3, None, False, why)
        old = BoundEntry("old", _FOLD, None, False, why)
    else:
        v1 = n * (k - 1) - deg + 1
        need = max(n * (k - 1) - deg, m * n)
        thm1 = BoundEntry(
            "thm1", _F1, v1, p > need,
            f"p={p} {'>' if p > need else '<='} max(n(k-1)-mn(n-1), mn)={need}",
        )
        thm3 = BoundEntry(
            "thm3", _F3, min(p, v1), p > m * n,
            f"p={p} {'>' if p > m * n else '<='} mn={m * n}",
        )
        in_shrink = p > m * n and p <= n * (k - 1) - deg
        old = BoundEntry(
            "old", _FOLD, n * ((p - 1) // n) + 1, in_shrink,
            "p > mn and p <= n(k-1)-mn(n-1)" if in_shrink
            else f"needs p > mn={m * n} and p <= n(k-1)-mn(n-1)={n * (k - 1) - deg}",
        )

    if max(sizes) - min(sizes) <= 1:
        v2 = sum(sz - 1 for sz in sizes) - deg + 1
        need2 = max(m * n, sum(sz - 1 for sz in sizes) - deg)
        thm2 = BoundEntry(
            "thm2", _F2, v2, p > need2,
            f"p={p} {'>' if p > need2 else '<='} max(mn, sum(|A_j|-1)-mn(n-1))={need2}",
        )
    else:
        thm2 = BoundEntry(
            "thm2", _F2, None, False,
            "set sizes must lie within {k, k+1} for a single k",
        )

    return BoundReport(brute_cardinality, thm1, thm2, thm3, old)


# ----------------------------------------------------------------------
# Coefficient certificates
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CertificateReport:
    """A nonvanishing-coefficient certificate for a sumset lower bound.

    certificate_valid means the coefficient is nonzero mod p, which
    proves |C| >= claimed_bound; a vanishing coefficient proves nothing
    (the bound may still hold).
    """

    method: str                  # "leading-form" or "literal-product"
    coefficient_integer: int
    coefficient_mod_p: FieldElem
    claimed_bound: int
    certificate_valid: bool


def certificate_check(inst: SumsetInstance) -> CertificateReport:
    """Certificate via the leading form prod_{i != j} (x_i - x_j)^m.

    Requires uniform |S_ij| = m.  Only the top-degree homogeneous part of
    the constraint polynomial reaches the extracted coefficient, so the
    certificate does not depend on the forbidden sets' actual elements.
    """
    m = inst.uniform_m
    if m is None:
        raise NonUniformForbidden(
            "the leading-form certificate needs all |S_ij| equal; "
            "use certificate_check_literal"
        )
    sizes = inst.sizes
    n = inst.n
    coefficient = key_coefficient(sizes, m)  # may raise DegreeInfeasible
    claimed = sum(sz - 1 for sz in sizes) - m * n * (n - 1) + 1
    cmod = inst.field.element(coefficient)
    return CertificateReport("leading-form", coefficient, cmod, claimed, cmod.value != 0)


def certificate_check_literal(inst: SumsetInstance, budget: int = DEFAULT_BUDGET) -> CertificateReport:
    """Certificate from the literal constraint polynomial.

    Expands P = prod_{i != j} prod_{s in S_ij} (x_i - x_j - s) against the
    balancing power of (x_1 + ... + x_n) and extracts the coefficient of
    prod x_j^{|A_j| - 1} directly.  Works for non-uniform forbidden sets;
    on uniform instances it agrees exactly with :func:`certificate_check`.
    The pruned partial products are capped by prod |A_j|, so that product
    must stay within the budget.
    """
    n = inst.n
    sizes = inst.sizes
    deg = sum(len(S) for S in inst.forbidden.values())
    balance = sum(sz - 1 for sz in sizes) - deg
    if balance < 0:
        raise DegreeInfeasible(
            f"sum(|A_j| - 1) = {sum(sz - 1 for sz in sizes)} < deg P = {deg}"
        )
    if prod(sizes) > budget:
        raise BudgetExceeded(
            f"{prod(sizes)} partial monomials exceed the budget of {budget}"
        )
    factors = []
    for (i, j) in sorted(inst.forbidden):
        ei = tuple(1 if t == i else 0 for t in range(n))
        ej = tuple(1 if t == j else 0 for t in range(n))
        for s in sorted(inst.forbidden[i, j]):
            factors.append(SparsePoly(n, [(ei, 1), (ej, -1), ((0,) * n, -s)]))
    factors.append((sum_of_variables(n), balance))
    coefficient = targeted_coeff(factors, tuple(sz - 1 for sz in sizes))
    cmod = inst.field.element(coefficient)
    return CertificateReport(
        "literal-product", coefficient, cmod, balance + 1, cmod.value != 0
    )


# ----------------------------------------------------------------------
# Shrink construction
# ----------------------------------------------------------------------

def shrink_sizes(p: int, n: int, m: int, k: int) -> tuple:
    """Subset sizes in {k', k'+1} whose summed bound lands exactly on p.

    With k' = floor((p-1)/n) + m(n-1) + 1 and (p-1) mod n entries raised
    to k'+1, the sizes satisfy sum(sizes_j - 1) - m*n*(n-1) = p - 1 and
    never exceed k, so sets of these sizes exist inside any uniform
    size-k instance.  Only defined in the regime where shrinking is the
    right move: p <= n(k-1) - mn(n-1) and p > mn.
    """
    if p < 2 or n < 1 or m < 0 or k < 1:
        raise ParameterOutOfRange(f"bad parameters p={p}, n={n}, m={m}, k={k}")
    if p <= m * n:
        raise NotInShrinkRegime(f"needs p > mn, got p={p}, mn={m * n}")
    if p > n * (k - 1) - m * n * (n - 1):
        raise NotInShrinkRegime(
            f"needs p <= n(k-1)-mn(n-1), got p={p}, "
            f"n(k-1)-mn(n-1)={n * (k - 1) - m * n * (n - 1)}"
        )
    kp = (p - 1) // n + m * (n - 1) + 1
    r = (p - 1) % n
    sizes = (kp + 1,) * r + (kp,) * (n - r)
    # arithmetic identities, rechecked because downstream soundness rests on them
    if sum(sizes) - n - m * n * (n - 1) != p - 1:
        raise ArithmeticError(f"shrink sizes {sizes} miss the target sum for p={p}")
    if max(sizes) > k:
        raise ArithmeticError(f"shrink sizes {sizes} exceed k={k}")
    return sizes


# ----------------------------------------------------------------------
# Coverage threshold (sums of n pairwise-unrelated elements hit all of Z/pZ)
# ----------------------------------------------------------------------

def coverage_threshold(p: int, m: int) -> int:
    """Least |A| with (|A| + m - 1)^2 >= 4mp + 4m(m-3) + 2.

    Pure integer comparison via isqrt — no floating point, so the value
    is bit-exact everywhere.
    """
    if m < 1:
        raise ParameterOutOfRange(f"m must be >= 1, got {m}")
    if p < 2:
        raise ParameterOutOfRange(f"p must be >= 2, got {p}")
    q = 4 * m * p + 4 * m * (m - 3) + 2
    u = isqrt(q - 1) + 1  # least u with u*u >= q (q >= 2 here)
    return max(1, u - m + 1)


@dataclass(frozen=True)
class CoverageReport:
    subset: tuple
    n: int
    threshold: int
    hypothesis_met: bool
    covered: bool
    missing: tuple


def coverage_check(p, s_set, a_set, budget: int = DEFAULT_BUDGET) -> CoverageReport:
    """Test whether sums of n elements of A (pairwise differences outside
    S) cover all of Z/pZ, with n = floor((|A| - 1 + m) / (2m)).

    The arithmetic identities behind the threshold are recomputed on
    every call and raise if violated:
      - r = (|A| - 1 + m) - 2mn lies in [0, 2m - 1],
      - (|A| - 1 + m)^2 = r^2 (mod 4m),
      - when |A| meets the threshold, n(|A|-1) - mn(n-1) + 1 >= p.
    """
    field = p if isinstance(p, PrimeField) else PrimeField(p)
    p = field.p
    S = tuple(sorted(set(int(x) for x in s_set)))
    A = tuple(sorted(set(int(x) for x in a_set)))
    m = len(S)
    if m < 1:
        raise ParameterOutOfRange("S must be nonempty")
    if not A:
        raise ParameterOutOfRange("A must be nonempty")
    size = len(A)
    n = (size - 1 + m) // (2 * m)

    r = (size - 1 + m) - 2 * m * n
    if not 0 <= r <= 2 * m - 1:
        raise ArithmeticError(f"remainder r={r} outside [0, {2 * m - 1}]")
    if ((size - 1 + m) ** 2 - r * r) % (4 * m) != 0:
        raise ArithmeticError(
            f"(|A|-1+m)^2 = {(size - 1 + m) ** 2} is not r^2 = {r * r} mod {4 * m}"
        )

    threshold = coverage_threshold(p, m)
    hypothesis_met = size >= threshold
    if hypothesis_met and n * (size - 1) - m * n * (n - 1) + 1 < p:
        raise ArithmeticError(
            f"threshold met but n(|A|-1)-mn(n-1)+1 = "
            f"{n * (size - 1) - m * n * (n - 1) + 1} < p = {p}"
        )

    if n == 0:
        sumset = {0}  # the empty sum
    else:
        inst = SumsetInstance(field, (A,) * n, uniform_forbidden(n, S))
        sumset = enumerate_restricted_sumset(inst, budget)
    missing = tuple(sorted(set(range(p)) - sumset))
    return CoverageReport(A, n, threshold, hypothesis_met, not missing, missing)


@dataclass(frozen=True)
class CoverageSweepResult:
    p: int
    m: int
    s_set: tuple
    subset_size: int
    threshold: int
    mode: str
    rows: tuple

    def failures(self):
        """Rows that would falsify the implementation: hypothesis met, not covered."""
        return [row for row in self.rows if row.hypothesis_met and not row.covered]


def coverage_sweep(p: int, m: int, mode: str = "exhaustive", count: int = 50,
                   seed: int = 0, size: int | None = None, s_set=None,
                   budget: int = DEFAULT_BUDGET) -> CoverageSweepResult:
    """Run :func:`coverage_check` over many subsets A of a fixed size.

    The default size is the coverage threshold and the default S is
    {0, ..., m-1}.  Exhaustive mode walks all C(p, size) subsets (budget
    permitting); sample mode draws ``count`` subsets from the seeded
    generator (repeats possible).
    """
    field = PrimeField(p)
    S = tuple(range(m)) if s_set is None else tuple(sorted(set(int(x) for x in s_set)))
    if len(S) != m:
        raise ParameterOutOfRange(f"S={S} does not have size m={m}")
    threshold = coverage_threshold(p, m)
    if size is None:
        size = threshold
    if not 1 <= size <= p:
        raise ParameterOutOfRange(f"subset size {size} not in [1, {p}]")
    if mode == "exhaustive":
        n_subsets = comb(p, size)
        if n_subsets > budget:
            raise BudgetExceeded(
                f"{n_subsets} subsets of size {size} exceed the budget of {budget}"
            )
        subsets = itertools.combinations(range(p), size)
    elif mode == "sample":
        if count < 0:
            raise ParameterOutOfRange(f"count must be >= 0, got {count}")
        rng = SplitMix64(seed)
        subsets = [rng.sample(p, size) for _ in range(count)]
    else:
        raise ParameterOutOfRange(f"mode must be 'exhaustive' or 'sample', got {mode!r}")
    rows = tuple(coverage_check(field, S, A, budget) for A in subsets)
    return CoverageSweepResult(p, m, S, size, threshold, mode, rows)


# ----------------------------------------------------------------------
# Seeded instance generation
# ----------------------------------------------------------------------

class SplitMix64:
    """Deterministic 64-bit stream with a fixed, portable recurrence.

    state   = (state + 0x9E3779B97F4A7C15) mod 2^64
    z       = state
    z       = ((z >> 30) xor z) * 0xBF58476D1CE4E5B9 mod 2^64
    z       = ((z >> 27) xor z) * 0x94D049BB133111EB mod 2^64
    output  = (z >> 31) xor z

    Bounded draws reduce the 64-bit output modulo the bound; the bias is
    irrelevant at desk scale and the arithmetic reproduces everywhere.
    """

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        if bound < 1:
            raise ValueError(f"bound must be >= 1, got {bound}")
        return self.next64() % bound

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def sample(self, population_size: int, count: int) -> tuple:
        """``count`` distinct values from range(population_size), sorted.

        Partial Fisher-Yates: the first ``count`` slots of a shuffle.
        """
        if not 0 <= count <= population_size:
            raise ValueError(
                f"cannot sample {count} from a population of {population_size}"
            )
        pool = list(range(population_size))
        for i in range(count):
            j = i + self.below(population_size - i)
            pool[i], pool[j] = pool[j], pool[i]
        return tuple(sorted(pool[:count]))


def parameter_hypothesis_met(enforce: str, p: int, n: int, k: int, m: int) -> bool:
    """Hypothesis of the named bound for a uniform instance.

    These conditions depend only on (p, n, k, m) — never on which
    elements get sampled — so they can be decided before generation.
    """
    if enforce == "none":
        return True
    if enforce in ("thm1", "thm2"):
        # with all |A_j| = k the two hypotheses coincide
        return p > max(n * (k - 1) - m * n * (n - 1), m * n)
    if enforce == "thm3":
        return p > m * n
    raise ValueError(f"enforce must be one of {HYPOTHESIS_CHOICES}, got {enforce!r}")


def random_instance(seed: int, p: int, n: int, k: int, m: int,
                    enforce: str = "none") -> SumsetInstance:
    """Deterministic uniform instance from a seed.

    Draws A_1..A_n first (each a sorted k-subset of Z/pZ), then S_ij in
    ascending (i, j) order, all from one SplitMix64 stream, so the same
    seed always yields the same instance.  Because the enforced
    hypotheses depend only on (p, n, k, m), an unsatisfiable request
    fails immediately — resampling the elements could never help.
    """
    field = PrimeField(p)
    if n < 1:
        raise ParameterOutOfRange(f"n must be >= 1, got {n}")
    if not 1 <= k <= p:
        raise ParameterOutOfRange(f"k must lie in [1, {p}], got {k}")
    if not 0 <= m <= p:
        raise ParameterOutOfRange(f"m must lie in [0, {p}], got {m}")
    if not parameter_hypothesis_met(enforce, p, n, k, m):
        raise CannotSatisfyHypothesis(
            f"hypothesis {enforce!r} fails for p={p}, n={n}, k={k}, m={m} "
            "and does not depend on the sampled elements"
        )
    rng = SplitMix64(seed)
    sets = [rng.sample(p, k) for _ in range(n)]
    forbidden = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                forbidden[(i, j)] = rng.sample(p, m)
    return SumsetInstance(field, sets, forbidden)


# ----------------------------------------------------------------------
# Experiment harness
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentTrial:
    index: int
    p: int
    n: int
    k: int
    m: int
    cardinality: int
    bounds: BoundReport
    certificate: CertificateReport | None
    certificate_skip_reason: str | None
    violations: tuple

    @property
    def sound(self) -> bool:
        return not self.violations


def _soundness_violations(cardinality, bounds, certificate):
    out = []
    for entry in bounds.entries():
        if entry.hypothesis_met and entry.value is not None and cardinality < entry.value:
            out.append(
                f"cardinality {cardinality} < {entry.name} bound {entry.value}"
            )
    if certificate is not None and certificate.certificate_valid \
            and cardinality < certificate.claimed_bound:
        out.append(
            f"cardinality {cardinality} < certified bound {certificate.claimed_bound}"
        )
    return tuple(out)


def run_experiment(seed: int, trials: int, p_set, n_set, m_set, k_max: int,
                   enforce: str = "none", budget: int = DEFAULT_BUDGET,
                   max_retries: int = 1000) -> list:
    """Seeded soundness sweep; one ExperimentTrial per trial.

    Per trial the stream draws p, n, m, k in that order (k uniform on
    [1, min(k_max, p)]); parameter tuples failing the enforced hypothesis
    are redrawn, each redraw consuming stream output, so the whole run is
    a pure function of its arguments.  Every accepted instance is
    enumerated, its bounds and (when degree-feasible) its certificate are
    computed, and any |C| < bound event is recorded as a violation.
    """
    if enforce not in HYPOTHESIS_CHOICES:
        raise ValueError(f"enforce must be one of {HYPOTHESIS_CHOICES}, got {enforce!r}")
    if trials < 0:
        raise ParameterOutOfRange(f"trials must be >= 0, got {trials}")
    p_choices = sorted(set(int(x) for x in p_set))
    n_choices = sorted(set(int(x) for x in n_set))
    m_choices = sorted(set(int(x) for x in m_set))
    if not (p_choices and n_choices and m_choices):
        raise ParameterOutOfRange("parameter ranges must be nonempty")
    rng = SplitMix64(seed)
    rows = []
    for t in range(trials):
        for _ in range(max_retries):
            p = rng.choice(p_choices)
            n = rng.choice(n_choices)
            m = rng.choice(m_choices)
            k = 1 + rng.below(min(k_max, p))
            if parameter_hypothesis_met(enforce, p, n, k, m):
                break
        else:
            raise CannotSatisfyHypothesis(
                f"no (p, n, k, m) draw satisfied {enforce!r} in {max_retries} tries"
            )
        field = PrimeField(p)
        sets = [rng.sample(p, k) for _ in range(n)]
        forbidden = {
            (i, j): rng.sample(p, m)
            for i in range(n) for j in range(n) if i != j
        }
        inst = SumsetInstance(field, sets, forbidden)
        cardinality = len(enumerate_restricted_sumset(inst, budget))
        bounds = compute_bounds(inst, cardinality)
        certificate = None
        skip_reason = None
        try:
            certificate = certificate_check(inst)
        except DegreeInfeasible as exc:
            skip_reason = str(exc)
        violations = _soundness_violations(cardinality, bounds, certificate)
        rows.append(ExperimentTrial(
            index=t, p=p, n=n, k=k, m=m,
            cardinality=cardinality, bounds=bounds,
            certificate=certificate, certificate_skip_reason=skip_reason,
            violations=violations,
        ))
    return rows


# ----------------------------------------------------------------------
# Instance documents
# ----------------------------------------------------------------------

def instance_to_dict(inst: SumsetInstance) -> dict:
    """Canonical document: sets sorted ascending, forbidden keyed "i,j"
    with 1-based indices, empty forbidden sets omitted."""
    forbidden = {}
    for (i, j) in sorted(inst.forbidden):
        S = inst.forbidden[i, j]
        if S:
            forbidden[f"{i + 1},{j + 1}"] = sorted(S)
    return {
        "p": inst.p,
        "sets": [list(A) for A in inst.sets],
        "forbidden": forbidden,
    }


def instance_from_dict(doc) -> SumsetInstance:
    """Parse and validate an instance document.

    Raises InstanceFormatError on shape problems and NotPrime/OutOfRange
    on a bad modulus.
    """
    if not isinstance(doc, dict):
        raise InstanceFormatError(f"expected an object, got {type(doc).__name__}")
    unknown = set(doc) - {"p", "sets", "forbidden"}
    if unknown:
        raise InstanceFormatError(f"unknown fields {sorted(unknown)}")
    if "p" not in doc or "sets" not in doc:
        raise InstanceFormatError("fields 'p' and 'sets' are required")
    p = doc["p"]
    if not isinstance(p, int) or isinstance(p, bool):
        raise InstanceFormatError(f"'p' must be an integer, got {p!r}")
    sets = doc["sets"]
    if not isinstance(sets, list) or not sets:
        raise InstanceFormatError("'sets' must be a nonempty list of integer lists")
    for idx, A in enumerate(sets):
        if not isinstance(A, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in A
        ):
            raise InstanceFormatError(f"set {idx + 1} must be a list of integers")
    n = len(sets)
    forbidden = {}
    raw_forbidden = doc.get("forbidden", {})
    if not isinstance(raw_forbidden, dict):
        raise InstanceFormatError("'forbidden' must be an object keyed \"i,j\"")
    for key, S in raw_forbidden.items():
        parts = key.split(",") if isinstance(key, str) else []
        if len(parts) != 2 or not all(part.strip().isdigit() for part in parts):
            raise InstanceFormatError(f"bad forbidden key {key!r}, expected \"i,j\"")
        i, j = (int(part) for part in parts)
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise InstanceFormatError(
                f"forbidden key {key!r} must name two distinct sets in 1..{n}"
            )
        if not isinstance(S, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in S
        ):
            raise InstanceFormatError(f"forbidden set {key!r} must be a list of integers")
        forbidden[(i - 1, j - 1)] = S
    return SumsetInstance(p, sets, forbidden)


def load_instance(path) -> SumsetInstance:
    """Read an instance document from a JSON file."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    return instance_from_dict(doc)
