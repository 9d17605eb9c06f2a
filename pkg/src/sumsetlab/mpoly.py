"""Sparse multivariate Laurent polynomials over arbitrary-precision integers.

A polynomial is a finite map from exponent vectors (tuples of signed
integers, one entry per variable) to nonzero integer coefficients.
Everything here is exact: coefficients are Python ints, so there is no
overflow and no modular shortcut — reduction mod p, when wanted, happens
in the caller.

The two workhorses are :func:`targeted_coeff`, which extracts a single
coefficient from a product of polynomial factors while pruning every
partial term that can no longer reach the target, and
:func:`constant_term_laurent`, which reduces a Laurent constant-term
computation to a targeted extraction by clearing denominators factor by
factor.  Negative exponents are legal everywhere except inside
``targeted_coeff`` itself, which is what makes the pruning rule sound.
"""


class LengthMismatch(ValueError):
    """An exponent vector's length differs from the ambient variable count."""


class NegativeExponentInput(ValueError):
    """A Laurent term reached a polynomial-only code path."""


class SparsePoly:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to ints.

    Construction canonicalizes: duplicate exponent vectors are summed and
    zero coefficients dropped, so two equal polynomials always compare
    equal.  Do not mutate ``terms`` after construction.

    >>> P = SparsePoly(2, [((1, 0), 1), ((0, 1), 1)])   # x0 + x1
    >>> (P * P).coeff((1, 1))
    2
    >>> (P ** 0).terms
    {(0, 0): 1}
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=()):
        if nvars < 1:
            raise ValueError(f"need at least one variable, got nvars={nvars}")
        table = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for exps, c in items:
            e = tuple(exps)
            if len(e) != nvars:
                raise LengthMismatch(
                    f"exponent vector {e} has length {len(e)}, expected {nvars}"
                )
            if c == 0:
                continue
            acc = table.get(e, 0) + c
            if acc:
                table[e] = acc
            elif e in table:
                del table[e]
        self.nvars = nvars
        self.terms = table

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def one(cls, nvars):
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, nvars, exps, coeff=1):
        return cls(nvars, {tuple(exps): coeff})

    @classmethod
    def variable(cls, nvars, i):
        """The single variable x_i."""
        return cls.monomial(nvars, tuple(1 if j == i else 0 for j in range(nvars)))

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exps) -> int:
        """Stored coefficient of the given monomial, or 0."""
        e = tuple(exps)
        if len(e) != self.nvars:
            raise LengthMismatch(
                f"exponent vector {e} has length {len(e)}, expected {self.nvars}"
            )
        return self.terms.get(e, 0)

    def total_degree(self) -> int:
        """Maximum term degree (0 for the zero polynomial)."""
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self, reverse=False):
        """Terms in graded lexicographic order, for deterministic output."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=reverse)

    def shift(self, offsets) -> "SparsePoly":
        """Multiply by the monomial with the given exponent offsets."""
        off = tuple(offsets)
        if len(off) != self.nvars:
            raise LengthMismatch(
                f"offset vector {off} has length {len(off)}, expected {self.nvars}"
            )
        return SparsePoly(
            self.nvars,
            {tuple(a + b for a, b in zip(e, off)): c for e, c in self.terms.items()},
        )

    # -- ring operations ----------------------------------------------

    def _check_same_shape(self, other):
        if other.nvars != self.nvars:
            raise LengthMismatch(
                f"polynomials on {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = SparsePoly(self.nvars, {(0,) * self.nvars: other})
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check_same_shape(other)
        table = dict(self.terms)
        for e, c in other.terms.items():
            acc = table.get(e, 0) + c
            if acc:
                table[e] = acc
            elif e in table:
                del table[e]
        out = SparsePoly(self.nvars)
        out.terms.update(table)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = SparsePoly(self.nvars)
        out.terms.update({e: -c for e, c in self.terms.items()})
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            out = SparsePoly(self.nvars)
            if other:
                out.terms.update({e: c * other for e, c in self.terms.items()})
            return out
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check_same_shape(other)
        table = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc = table.get(e, 0) + c1 * c2
                if acc:
                    table[e] = acc
                elif e in table:
                    del table[e]
        out = SparsePoly(self.nvars)
        out.terms.update(table)
        return out

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError(f"exponent must be >= 0, got {e}")
        result = SparsePoly.one(self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms(reverse=True):
            mono = "*".join(
                f"x{i}^{e}" if e != 1 else f"x{i}" for i, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def sum_of_variables(nvars: int) -> SparsePoly:
    """x_0 + x_1 + ... + x_{nvars-1}."""
    return SparsePoly(
        nvars,
        {tuple(1 if j == i else 0 for j in range(nvars)): 1 for i in range(nvars)},
    )


def _factor_list(factors, nvars=None, require_nonnegative=False):
    """Normalize a factor list to [(poly, repetition)] and validate it.

    Accepts bare polynomials and (polynomial, repetition) pairs.  Factors
    with repetition 0 are dropped (they contribute the empty product 1).
    """
    out = []
    for item in factors:
        if isinstance(item, SparsePoly):
            poly, rep = item, 1
        else:
            poly, rep = item
            rep = int(rep)
        if not isinstance(poly, SparsePoly):
            raise TypeError(f"factor {poly!r} is not a SparsePoly")
        if rep < 0:
            raise ValueError(f"repetition exponent must be >= 0, got {rep}")
        if nvars is None:
            nvars = poly.nvars
        elif poly.nvars != nvars:
            raise LengthMismatch(
                f"factor on {poly.nvars} variables in a {nvars}-variable product"
            )
        if require_nonnegative and any(v < 0 for e in poly.terms for v in e):
            raise NegativeExponentInput(
                "factors must have nonnegative exponents; clear denominators first"
            )
        if rep:
            out.append((poly, rep))
    return nvars, out


def targeted_coeff(factors, target) -> int:
    """Coefficient of the ``target`` monomial in the product of ``factors``.

    ``factors`` is a sequence of SparsePoly (optionally paired with a
    repetition exponent); all must have nonnegative exponents.  Factors
    are multiplied in the given order, and any partial-product term whose
    exponent in some variable already exceeds the target's is dropped.
    Because exponents only grow, a dropped term can never contribute to
    the target, so the result equals the coefficient in the fully
    expanded product.

    >>> x0, x1 = SparsePoly.variable(2, 0), SparsePoly.variable(2, 1)
    >>> targeted_coeff([(x0 + x1, 4)], (2, 2))
    6
    """
    target = tuple(int(t) for t in target)
    nvars = len(target)
    _, flist = _factor_list(factors, nvars, require_nonnegative=True)
    if any(t < 0 for t in target):
        return 0
    reach = sum(rep * poly.total_degree() for poly, rep in flist)
    if reach < sum(target):
        return 0  # degree-infeasible: the product cannot climb to the target
    acc = {(0,) * nvars: 1}
    for poly, rep in flist:
        items = list(poly.terms.items())
        for _ in range(rep):
            nxt = {}
            for e1, c1 in acc.items():
                for e2, c2 in items:
                    e = tuple(a + b for a, b in zip(e1, e2))
                    oversized = False
                    for v, t in zip(e, target):
                        if v > t:
                            oversized = True
                            break
                    if oversized:
                        continue
                    c = nxt.get(e, 0) + c1 * c2
                    if c:
                        nxt[e] = c
                    elif e in nxt:
                        del nxt[e]
            acc = nxt
            if not acc:
                return 0
    return acc.get(target, 0)


def constant_term_laurent(factors) -> int:
    """Constant term of a product of Laurent polynomial factors.

    Each factor is made polynomial by multiplying with the smallest
    monomial that clears its denominators; the recorded offsets add up to
    the monomial whose coefficient in the cleared product equals the
    constant term of the original one.  The extraction itself is a
    :func:`targeted_coeff` call, so the pruning applies.

    >>> f = SparsePoly(2, {(0, 0): 1, (1, -1): -1})   # 1 - x0/x1
    >>> g = SparsePoly(2, {(0, 0): 1, (-1, 1): -1})   # 1 - x1/x0
    >>> constant_term_laurent([f, g])
    2
    """
    nvars, flist = _factor_list(factors)
    if nvars is None:
        return 1  # empty product
    cleared = []
    target = [0] * nvars
    for poly, rep in flist:
        if not poly.terms:
            return 0  # a zero factor kills the whole product
        offs = [0] * nvars
        shifted = False
        for i in range(nvars):
            lo = min(e[i] for e in poly.terms)
            if lo < 0:
                offs[i] = -lo
                shifted = True
        if shifted:
            poly = poly.shift(offs)
            for i in range(nvars):
                target[i] += rep * offs[i]
        cleared.append((poly, rep))
    return targeted_coeff(cleared, tuple(target))
