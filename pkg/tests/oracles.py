"""Independent reference routes used to check the pruned engine.

Everything here deliberately avoids targeted_coeff and
constant_term_laurent: products are expanded in full with plain
multiplication and the wanted coefficient is read off at the end.
"""

from functools import reduce

from sumsetlab import SparsePoly


def expand_factors(factors):
    """Full product of a factor list (polys or (poly, repetition) pairs)."""
    polys = []
    for item in factors:
        if isinstance(item, SparsePoly):
            polys.append(item)
        else:
            poly, rep = item
            polys.extend([poly] * rep)
    if not polys:
        raise ValueError("cannot infer the variable count of an empty product")
    return reduce(lambda x, y: x * y, polys)


def naive_coeff(factors, target):
    return expand_factors(factors).coeff(target)


def naive_laurent_constant_term(factors):
    product = expand_factors(factors)
    return product.coeff((0,) * product.nvars)
