"""Constant-term identities: brute force against closed forms.

Every value is computed twice — once by expanding the product with the
sparse polynomial engine, once from an exact factorial formula — and the
two must agree on the nose.

Run:  python demos/02_constant_term_identities.py
"""

import itertools

from sumsetlab import (
    AomotoParams,
    aomoto_closed_form,
    aomoto_constant_term,
    aomoto_inverted_closed_form,
    dyson_closed_form,
    dyson_constant_term,
    leading_coefficient_check,
    zeilberger_coefficient,
)

print("=" * 64)
print("Dyson: CT of prod_(i!=j) (1 - x_i/x_j)^(a_j)  vs  the multinomial")
print("=" * 64)

for avec in [(1, 1), (2, 1), (1, 1, 1), (2, 2, 1), (1, 1, 1, 1)]:
    ct = dyson_constant_term(avec)
    closed = dyson_closed_form(avec)
    coeff = zeilberger_coefficient(avec)
    print(f"a = {avec}: expansion {ct}, multinomial {closed}, "
          f"signed coefficient form {coeff}")
    assert ct == closed == coeff

checked = 0
for nv in (2, 3):
    for avec in itertools.product(range(3), repeat=nv):
        assert dyson_constant_term(avec) == dyson_closed_form(avec)
        checked += 1
print(f"swept {checked} vectors, all agree")

print()
print("=" * 64)
print("Aomoto: the shifted product, in both chi orientations")
print("=" * 64)

params = AomotoParams(n=2, s=1, a=2, b=1, m=1)
print(f"params: {params}")
print(f"  CT with the shift on the a side : {aomoto_constant_term(params, 'a')}")
print(f"  closed form (a-side factorials) : {aomoto_closed_form(params)}")
print(f"  CT with the shift on the b side : {aomoto_constant_term(params, 'b')}")
print(f"  closed form (b-side factorials) : "
      f"{aomoto_inverted_closed_form(params.a, params.b, params.s, params.m, params.n)}")

# with s >= 1 and a != b the two orientations genuinely differ, which is
# why the pairing matters
p2 = AomotoParams(n=1, s=1, a=1, b=0, m=0)
print(f"asymmetric point {p2}: "
      f"a-side CT {aomoto_constant_term(p2, 'a')}, "
      f"b-side CT {aomoto_constant_term(p2, 'b')}")

print()
print("=" * 64)
print("The closed form is a polynomial in its first argument")
print("=" * 64)

rep = leading_coefficient_check(n=2, s=0, b=1, m=1)
print(f"sampled values at a = 0..{rep.degree + 2}: {rep.sample_values}")
print(f"interpolant coefficients (ascending): {[str(c) for c in rep.coefficients]}")
print(f"leading coefficient {rep.leading_coefficient}, "
      f"independent CT route gives {rep.expected_leading}, agree: {rep.agree}")
