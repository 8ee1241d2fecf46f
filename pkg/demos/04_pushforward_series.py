"""Tour of the exact-rational series engine.

The first Chern class of the determinant bundle of twisted d-bar operators on
a family of closed surfaces reduces to one coefficient extraction: take the
degree-two coefficient of exp(m x) * Todd(x).  Keeping every coefficient an
exact rational makes the identity (6 m^2 + 6 m + 1)/12 a theorem of the code,
not an approximation.

Run:  python demos/04_pushforward_series.py
"""

from fractions import Fraction

from detline.chern_series import RationalSeries, exp_series, grr_c1_coefficient, todd_series

# 1. The Todd series inverts (1 - e^{-x})/x in the truncated polynomial ring.
todd = todd_series(8)
print("Todd coefficients:", ", ".join(str(todd[k]) for k in range(6)))

# 2. Multiplying by the exponential of the twist and reading off degrees zero,
#    one, two reproduces the classical expansion 1 + (m + 1/2) x + ...
print("\n m   degree-1 coeff   degree-2 coeff   (6m^2+6m+1)/12")
for m in (-2, -1, 0, 1, 2, 3):
    product = exp_series(m, 4) * todd_series(4)
    closed = Fraction(6 * m * m + 6 * m + 1, 12)
    print(f"{m:2d}   {str(product[1]):>8}        {str(product[2]):>8}        {str(closed):>8}")

# 3. The coefficient is symmetric under m -> -1-m (duality of the twist).
print("\nsymmetry check:", all(
    grr_c1_coefficient(m) == grr_c1_coefficient(-1 - m) for m in range(-10, 11)
))

# 4. Everything happens in an honest commutative ring: exponentials add and
#    products associate exactly.
a, b = Fraction(1, 3), Fraction(5, 2)
print("exp(a) exp(b) == exp(a+b):", exp_series(a, 8) * exp_series(b, 8) == exp_series(a + b, 8))
unit = RationalSeries.one(8)
print("Todd * denominator == 1:  ", todd * todd.inverse() == unit)
