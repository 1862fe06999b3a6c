"""A short walk through para-complex arithmetic.

Run with ``python3 demos/01_paracomplex_tour.py``.
"""
import math

from zmc import paracomplex as pc
from zmc import paraholo as ph
from zmc.paracomplex import ParaComplex

# j squares to +1, so the ring has zero divisors on the null cone |u| = |v|
print("j*j =", pc.J * pc.J)
print("(1+j)(1-j) =", ParaComplex(1, 1) * ParaComplex(1, -1))

# N^2 = u^2 - v^2 is multiplicative, like |z|^2 for complex numbers
a, b = ParaComplex(2, 1), ParaComplex(-0.5, 3)
print("N2(ab) =", pc.norm2(a * b), " N2(a) N2(b) =", pc.norm2(a) * pc.norm2(b))

# null coordinates p = u + v, m = u - v turn multiplication into two real products
pa, pb = pc.to_null(a), pc.to_null(b)
print("null coords of ab:", pc.to_null(a * b), " products:", pa.plus * pb.plus, pa.minus * pb.minus)

# real functions lift component-wise in the null basis
sq = pc.tilde_extend(lambda x: x * x)
print("lifted square at 1+j:", sq(ParaComplex(1, 1)))

# polar form on each branch
z = ParaComplex(-math.e ** 2 * math.sinh(3), -math.e ** 2 * math.cosh(3))
print("polar form of", z, "->", pc.polar_decompose(z))

# expressions carry exact derivatives and satisfy the para-Cauchy-Riemann equations
f = ph.arctan(ph.z) * ph.exp(ph.z)
w = ParaComplex(0.3, -0.2)
print("f =", ph.dumps(f))
print("f'(w) =", ph.deriv(f)(w), " CR residual:", ph.cr_residual(f, w))

# dividing by a null number is an error, not a silent inf
try:
    1 / (ph.z - 1)(ParaComplex(2, 1))
except Exception as exc:  # noqa: BLE001 - the demo prints whatever is raised
    print(type(exc).__name__ + ":", exc)
