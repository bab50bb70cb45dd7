"""Compare candidate preimages of t under phi over a grid of (sign, c).

The working preimage is d x + c/2 - 1 - x +- 1/x; the other candidate,
d x + 1/2 + (1/x -+ x), is printed alongside with what phi sends it to.
"""

from fractions import Fraction

from noncomm.shift import ShiftElement, phi, phi_inverse
from noncomm.weyl import WeylElement

x, d, xi = WeylElement.x(1, 0), WeylElement.d(1, 0), WeylElement.x(1, 0, -1)
t = ShiftElement.t(1, 0)

for sign in ("plus", "minus"):
    for c in (Fraction(0), Fraction(1), Fraction(1, 2), Fraction(-3)):
        good = phi(sign, c, phi_inverse(sign, c, "t", 0))
        pm = 1 if sign == "plus" else -1
        other = phi(sign, c, d * x + Fraction(1, 2) + xi - x.scale(pm))
        print(f"{sign:5s} c={str(c):4s}  phi(preimage) == t: {good == t}   alternative -> {other}")
