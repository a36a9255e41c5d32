"""
Elementary symmetric polynomials and the Vandermonde determinant
================================================================

The Jacobian of (e_1, ..., e_n) is, up to sign, the product of the
differences x_i - x_j, so the e_j are algebraically independent.
"""

from compident.poly import (PolyRing, elementary_symmetric_all, jacobian_of,
                            minor_expansion_det, vandermonde_check)

ring = PolyRing(["x1", "x2", "x3"])
e = elementary_symmetric_all(ring.gens())
for j, p in enumerate(e):
    print(f"e_{j} = {p.to_text()}")

J = jacobian_of(e[1:], range(3))
det = minor_expansion_det(J, ring.one(), ring.zero())
print("det J =", det.to_text())

x1, x2, x3 = ring.gens()
print("equals +/-(x1-x2)(x1-x3)(x2-x3):", det in {(x1 - x2) * (x1 - x3) * (x2 - x3),
                                                -(x1 - x2) * (x1 - x3) * (x2 - x3)})
print("checks for n = 1..6:", [vandermonde_check(n) for n in range(1, 7)])
