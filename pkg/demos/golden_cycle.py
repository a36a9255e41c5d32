"""
A four-compartment cycle, step by step
======================================

Input in compartment 1, output in compartment 3, no leaks.  We build the
model, print its input-output equation and coefficient map, then check the
Jacobian rank.
"""

from compident import analyze, coefficient_map, cycle, io_equations
from compident.ident import evaluate_matrix, exact_rank

m = cycle(4, inputs=(1,), outputs=(3,))
print("model:", m)

# det(sI - A) y3 = (signed minor) u1
for eq in io_equations(m):
    print(eq.to_text())

# the informative coefficients; the zero constant term of the lhs is dropped
c = coefficient_map(m)
for label, poly in c.entries:
    print(f"{str(label):<16} {poly.to_text()}")
print("dropped:", [str(lab) for lab, _ in c.dropped])

# four parameters, five coefficients: full column rank means identifiable
a = analyze(m)
print("rank at k = (2, 3, 5, 7):",
      exact_rank(evaluate_matrix(a.J, {"k_{2,1}": 2, "k_{3,2}": 3, "k_{4,3}": 5, "k_{1,4}": 7})))
print("verdict:", a.verdict.to_dict())
