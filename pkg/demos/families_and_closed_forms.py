"""
Model families and their closed-form coefficient maps
=====================================================

Cycles, Fin and Wing graphs have coefficient maps built from elementary
symmetric polynomials.  Here each closed form is compared with the general
determinant computation.
"""

from compident import Family, closed_form, verify_closed_form
from compident.families import fin, wing

# Fin adds every edge i -> 1, Wing every edge 1 -> j
print("fin(5) edges: ", fin(5).edges)
print("wing(5) edges:", wing(5).edges)

for f in [Family("cycle", 5, outputs=(3,)),
          Family("cycle", 5, outputs=(2,), leaks=(4,)),
          Family("fin", 4),
          Family("wing", 4)]:
    print()
    print(f.describe(), "-> closed form matches:", verify_closed_form(f))
    for label, p in closed_form(f).entries:
        print(f"  {str(label):<14} {p.to_text()}")
