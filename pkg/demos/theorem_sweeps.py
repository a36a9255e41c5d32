"""
Sweeping the identifiability results
====================================

Each suite enumerates models with a predicted verdict and checks it.  A
small ``max_n`` keeps this quick; the CLI runs the full ranges.
"""

from compident import cycle, decide
from compident.suites import format_suite, run_suite

for name in ["big-cycle", "leak-converse", "too-many-leaks", "fin-wing", "add-edges"]:
    results = run_suite(name, max_n=4)
    # only the header and summary lines; the per-instance lines are long
    report = format_suite(name, results, 4, 5, 0).splitlines()
    print(report[0])
    print("   ", report[-1])

# an unidentifiable verdict comes with a reason
v = decide(cycle(5, leaks=(2, 4)))
print()
print("cycle(5) with leaks at 2 and 4:", "identifiable" if v.identifiable else "unidentifiable")
for cert in v.structural_certificates:
    print(" ", cert["kind"], "-", cert["detail"])
