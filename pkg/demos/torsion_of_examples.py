"""
Torsion of three small brackets
===============================

Each almost Abelian algebra here is R^6 (the ideal) plus e_7 acting by a
6x6 matrix.  Everything is computed over the rationals.
"""

from g2torsion import builtin, engine, su3
from g2torsion.exterior import identity
from g2torsion.report import build_report, format_form

for name in ("A", "B", "D"):
    A = builtin.bracket(name)
    doc = build_report(A, name, oracle=False)
    print(f"--- {name}: nonzero parts {sorted(su3.split(A).nonzero())}")
    print("  tau0 =", doc.tau0)
    print("  tau1 =", format_form(doc.tau1))
    print("  tau2 =", format_form(doc.tau2))
    print("  class", doc.torsion_class, "| harmonic:", doc.harmonic)
    print("  div T =", format_form(doc.div_T))

# A is flat: its Ricci tensor vanishes identically
print("Ric(A) == 0:", not engine.ricci(builtin.bracket("A")).any())

# multiples of the identity give real hyperbolic space
print("Ric(I) diagonal:", [str(engine.ricci(identity(6))[i, i]) for i in range(7)])
