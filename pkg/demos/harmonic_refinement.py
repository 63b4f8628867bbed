"""
Which classes force div T = 0
=============================

For nine classes every structure is harmonic.  W1+W3+W4 never is, but
dropping the trace or the J part gives harmonic structures again.
"""

import numpy as np

from g2torsion import classifier, engine
from g2torsion.classifier import HARMONIC_CLASSES, TorsionClass, random_component
from g2torsion.report import format_form

rng = np.random.default_rng(7)

for c in sorted(HARMONIC_CLASSES, key=lambda c: c.label):
    ok = all(classifier.harmonicity(classifier.sample_bracket(c, rng)) for _ in range(10))
    print(f"{c.label:<12} 10/10 harmonic: {ok}")

full = TorsionClass([1, 3, 4])
A = classifier.sample_bracket(full, rng)
print(full.label, "witness, div T =", format_form(engine.divergence_direct(A)))

for drop in ("tr_part", "j_part"):
    B = random_component("c_plus", rng)
    for name in ("tr_part", "s_minus", "j_part"):
        if name != drop:
            B = B + random_component(name, rng)
    print(f"without {drop}: class {classifier.classify_from_bracket(B)}, harmonic {classifier.harmonicity(B)}")
