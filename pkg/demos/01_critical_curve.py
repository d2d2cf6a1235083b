"""Tour of the critical-curve algebra.

The blow-up region in the p-q plane is governed by two lifespan
exponents theta1 and theta2.  This script classifies a few exponent
pairs, walks the cusp point where the two critical sub-curves meet, and
prints the predicted epsilon scaling of the lifespan in each regime.

Run:  python3 demos/01_critical_curve.py
"""

import numpy as np

from coupledwave import (
    classify,
    cusp_exponents,
    cusp_residuals,
    lifespan_prediction,
    theta1,
    theta2,
)

n = 3
print(f"--- exponent classification at n = {n} ---")
for p, q in [(2.0, 2.0), (2.0, 2.5), (4.0, 4.0), (1.5, 1.5)]:
    data = classify(n, (p, q))
    pred = lifespan_prediction(n, (p, q))
    print(
        f"p={p:<4} q={q:<4} theta1={data.theta1:+.4f} theta2={data.theta2:+.4f} "
        f"region={data.region.value:<16} prediction={pred.kind.value} "
        f"exponent={pred.exponent:+.3f}"
    )

print("\n--- cusp point of the critical curve ---")
for n in (2, 3, 4, 6):
    c = cusp_exponents(n)
    cubic, t1, t2 = cusp_residuals(n)
    print(
        f"n={n}: q_mix={c.q_mix:.7f} p_mix={c.p_mix:.7f} "
        f"p_glassey={c.p_glassey:.7f} p_strauss={c.p_strauss:.7f}"
    )
    print(f"      residuals: cubic={cubic:.1e} theta1={t1:.1e} theta2={t2:.1e}")
    assert c.q_mix < c.p_glassey < c.p_strauss < c.p_mix

print("\n--- theta values along n for fixed (p, q) = (2, 2) ---")
for n in range(1, 7):
    print(f"n={n}: theta1={theta1(n, (2, 2)):+.4f} theta2={theta2(n, (2, 2)):+.4f}")

print("\nthe cusp ordering q_mix < p_glassey < p_strauss < p_mix held for all n above")
