"""Solve the critical (omega, alpha) curve for both weight splits.

The top Lyapunov exponent of the random matrix product is negative inside
the curve (the particle collapses onto the best position with probability
one) and positive outside (arbitrarily large excursions).  The curve for
the equal split lies at larger alpha than the social-only split at medium
inertia because its weight distribution has smaller variance.

Desk-scale budgets: a couple of minutes.  Writes curve_equal.csv and
curve_social.csv next to this script.
"""

from pathlib import Path

import numpy as np

from swarmcrit import critical_curve, RATIO_EQUAL, RATIO_SOCIAL_ONLY

HERE = Path(__file__).resolve().parent

omegas = np.round(np.arange(-1.0, 1.0 + 1e-9, 0.1), 10)

for ratio, name, seed in ((RATIO_EQUAL, "curve_equal.csv", 1),
                          (RATIO_SOCIAL_ONLY, "curve_social.csv", 2)):
    curve = critical_curve(omegas, ratio=ratio, tolerance=0.05, seed=seed,
                           steps=8000, trials=12)
    out = HERE / name
    curve.to_csv(out, metadata={"seed": seed, "ratio": ratio})
    print(f"\n{ratio} split -> {out.name}")
    print(" omega   alpha_c  status")
    for p in curve.points:
        alpha = f"{p.alpha:7.3f}" if p.status == "OK" else "      -"
        print(f"{p.omega:+6.1f}  {alpha}  {p.status}")
