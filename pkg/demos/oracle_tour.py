"""Finite differences versus exact frame algebra.

Each fixture has a closed-form coordinate chart.  The oracle differentiates
the chart numerically and compares with the engine; a corrupted Christoffel
symbol shows what a failure looks like.

Run with ``python3 demos/oracle_tour.py``.
"""

import time

from statman.fixtures import FIXTURES
from statman.numoracle import convergence_ratio, cross_validate, fd_bracket

print("[E1, E2] at (0, 1) on the hyperbolic plane:", fd_bracket("hyperbolic2", 0, 1, (0.0, 1.0)))

t = time.perf_counter()
for name in FIXTURES:
    rep = cross_validate(name)
    worst = max(float(c.value) for c in rep.checks)
    print(f"{name:26} {'PASS' if rep.passed else 'FAIL'}  worst scaled deviation {worst:.1e}")
print(f"elapsed {time.perf_counter() - t:.2f} s")

print("error ratio for halving the step:", round(convergence_ratio("hyperbolic2"), 3))

rep = cross_validate("kenmotsu5d", corrupt=(0, 0, 4, 0.01))
for c in rep.checks:
    if not c.ok:
        print(f"corrupted table -> {c.claim}: {c.detail}")
