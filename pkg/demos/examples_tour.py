"""The three low-dimensional examples: what holds and what does not.

Run with ``python3 demos/examples_tour.py``.
"""

from statman.audit import audit
from statman.dsl.model import load
from statman.frame_algebra import check_statistical, constant_curvature_check, curvature, ricci_of, scalar

for name in ("hyperbolic2", "flat3-einstein", "flat2-einstein"):
    L = load(name)
    M = L.M
    print(f"\n== {name}: frame {M.frame}, connections {sorted(M.connections)}")
    for conn in sorted(M.connections):
        stat = check_statistical(M, conn).passed
        c = constant_curvature_check(M, curvature(M, conn))
        print(f"  {conn:20} statistical={stat!s:5} constant curvature={c if c is not None else 'no'}"
              f"  scalar={scalar(ricci_of(M, conn), M)}")
    rep = audit(L)
    for ch in rep.all_checks():
        mark = "  " if ch.ok else "!!"
        print(f"  {mark} {ch.claim:24} {ch.value[:60]}")

# flat2-einstein: the table labelled nabla fails the Codazzi condition, while
# the table labelled as its conjugate carries every stated property.
