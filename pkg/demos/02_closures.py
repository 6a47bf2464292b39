"""Lie closures under an order cap: finite versus growing."""
from liereach import lie_closure, pbw_coverage
from liereach.systems import build_preset

for name in ("pt", "st", "st1"):
    system, _ = build_preset(name)
    hams = [H for H in system.hamiltonians if H]
    dims = [lie_closure(system.algebra, hams, cap).dim for cap in (2, 3, 4)]
    res = lie_closure(system.algebra, hams, 4)
    cov = pbw_coverage(res, 3)
    print(f"{name:5} dims by cap {dims}  exact {res.finite_exact}  "
          f"coverage(3) {cov.covered}/{cov.total}")

# the lloyd control set generates every x^a p^b once the Kerr term is present
w = build_preset("lloyd")[0].specialized()
for label, gens in (("with Kerr", w.controls), ("without", w.controls[:3])):
    cov = pbw_coverage(lie_closure(w.algebra, list(gens), 4), 3)
    print(f"lloyd {label:10} {cov.covered}/{cov.total}")
