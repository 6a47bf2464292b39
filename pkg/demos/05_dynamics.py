"""Product formulas, attainability and a reachability search on small spins."""
import numpy as np

from liereach import attainability_experiment, reach_probe, trotter_commutator_error, trotter_sum_error
from liereach.dynamics import fitted_loglog_slope, system_matrices
from liereach.systems import build_preset

sx = np.array([[0, 1], [1, 0]], dtype=complex)
sy = np.array([[0, -1j], [1j, 0]])
sz = np.diag([1.0, -1.0]).astype(complex)

ns = [64, 128, 256, 512, 1024]
errs = [trotter_sum_error(-1j * sx, -1j * sz, 1.0, n) for n in ns]
print("sum formula slope:", round(fitted_loglog_slope(ns, errs), 4))
print("commutator formula:", [f"{trotter_commutator_error(-.5j * sx, -.5j * sy, 1.0, n):.4f}"
                              for n in (4, 16, 64, 256)])

system, rep = build_preset("spin1")
H0, (X,) = system_matrices(system, rep)
res = attainability_experiment(H0, X, 1.0, [1e-1, 1e-2, 1e-3], np.eye(3)[0])
for eps, dev, bound in res.grid:
    print(f"eps {eps:g}: deviation {dev:.3e} <= {bound:.3e}")

system, rep = build_preset("qubit")
target = np.array([1, 1j]) / np.sqrt(2)
r = reach_probe(system, rep, target, {"segments": 3, "restarts": 20}, seed=1)
print("reach fidelity:", round(r.fidelity, 8))
print(r.schedule.to_csv())
