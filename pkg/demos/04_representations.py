"""Matrix representations, truncation interiors and Sobolev norms."""
from fractions import Fraction

import numpy as np

from liereach import RepSpec, algebra, env_to_matrix, gen_matrices, homomorphism_check, normal_order
from liereach import nelson_delta, sobolev_norm

rep = RepSpec(algebra("su11_potential"), "su11-discrete-plus", K=30, j=Fraction(1, 2))
Lx, Ly, Lz = gen_matrices(rep)
print("Lz diagonal:", np.real(np.diag(Lz))[:5], "...")

# ordered products agree with the PBW form on the columns not touched by truncation
word = [2, 0, 1]
cols = rep.interior(len(word))
direct = Lz @ Lx @ Ly
pbw = env_to_matrix(rep, normal_order(rep.algebra, word))
print("interior columns:", cols, " deviation:", np.abs(direct - pbw)[:, :cols].max())
print("homomorphism check:", homomorphism_check(rep, 2))

# high levels cost more in the Nelson scale
low, high = np.eye(rep.K)[0], np.eye(rep.K)[cols - 1]
for k in (0, 2, 4):
    print(f"k={k}: ground {sobolev_norm(rep, low, k):8.3f}  level {cols - 1} "
          f"{sobolev_norm(rep, high, k):10.3f}")
print("min Delta eigenvalue:", np.linalg.eigvalsh(nelson_delta(rep)).min())
