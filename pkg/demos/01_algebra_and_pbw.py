"""Structure constants, the Jacobi gate and PBW normal ordering."""
from liereach import algebra, env_bracket, env_gen, gq, normal_order, specialize_central, verify_jacobi

su11 = algebra("su11_scattering")
print(su11.name, su11.labels)
print("jacobi:", verify_jacobi(su11))

# words in the generators come back as ordered monomials Lx^a Ly^b Lz^c
print("Ly Lx   ->", normal_order(su11, [1, 0]).render())
print("Lz Ly Lx ->", normal_order(su11, [2, 1, 0]).render())

# brackets in the enveloping algebra lower the order by at least one
X, Y, Z = (env_gen(su11, g).scale(gq(0, 1)) for g in su11.labels)
lhs = env_bracket(su11, X * X, X * Y)
print("[X^2, XY] - 2 X^2 Z =", (lhs - (X * X * Z).scale(2)).render())

# fixing the central element of h(1) to 1 gives the Weyl algebra
weyl = specialize_central(algebra("h1"), {"I": 1})
print(weyl.name, "p x ->", normal_order(weyl, [1, 0]).render())
