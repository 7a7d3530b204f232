"""Products and O-spaces on the Heisenberg algebra.

Run: python3 demos/zhu_products.py
"""
from voabimod import heisenberg
from voabimod.bimodule import circle, membership, quotient_dim, star_general
from voabimod.expr import format_vector, parse_vector

V = heisenberg(16)
a = parse_vector("a(-1)vac", V)
aa = parse_vector("a(-1)a(-1)vac", V)

for n, m, p in [(0, 0, 0), (1, 1, 1), (1, 0, 0), (0, 1, 1)]:
    print(f"a *^{n}_({m},{p}) a =", format_vector(star_general(V, a, a, n, m, p), V))

# circle products always land in O'_{n,m}
c = circle(V, a, aa, 1, 0)
print("a o a(-1)^2 at (n,m)=(0,1):", format_vector(c, V), "member:", membership(V, c, 0, 1, 8)[0])

# the image of F_W in A_n(V) for the polynomial algebra C[x]: W+1 monomials survive
for W in (2, 4, 6):
    print(f"W={W}: dim image of F_W in A_0 =", quotient_dim(V, 0, 0, W).dim)
