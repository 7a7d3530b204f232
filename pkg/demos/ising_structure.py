"""Dimensions of A_{n,m}(V) for the Ising model against the Hom-space count.

Run: python3 demos/ising_structure.py   (about ten seconds)
"""
from voabimod import ising
from voabimod.reptheory import hom_image_dim, theorem413_check, zhu_algebra_dim
from voabimod.voa import ISING_WEIGHTS, ising_character_table, ising_module

V = ising(24)
table = ising_character_table(6)
for h, dims in table.dims.items():
    print(f"L(1/2,{h}) levels 0..6:", dims)

mods = [ising_module(h, 14) for h in ISING_WEIGHTS]
for n, m in [(0, 0), (1, 0), (0, 1), (1, 1)]:
    row = [theorem413_check(V, table, n, m, W)["dims"]["quotient"] for W in range(5, 10)]
    print(f"(n,m)=({n},{m}) dims at W=5..9: {row}  expected {table.hom_dimension(n, m)}"
          f"  module lower bound at W=8: {hom_image_dim(V, mods, n, m, 8)}")

print("A_1(V) from the classical presentation at W=8:", zhu_algebra_dim(V, 1, 8)[1])
