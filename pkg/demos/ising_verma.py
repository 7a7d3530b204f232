"""The induced module M(U) for the Ising tops, and the map onto the irreducible.

Run: python3 demos/ising_verma.py
"""
import random

from voabimod import ising
from voabimod.reptheory import (am_module_from_spec, associativity_check, build_verma, intertwining_check,
                                universal_map, vacuum_identity_check)
from voabimod.vectors import GradedVector
from voabimod.voa import ISING_WEIGHTS, ising_module

V = ising(24)
rng = random.Random(0)
for h in ISING_WEIGHTS:
    # U is one-dimensional with omega acting by h
    U = am_module_from_spec(V, {"m": 0, "dim": 1, "generators": {"L(-2)vac": [[str(h)]]}}, 8)
    M = build_verma(U, 4, 14)
    target = ising_module(h, 20)
    phi = universal_map(M, target, [GradedVector.basis(())])
    print(f"h={h}: levels {M.dims()}, stable {M.stability()}, irreducible {target.dims(4)}")
    for rep in (vacuum_identity_check(M), associativity_check(M, 20, rng), intertwining_check(phi, 20, rng)):
        print(f"   {rep.name}: {rep.total} checks, ok={rep.ok}")

# U at level one: the level-one space of L(1/2,1/2) (omega acts by 3/2)
U = am_module_from_spec(V, {"m": 1, "dim": 1, "generators": {"L(-2)vac": [["3/2"]]}}, 12)
M = build_verma(U, 3, 14)
print("level-one top, h=1/2: levels", M.dims())
