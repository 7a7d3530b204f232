from fractions import Fraction

import pytest
import sympy as sp

from voabimod.modules import FockModule, VirasoroModule, WeightRangeError, partitions
from voabimod.vectors import GradedVector
from voabimod.voa import (ISING_WEIGHTS, heisenberg, ising, ising_character_table, ising_module,
                          make_voa, virasoro)

q = sp.symbols("q")


def rocha_caridi(r, s, levels, p=4, pp=3):
    """Character of the minimal-model irreducible (p, p') = (4, 3) with Kac labels (r, s),
    expanded to q^levels with the leading power removed."""
    num = 0
    k = -levels - 2
    while k <= levels + 2:
        A = ((2 * p * pp * k + p * r - pp * s) ** 2 - (p * r - pp * s) ** 2) // (4 * p * pp)
        B = ((2 * p * pp * k + p * r + pp * s) ** 2 - (p * r - pp * s) ** 2) // (4 * p * pp)
        if A <= levels:
            num += q ** A
        if B <= levels:
            num -= q ** B
        k += 1
    eta = 1
    for n in range(1, levels + 1):
        eta *= sum(q ** (n * j) for j in range(levels // n + 1))
    poly = sp.Poly(sp.expand(num * eta), q)
    return [int(poly.coeff_monomial(q ** i)) for i in range(levels + 1)]


KAC = {Fraction(0): (1, 1), Fraction(1, 2): (1, 3), Fraction(1, 16): (1, 2)}


def test_kac_labels():
    for h, (r, s) in KAC.items():
        assert Fraction((4 * r - 3 * s) ** 2 - 1, 48) == h


@pytest.mark.parametrize("h", ISING_WEIGHTS)
def test_ising_levels_match_characters(h):
    r, s = KAC[h]
    assert ising_module(h, 10).dims(10) == rocha_caridi(r, s, 10)


def test_character_table():
    t = ising_character_table(6)
    assert t.dims["0"] == [1, 0, 1, 1, 2, 2, 3]
    assert t.dims["1/2"] == [1, 1, 1, 1, 2, 2, 3]
    assert t.dims["1/16"] == [1, 1, 1, 2, 2, 3, 4]
    assert [t.hom_dimension(n, m) for n, m in ((0, 0), (1, 0), (0, 1), (1, 1))] == [3, 2, 2, 5]


def test_fock_heisenberg_relations():
    M = FockModule(Fraction(1, 3), 10)
    for a in range(-3, 4):
        for b in range(-3, 4):
            for lab in partitions(3):
                w = GradedVector.basis(lab)
                lhs = M.gen_mode_vec(a, M.gen_mode_vec(b, w)) - M.gen_mode_vec(b, M.gen_mode_vec(a, w))
                assert lhs == (w * a if a + b == 0 else GradedVector())


def test_sugawara_matches_conformal_modes(heis):
    lam = Fraction(1, 2)
    M = FockModule(lam, 12)
    om = heis.conformal()
    for lab in partitions(3) + partitions(2):
        w = GradedVector.basis(lab)
        for n in range(-2, 4):
            assert heis.module_mode(M, om, n + 1, w) == M.sugawara(n, w)
        # L(0) eigenvalue lambda^2/2 + level
        assert M.sugawara(0, w) == w * (lam * lam / 2 + sum(lab))


def test_virasoro_commutator_universal():
    M = VirasoroModule(Fraction(7, 10), Fraction(3, 5), max_level=12)
    for a in range(-3, 4):
        for b in range(-3, 4):
            for lab in M.universal_basis(3):
                w = GradedVector.basis(lab)
                lhs = M.L_vec(a, M.L_vec(b, w)) - M.L_vec(b, M.L_vec(a, w))
                rhs = M.L_vec(a + b, w) * (a - b)
                if a + b == 0:
                    rhs = rhs + w * (M.c * (a ** 3 - a) / 12)
                assert lhs == rhs


def test_vacuum_axioms(isg, heis):
    for V in (heis, isg):
        one = V.vacuum()
        for lab in V.filtered_basis(5):
            v = GradedVector.basis(lab)
            assert V.mode(one, -1, v) == v
            assert V.mode(one, 0, v) == GradedVector()
            # u_{-1} 1 = u
            assert V.mode(v, -1, one) == v


def test_derivative_property(heis):
    for lab in heis.filtered_basis(3):
        u = GradedVector.basis(lab)
        du = heis.L(-1, u)
        for v in heis.filtered_basis(3):
            v = GradedVector.basis(v)
            for k in range(-2, 4):
                assert heis.mode(du, k, v) == heis.mode(u, k - 1, v) * (-k)


def test_grading(isg):
    for lab in isg.filtered_basis(8):
        v = GradedVector.basis(lab)
        assert isg.L(0, v) == v * sum(lab)


def test_skew_symmetry(heis, isg):
    for V in (heis, isg):
        B = [GradedVector.basis(l) for l in V.filtered_basis(4)]
        for u in B:
            for v in B:
                assert V.skew_symmetry_check(u, v, range(-2, 3))


def test_commutator_formula(heis, isg):
    for V, mod in ((heis, FockModule(1, 12)), (isg, ising_module(Fraction(1, 16), 12))):
        B = [GradedVector.basis(l) for l in V.filtered_basis(3)]
        for u in B:
            for v in B:
                for p in range(-2, 3):
                    for qq in range(-2, 3):
                        assert V.commutator_check(u, v, GradedVector.basis(()), p, qq, module=mod)
        # and once on V itself
        assert V.commutator_check(B[-1], B[-2], B[-1], 1, -1)


def test_phi_involution_and_values(heis, isg):
    a = heis.generator()
    assert heis.phi(a) == -a
    assert heis.phi(heis.conformal()) == heis.conformal()
    for V in (heis, isg):
        for lab in V.filtered_basis(5):
            v = GradedVector.basis(lab)
            assert V.phi(V.phi(v)) == v


def test_ising_vacuum_dims(isg):
    assert [isg.dim(w) for w in range(13)] == [1, 0, 1, 1, 2, 2, 3, 3, 5, 5, 7, 8, 11]
    assert [len(partitions(w, 2)) for w in (6, 8)] == [4, 7]


def test_make_voa_and_errors():
    assert make_voa("virasoro:1/2", 8).central_charge == Fraction(1, 2)
    assert make_voa("ISING", 8).kind == "ising"
    with pytest.raises(ValueError):
        make_voa("lattice", 8)
    with pytest.raises(ValueError):
        ising(4)
    with pytest.raises(ValueError):
        ising_module(Fraction(1, 3))
    V = heisenberg(3)
    with pytest.raises(WeightRangeError):
        V.basis(4)
    with pytest.raises(WeightRangeError):
        V.mode(V.generator(), -3, V.generator())


def test_universal_virasoro_has_no_singular_vector_at_c_half():
    V = virasoro(Fraction(1, 2), 8)
    assert V.dim(6) == 4
