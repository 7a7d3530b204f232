import random
from fractions import Fraction

import pytest

from voabimod.bimodule import star_general
from voabimod.modules import FockModule, WeightRangeError
from voabimod.reptheory import (AmModule, ModuleError, am_module_from_spec, annihilation_check,
                                associativity_check, build_verma, check_lemma41, commutator_check_verma,
                                hom_image_dim, intertwining_check, composition_grid, o_action, omega_subspace,
                                theorem413_check, universal_map, vacuum_identity_check, zhu_algebra_dim)
from voabimod.vectors import GradedVector
from voabimod.voa import ISING_WEIGHTS, ising_character_table, ising_module

G = GradedVector.basis
OMEGA = "L(-2)vac"


@pytest.fixture(scope="module")
def fock3():
    return FockModule(3, 10)


@pytest.fixture(scope="module")
def ising_mods():
    return {h: ising_module(h, 14) for h in ISING_WEIGHTS}


# --- o_{n,m} -----------------------------------------------------------------

def test_vacuum_acts_as_identity_only_on_the_diagonal(heis, fock3):
    for m in range(3):
        for w in fock3.basis(m):
            x = G(w)
            assert o_action(heis, fock3, heis.vacuum(), x, m, m) == x
            for n in range(3):
                if n != m:
                    assert o_action(heis, fock3, heis.vacuum(), x, n, m) == GradedVector()


def test_conformal_zero_mode_on_fock(heis):
    for lam in (-2, 0, Fraction(1, 3), 5):
        M = FockModule(lam, 6)
        for n in range(4):
            for w in M.basis(n):
                x = G(w)
                assert o_action(heis, M, heis.conformal(), x, n, n) == x * (Fraction(lam) ** 2 / 2 + n)


def test_generator_gives_the_level_changing_mode(heis, fock3):
    a = heis.generator()
    for m in range(3):
        for n in range(3):
            for w in fock3.basis(m):
                assert o_action(heis, fock3, a, G(w), n, m) == fock3.gen_mode(m - n, w)


def test_o_action_level_guard(heis):
    M = FockModule(1, 2)
    with pytest.raises(WeightRangeError):
        o_action(heis, M, heis.vacuum(), G(()), 3, 0)
    assert o_action(heis, M, heis.vacuum(), G(()), -1, 0) == GradedVector()


def test_product_composition_on_modules(heis, fock3, isg, ising_mods):
    rep = composition_grid(heis, fock3, max_weight=3, max_level=2)
    assert rep.ok and rep.total > 1000
    assert set(rep.counts) == {"left", "right", "general"}
    rep = composition_grid(isg, ising_mods[Fraction(1, 16)], max_weight=4, max_level=1)
    assert rep.ok


def test_composition_detects_a_wrong_product(heis, fock3):
    a = heis.generator()
    w = G((1,))
    wrong = star_general(heis, a, a, 1, 1, 0) * 2
    lhs = o_action(heis, fock3, wrong, w, 1, 1)
    assert lhs != o_action(heis, fock3, a, o_action(heis, fock3, a, w, 0, 1), 1, 0)
    assert check_lemma41(heis, fock3, a, a, 1, 1, 0, w)


def test_omega_is_the_low_levels(heis, isg, ising_mods):
    M = FockModule(2, 8)
    for m in range(3):
        span = omega_subspace(heis, M, m, 3, 4)
        assert span.rank == sum(M.dim(k) for k in range(m + 1))
    mod = ising_mods[Fraction(1, 2)]
    for m in range(2):
        span = omega_subspace(isg, mod, m, 4, 4)
        assert span.rank == sum(mod.dim(k) for k in range(m + 1))


@pytest.mark.parametrize("n,m", [(0, 0), (1, 0), (1, 1), (0, 2)])
def test_o_spaces_annihilate(heis, fock3, n, m):
    rep = annihilation_check(heis, fock3, n, m, 12, random.Random(n + 7 * m))
    assert rep.ok, rep.failures


# --- A_m(V)-modules and M(U) ---------------------------------------------------

def _top_module(isg, h, m=0, cutoff=8):
    eig = Fraction(h) + m
    return am_module_from_spec(isg, {"m": m, "dim": 1, "generators": {OMEGA: [[str(eig)]]}}, cutoff)


def test_am_module_actions(isg):
    U = _top_module(isg, "1/2")
    assert U.complete
    omega = isg.conformal()
    assert U.matrix(isg.vacuum()) == [[1]]
    assert U.matrix(omega) == [[Fraction(1, 2)]]
    # the class of omega * omega acts by h^2
    sq = star_general(isg, omega, omega, 0, 0, 0)
    assert U.matrix(sq) == [[Fraction(1, 4)]]


def test_am_module_rejects_bad_input(isg):
    with pytest.raises(ModuleError, match="violate a relation"):
        _top_module(isg, "1/3")
    with pytest.raises(ModuleError, match="2x2"):
        AmModule(isg, 0, 2, [(isg.conformal(), [[1]])], 6)
    with pytest.raises(ModuleError, match="positive dimension"):
        AmModule(isg, 0, 0, [], 6)
    with pytest.raises(ModuleError, match="malformed"):
        am_module_from_spec(isg, {"generators": {}}, 6)


def test_am_module_reports_the_cutoff_it_needs(isg):
    U = am_module_from_spec(isg, {"m": 1, "dim": 1, "generators": {OMEGA: [["3/2"]]}}, 8)
    assert not U.complete
    with pytest.raises(ModuleError, match="need cutoff"):
        for lab in isg.filtered_basis(8):
            U.matrix(G(lab))


@pytest.fixture(scope="module")
def verma_half(isg):
    return build_verma(_top_module(isg, "1/2"), 4, 12)


def test_verma_levels_match_the_character(isg, verma_half):
    assert verma_half.dims() == ising_character_table(4).dims["1/2"]
    for h in ("0", "1/16"):
        M = build_verma(_top_module(isg, h), 4, 12)
        assert M.dims() == ising_character_table(4).dims[h]
    assert all(verma_half.stability())
    js = verma_half.to_json()
    assert js["dims"]["levels"] == [1, 1, 1, 1, 2] and js["params"]["u_dim"] == 1


def test_verma_module_axioms(verma_half):
    assert vacuum_identity_check(verma_half).ok
    rng = random.Random(5)
    assert commutator_check_verma(verma_half, 30, rng).ok
    assert associativity_check(verma_half, 30, rng).ok


def test_verma_universal_map(isg, verma_half, ising_mods):
    target = ising_mods[Fraction(1, 2)]
    phibar = universal_map(verma_half, target, [G(())])
    assert intertwining_check(phibar, 30, random.Random(2)).ok
    # the universal map is a bijection onto the irreducible module on built levels
    for n in range(5):
        imgs = [phibar(x, n) for x in verma_half.basis_vectors(n)]
        assert len(imgs) == target.dim(n) and all(imgs)
    with pytest.raises(ModuleError, match="equivariant"):
        universal_map(verma_half, ising_mods[Fraction(1, 16)], [G(())])
    with pytest.raises(ModuleError, match="one image"):
        universal_map(verma_half, target, [])


def test_verma_mode_range(verma_half):
    with pytest.raises(WeightRangeError):
        verma_half.piece(9)
    t, y = verma_half.mode(verma_half.voa.conformal(), 5, verma_half.basis_vectors(0)[0], 0)
    assert t == -1 and not y


def test_verma_from_a_higher_level_top(isg):
    # U = level one of L(1/2, 1/2): omega acts by 3/2 and U does not factor through A_0
    U = am_module_from_spec(isg, {"m": 1, "dim": 1, "generators": {OMEGA: [["3/2"]]}}, 12)
    assert U.complete and not U.factors_through_lower()
    M = build_verma(U, 3, 14)
    assert M.dims() == [1, 1, 1, 1]
    assert M.piece(1).dim == U.dim
    assert vacuum_identity_check(M, range(-2, 3)).ok


def test_verma_rejects_modules_from_lower_levels(isg):
    # the top h = 1/2 viewed at level one: omega acts by h, and U factors through A_0
    U = am_module_from_spec(isg, {"m": 1, "dim": 1, "generators": {OMEGA: [["1/2"]]}}, 12)
    assert U.factors_through_lower()
    with pytest.raises(ModuleError, match="can not factor"):
        build_verma(U, 2, 12)


# --- dimensions ---------------------------------------------------------------

def test_dimension_formula_on_ising(isg):
    table = ising_character_table(2)
    for (n, m), d in {(0, 0): 3, (1, 0): 2, (0, 1): 2}.items():
        r = theorem413_check(isg, table, n, m, 7)
        assert r["match"] and r["dims"]["quotient"] == d and r["stabilized"]
    r = theorem413_check(isg, table, 1, 1, 6)
    assert not r["match"] and r["failures"]


def test_classical_presentation_matches(heis, isg):
    assert zhu_algebra_dim(isg, 0, 6)[1] == 3
    assert zhu_algebra_dim(isg, 1, 8)[1] == 5
    assert zhu_algebra_dim(heis, 0, 5)[1] == 6


def test_lower_bound_from_modules(isg):
    mods = [ising_module(h, 14) for h in ISING_WEIGHTS]
    got = [hom_image_dim(isg, mods, n, m, 8) for n, m in ((0, 0), (1, 0), (0, 1), (1, 1))]
    assert got == [3, 2, 2, 5]
