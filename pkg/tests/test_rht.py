import random
from fractions import Fraction

import pytest

from mixhodge.rht import (AlgebraError, GCAlgebra, HarrisonComplex, HomotopyLie, NilpotentDGLA, bar_construction,
                          bch, chevalley_eilenberg, colie_basis, colie_dims, gauge_act, homotopy_groups, mc_check,
                          pi3_formula, round_trip, validate_algebra, whitehead_bracket)
from mixhodge.rht.lie import random_element, random_instance
from mixhodge.rht.rings import elliptic, k3, proj_plane, ring_by_name, sphere2


def test_witt_counts():
    assert colie_dims([0, 0], 2) == {0: 1}
    assert colie_dims([0, 0], 3) == {0: 2}
    assert sum(colie_dims([0, 0, 0], 4).values()) == (3 ** 4 - 3 ** 2) // 4


def test_odd_generator_divided_square():
    assert colie_dims([1], 2) == {2: 1}
    assert colie_dims([1], 3) == {}
    assert colie_basis([1], 2) == {2: [(0, 0)]}


def test_k3_ring_is_valid():
    r = validate_algebra(k3())
    assert r["ok"] and r["simply_connected"]
    assert k3().dim == 24


def test_broken_associativity_is_reported():
    A = GCAlgebra.build(["1", "a", "b"], [0, 2, 4], [(1, 1, 2, Fraction(1))])
    assert validate_algebra(A)["ok"]
    bad = GCAlgebra.build(["1", "a", "b"], [0, 2, 3], [(1, 1, 2, Fraction(1))])
    assert not validate_algebra(bad)["ok"]


def test_sphere_bar_construction():
    Q = bar_construction(sphere2(), 3)
    assert len(Q.cohomology(1).reps) == 1
    assert len(Q.cohomology(2).reps) == 1


def test_projective_plane_coproduct_nonzero():
    Q = HarrisonComplex(proj_plane(), 3)
    assert Q.d_word((1, 1))


@pytest.mark.parametrize("name,dims", [("sphere2", {2: 1, 3: 1}), ("proj-plane", {2: 1, 3: 0, 4: 0})])
def test_small_homotopy_groups(name, dims):
    g = homotopy_groups(ring_by_name(name), max(dims))
    assert {n: g[n]["dim"] for n in dims} == dims


def test_k3_pi3():
    g = homotopy_groups(k3(), 3)
    assert g[2]["dim"] == 22 and g[3]["dim"] == 252
    assert g[3]["weights"] == {4: 252}


@pytest.mark.parametrize("name,h3,ker", [("sphere2", 0, 1), ("k3", 0, 252), ("proj-plane", 0, 0)])
def test_pi3_formula(name, h3, ker):
    f = pi3_formula(ring_by_name(name))
    assert (f["H3"], f["sym2_kernel"]) == (h3, ker)


def test_k3_pi3_hodge_numbers_match():
    A = k3()
    assert pi3_formula(A)["hodge"] == homotopy_groups(A, 3)[3]["hodge"]


def test_non_simply_connected_is_refused():
    with pytest.raises(AlgebraError):
        homotopy_groups(elliptic(), 3)


def test_whitehead_square_of_sphere():
    assert whitehead_bracket(sphere2(), 2, [1], 2, [1]) != [0]


def test_whitehead_antisymmetry_on_k3(rng):
    A = k3()
    for _ in range(3):
        xi = [rng.randint(-2, 2) for _ in range(22)]
        eta = [rng.randint(-2, 2) for _ in range(22)]
        a = whitehead_bracket(A, 2, xi, 2, eta)
        b = whitehead_bracket(A, 2, eta, 2, xi)
        # pi_2 sits in Lie degree 1, so the bracket is symmetric there
        assert a == b


def test_hurewicz_on_sphere():
    H = HomotopyLie(HarrisonComplex(sphere2(), 4))
    assert H.hurewicz(2, [1]) == [1]
    assert not any(H.hurewicz(3, [1]))


def free_class_two():
    return NilpotentDGLA(["x", "y", "z"], [0, 0, 0],
                         {(0, 1): {2: Fraction(1)}, (1, 0): {2: Fraction(-1)}}, {}, 2)


def test_chevalley_eilenberg_dualizes_bracket():
    W = chevalley_eilenberg(free_class_two(), 2)
    z = W.labels.index("y2")
    assert W.d == {z: {W.labels.index("y0*y1"): 1}}


def test_round_trip_sphere():
    r = round_trip(sphere2(), 4)
    assert r["A"] == r["W"]


def abelian():
    return NilpotentDGLA(["a", "w"], [0, -1], {}, {0: {1: Fraction(1)}}, 1)


def test_gauge_on_abelian_is_minus_da():
    assert gauge_act(abelian(), {0: Fraction(3)}, {}) == {1: Fraction(-3)}


def test_mc_failure_and_degree_checks():
    L = free_class_two()
    with pytest.raises(AlgebraError):
        mc_check(L, {0: Fraction(1)})
    with pytest.raises(AlgebraError):
        gauge_act(abelian(), {1: Fraction(1)}, {})


def test_gauge_action_law(rng):
    for _ in range(40):
        L, w = random_instance(rng)
        a, b = random_element(rng, L, 0), random_element(rng, L, 0)
        assert mc_check(L, w)
        left = gauge_act(L, a, gauge_act(L, b, w))
        assert left == gauge_act(L, bch(L, a, b), w)
        assert mc_check(L, left)


def test_perturbed_mc_element_fails(rng):
    hits = 0
    for _ in range(40):
        L, w = random_instance(rng)
        odd = L.basis_of_degree(-1)
        if not odd:
            continue
        k = rng.choice(odd)
        w2 = dict(w)
        w2[k] = w2.get(k, 0) + 1
        if not w2[k]:
            del w2[k]
        lhs = L.dvec(w2)
        for i, c in L.bracket(w2, w2).items():
            lhs[i] = lhs.get(i, 0) + c / 2
        assert mc_check(L, w2) == (not any(lhs.values()))
        hits += 1
    assert hits
