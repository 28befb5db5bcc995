from fractions import Fraction

import pytest

from mixhodge import linalg as la
from mixhodge.kahler import (SHIPPED, PackageError, formality_zigzag, green, package_by_name, transfer_gamma_i,
                             transfer_gamma_p, two_types_family, validate_package)
from mixhodge.kahler.coder import Calculus, tscale, tsum
from mixhodge.kahler.monodromy import _z_sample
from mixhodge.kahler.package import KahlerPackage
from mixhodge.kahler.twisted import TwistedComplex


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_packages_validate(name):
    r = validate_package(package_by_name(name))
    assert r["ok"], r["failures"]


def test_elliptic_harmonic_dims():
    assert package_by_name("elliptic").harmonic_dims() == {0: 1, 1: 2, 2: 1}


def test_acyclic_square_green_inverts_laplacian():
    P = package_by_name("acyclic-square")
    G = green(P)
    assert any(any(r) for r in G)
    Gm = la.matmul(G, P.laplacian)
    assert la.madd(Gm, la.madd(la.identity(P.n), P.pr_H, -1), -1) == la.zeros(P.n, P.n)


@pytest.mark.parametrize("name", SHIPPED)
def test_green_commutes_with_d(name):
    P = package_by_name(name)
    assert la.is_zero_matrix(la.madd(la.matmul(P.green, P.D), la.matmul(P.D, P.green), -1))


def test_broken_dc_is_reported():
    P = package_by_name("acyclic-square")
    dc = {i: dict(v) for i, v in P.dc.items()}
    i = next(iter(dc))
    k = next(iter(dc[i]))
    dc[i][k] += 1
    bad = KahlerPackage(P.name, P.A, P.gram, dc, P.lam, P.x0_vec)
    r = validate_package(bad)
    assert not r["ok"] and r["failures"]


def test_indefinite_metric_is_reported():
    P = package_by_name("elliptic")
    g = [list(r) for r in P.gram]
    g[1][1] = -g[1][1]
    r = validate_package(KahlerPackage(P.name, P.A, g, P.dc, P.lam, P.x0_vec))
    assert not r["ok"]


@pytest.mark.parametrize("name", ["acyclic-square", "torus-twisted", "tensor(elliptic,acyclic-square)"])
def test_two_types_family(name, rng):
    P = package_by_name(name)
    assert two_types_family(P, [[0, 1], [-1, 0]])
    n = 0
    while n < 20:
        M = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(2)] for _ in range(2)]
        if M[0][0] * M[1][1] - M[0][1] * M[1][0]:
            assert two_types_family(P, M)
            n += 1
    with pytest.raises(PackageError):
        two_types_family(P, [[1, 2], [2, 4]])


def test_identity_specialization_is_the_pair_statement():
    P = package_by_name("acyclic-square")
    assert two_types_family(P, [[1, 0], [0, 1]])


def test_formality_at_specializations():
    r = formality_zigzag(package_by_name("acyclic-square"))
    assert r["ok"] and len(r["specializations"]) == 5


def test_formality_rejects_non_sl2_point():
    with pytest.raises(ValueError):
        formality_zigzag(package_by_name("elliptic"), [(1, 1, 1, 1)])


def test_homotopy_identity_against_the_literal_reading():
    # [h_p, D~] is 1 - pr_H on Z, never pr_H itself on an acyclic piece
    T = TwistedComplex(package_by_name("acyclic-square"))
    lhs = T.h_p.bracket(T.Dt) @ T.pr_Z
    assert not ((lhs - (T.one - T.prH) @ T.pr_Z).first_nonzero(T.P.labels))
    assert (lhs - T.prH @ T.pr_Z).first_nonzero(T.P.labels)


def test_transfer_of_n_on_formal_package_is_trivial():
    P = package_by_name("formal(sphere2)")
    C = Calculus(P, 3)
    g, fp = transfer_gamma_i(P, C=C)
    t = C.harmonic_word((C.harmonic_positive()[0],) * 2)
    assert not g(t) and fp(t) == C.N(t)


def test_transfer_on_acyclic_square_lands_in_z():
    P = package_by_name("acyclic-square")
    C = Calculus(P, 3)
    g, fp = transfer_gamma_i(P, C=C)
    sample = _z_sample(C)
    assert sample and all(C.in_Z(fp(t)) for t in sample)
    _, fs = transfer_gamma_p(P, C.E_prH @ fp, C=C)
    for t in sample:
        assert not tsum(fs(t), tscale(fs(C.E_prH(t)), -1))


def test_transfer_is_linear():
    P = package_by_name("torus-twisted")
    C = Calculus(P, 3)
    g1, _ = transfer_gamma_i(P, C.N, C=C)
    g2, _ = transfer_gamma_i(P, C.N + C.N, C=C)
    a, b = C.harmonic_positive()[:2]
    for w in [(a,), (a, b), (b, a, b)]:
        t = C.harmonic_word(w)
        assert tsum(g1(t), g1(t)) == g2(t)


def test_transfer_rejects_non_cycle():
    P = package_by_name("acyclic-square")
    C = Calculus(P, 3)
    with pytest.raises(PackageError):
        transfer_gamma_i(P, C.X, C=C)
