import random
import time

import pytest

from mixhodge.filt import Filtration
from mixhodge.fixtures import split_mhs
from mixhodge.mhs import (MHSError, MixedStructure, bundle_type, check_opposedness, cs_truncation,
                          gamma_filtration, hodge_numbers, mts_underlying, permuted, pure_types,
                          random_mhs, s_split, split_filtration, splitting_difference,
                          unpermute_certificate, verify_splitting)
from mixhodge.scalars import Gauss

I = Gauss(0, 1)


def elliptic_h1():
    F = Filtration.make(2, {0: [[1, 0], [0, 1]], 1: [[1, I]], 2: []})
    return MixedStructure.make(2, {1: [[1, 0], [0, 1]]}, F)


def extension(c):
    """R(0) extended by R(1): e0 in weight -2, F^0 spanned by e1 + c e0."""
    F = Filtration.make(2, {-1: [[1, 0], [0, 1]], 0: [[c, 1]], 1: []})
    return MixedStructure.make(2, {-2: [[1, 0]], 0: [[1, 0], [0, 1]]}, F)


def test_elliptic_hodge_numbers():
    assert hodge_numbers(elliptic_h1()) == {(0, 1): 1, (1, 0): 1}


def test_split_fixture_hodge_numbers():
    assert hodge_numbers(split_mhs()) == {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1}


def test_truncation_fails_opposedness():
    ok, viol = check_opposedness(cs_truncation())
    assert not ok and viol
    with pytest.raises(MHSError):
        hodge_numbers(cs_truncation())


def test_pure_structures_pass(rng):
    for _ in range(40):
        n = rng.randint(-3, 3)
        dim = rng.choice([2, 4]) if n % 2 else rng.randint(1, 4)
        F = Filtration.make(dim, split_filtration(pure_types(n, dim, rng)))
        M = MixedStructure.make(dim, {n: [[int(i == j) for j in range(dim)] for i in range(dim)]}, F)
        assert check_opposedness(M)[0]


def test_extension_splits_with_certificate():
    M = extension(Gauss(1, 2))
    cert = s_split(M)
    assert verify_splitting(M, cert)
    assert cert.degree() <= 1


def test_real_extension_class():
    M = extension(Gauss(3, 0))
    assert verify_splitting(M, s_split(M))


def test_torsor_law_under_permutation():
    M = extension(Gauss(1, 2))
    c1 = s_split(M)
    c2 = unpermute_certificate(s_split(permuted(M, [1, 0])), [1, 0])
    assert verify_splitting(M, c2)
    g = splitting_difference(M, c1, c2)
    assert g


def test_random_mhs_split_and_torsor(rng):
    for k in range(15):
        M = random_mhs(rng)
        cert = s_split(M)
        assert verify_splitting(M, cert)
        perm = list(range(M.dim))
        rng.shuffle(perm)
        c2 = unpermute_certificate(s_split(permuted(M, perm)), perm)
        splitting_difference(M, cert, c2)


def test_tampered_certificate_is_rejected():
    M = extension(Gauss(1, 2))
    cert = s_split(M)
    if cert.A:
        cert.A[0][0][1] += 1
    else:
        cert.B[0][0] += 1
    assert not verify_splitting(M, cert)


def test_mts_slopes_equal_weights(rng):
    for _ in range(10):
        M = random_mhs(rng)
        T = mts_underlying(M)
        assert check_opposedness(T)[0]
        assert all(set(s) == {n} for n, s in bundle_type(T).items())


def test_chart_pair_with_wrong_slope():
    F = Filtration.make(1, {1: [[1]], 2: []})
    T = MixedStructure.make(1, {0: [[1]]}, F, F, "MTS")
    assert bundle_type(T) == {0: [2]}
    assert not check_opposedness(T)[0]


def test_gamma_zero_of_split_fixture():
    g = gamma_filtration(split_mhs(), 1)
    assert len(g) == 1


def test_split_is_fast():
    r = random.Random(5)
    for _ in range(5):
        M = random_mhs(r)
        t = time.perf_counter()
        s_split(M)
        assert time.perf_counter() - t < 1.0
