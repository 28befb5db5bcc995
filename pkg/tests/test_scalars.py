from fractions import Fraction

import pytest

from mixhodge.scalars import (ONE, SL2Elem, SPoly, Gauss, n_derive, normal_monomials, q_str, sl2_normalize,
                              sl2_weight, Q)

u, v, x, y = (SL2Elem.gen(c) for c in "uvxy")


def test_determinant_relation():
    assert u * y - v * x == ONE


def test_normal_form_of_uyx():
    assert sl2_normalize({(1, 0, 1, 1): 1}) == v * x * x + x


def test_normal_form_is_uy_free():
    p = (u * y) ** 3 + u * u * y * y * x
    assert all(not (m[0] and m[3]) for m in p.terms)


def test_weight_split():
    w = sl2_weight(x * x * y + u)
    assert w == {3: x * x * y, -1: u}


def test_n_derive_generators_and_leibniz():
    assert n_derive(x) == u and n_derive(y) == v
    assert not n_derive(u) and not n_derive(v)
    assert n_derive(x * x) == 2 * u * x


def test_n_kills_determinant(rng):
    for _ in range(20):
        a = SL2Elem({tuple(rng.randint(0, 2) for _ in range(4)): rng.randint(-3, 3)})
        b = SL2Elem({tuple(rng.randint(0, 2) for _ in range(4)): rng.randint(-3, 3)})
        assert n_derive(a * b) == n_derive(a) * b + a * n_derive(b)


def test_weight_zero_monomials_in_degree_two():
    monos = [m for m in normal_monomials(2) if -m[0] - m[1] + m[2] + m[3] == 0]
    assert len(monos) == 4


def test_rationals_are_exact_strings():
    assert Q("3/6") == Fraction(1, 2)
    assert q_str(Fraction(-2, 4)) == "-1/2"
    with pytest.raises(ValueError):
        Q("0.5x")


def test_gaussian_arithmetic():
    i = Gauss(0, 1)
    assert i * i == Gauss(-1, 0)
    assert (Gauss(1, 2) * Gauss(1, -2)) == Gauss(5, 0)


def test_spoly_arithmetic():
    p = SPoly([Fraction(1), Fraction(1)])
    assert (p * p).coeffs == [1, 2, 1]
    assert SPoly([0, 0]).degree() <= 0
