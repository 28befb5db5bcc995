import pytest

from mixhodge.filt import (Filtration, FiltrationError, HodgeComplexTerm, RationalSpace, RealStructure,
                           conjugate_filtration, is_pure_hodge, rees_jumps, weak_hodge_cohomology)
from mixhodge.mhs import cs_truncation, pure_types, split_filtration
from mixhodge.scalars import Gauss

I = Gauss(0, 1)


def test_rees_jumps_from_dimension_count():
    F = Filtration.make(2, {-1: [[1, 0], [0, 1]], 0: [[1, 1]], 1: []})
    assert sorted(rees_jumps(RationalSpace(2), F)) == [-1, 0]


def test_rees_jumps_of_truncated_line():
    M = cs_truncation()
    assert sorted(rees_jumps(RationalSpace(2), M.F)) == [0, 1]


def test_rees_dimension_mismatch():
    F = Filtration.make(2, {0: [[1, 0], [0, 1]]})
    with pytest.raises(FiltrationError):
        rees_jumps(RationalSpace(3), F)


def test_conjugation_is_involutive():
    F = Filtration.make(2, {0: [[1, 0], [0, 1]], 1: [[1, I]], 2: []})
    assert conjugate_filtration(conjugate_filtration(F)).same_as(F)


def test_elliptic_h1_is_pure_of_weight_one():
    F = Filtration.make(2, {0: [[1, 0], [0, 1]], 1: [[1, I]], 2: []})
    V = RationalSpace(2)
    assert is_pure_hodge(V, F, None, 1)
    assert not is_pure_hodge(V, F, None, 2)


def test_real_line_is_not_weight_one():
    F = Filtration.make(2, {0: [[1, 0], [0, 1]], 1: [[1, 0]], 2: []})
    assert not is_pure_hodge(RationalSpace(2), F, None, 1)


def test_random_pure_structures(rng):
    for _ in range(30):
        n = rng.randint(-2, 4)
        dim = rng.choice([2, 4]) if n % 2 else rng.randint(1, 5)
        types = pure_types(n, dim, rng)
        F = Filtration.make(dim, split_filtration(types))
        assert is_pure_hodge(RationalSpace(dim), F, None, n)


def test_non_standard_real_structure_validates():
    sigma = RealStructure(((Gauss(0), Gauss(1)), (Gauss(1), Gauss(0))))
    sigma.validate()
    bad = RealStructure(((Gauss(0), Gauss(2)), (Gauss(1), Gauss(0))))
    with pytest.raises(FiltrationError):
        bad.validate()


def _dims(h):
    return {m: k for m, k in h.items() if k}


def test_weak_cohomology_of_type_00():
    F = Filtration.make(1, {0: [[1]], 1: []})
    assert _dims(weak_hodge_cohomology([HodgeComplexTerm(0, F)], {})) == {0: 1}


def test_weak_cohomology_of_type_11():
    # F^0 = V, so F^0 + V_R -> V_C is onto with a real line as kernel
    F = Filtration.make(1, {1: [[1]], 2: []})
    assert _dims(weak_hodge_cohomology([HodgeComplexTerm(0, F)], {})) == {0: 1}


def test_weak_cohomology_of_tate_twist():
    # type (-1,-1): F^0 = 0, so only the cokernel V_C / V_R survives
    F = Filtration.make(1, {-1: [[1]], 0: []})
    assert _dims(weak_hodge_cohomology([HodgeComplexTerm(0, F)], {})) == {1: 1}


def test_weak_cohomology_of_acyclic_pair():
    F = Filtration.make(1, {0: [[1]], 1: []})
    h = weak_hodge_cohomology([HodgeComplexTerm(0, F), HodgeComplexTerm(1, F)], {0: [[1]]})
    assert _dims(h) == {}


def test_weak_cohomology_of_zero_complex():
    assert _dims(weak_hodge_cohomology([], {})) == {}
