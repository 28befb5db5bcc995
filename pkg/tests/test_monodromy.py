import itertools
import random
from fractions import Fraction

import pytest

from mixhodge import linalg as la
from mixhodge.kahler import SHIPPED, MonodromyError, monodromy, package_by_name, pi4_structure, restrict_to_S
from mixhodge.kahler.coder import Calculus
from mixhodge.kahler.monodromy import _harmonic_ring, is_exact_difference
from mixhodge.rht import cohomology_ring, homotopy_groups
from mixhodge.scalars import SL2Elem, SPoly, sl2_weight

FAST = [n for n in SHIPPED if n != "formal(k3)"]


@pytest.fixture(scope="module")
def results():
    return {n: monodromy(package_by_name(n), 3) for n in SHIPPED}


@pytest.mark.parametrize("name", SHIPPED)
def test_checks_and_pipeline_agree(results, name):
    r = results[name]
    assert all(r.checks.values()), r.checks
    assert r.comparison["alpha_equal"] and r.comparison["gamma_equal"]


@pytest.mark.parametrize("name", [n for n in SHIPPED if n.startswith("formal")])
def test_formal_packages_have_no_monodromy(results, name):
    r = results[name]
    assert not any(r.alpha.values()) and not any(r.gamma.values())


def test_torus_twisted_has_monodromy(results):
    assert any(results["torus-twisted"].gamma.values())


def test_length_two_gamma_formula(results):
    # gamma(v|w) = (-1)^{|v|} x0(pr_{im D*Dc*} G Lambda (v w))
    for name in FAST:
        P = package_by_name(name)
        r = results[name]
        hb = P.harmonic_basis
        GL = la.matmul(P.pr_im_dsdcs, la.matmul(P.green, P.L))
        for w, c in r.gamma.items():
            if len(w) != 2:
                continue
            a = {i: x for i, x in enumerate(hb[w[0]]) if x}
            b = {i: x for i, x in enumerate(hb[w[1]]) if x}
            prod = P.A.mul(a, b)
            val = la.matvec(GL, [prod.get(i, 0) for i in range(P.n)])
            x0 = sum(P.x0_vec.get(i, 0) * y for i, y in enumerate(val))
            sign = -1 if r.harmonic_degrees[w[0]] % 2 else 1
            assert c == SL2Elem.const(sign * x0)


def test_gamma_weights_are_minus_two(results):
    r = results["torus-twisted"]
    for w, c in r.gamma.items():
        if c:
            shift = -sum(r.harmonic_degrees[t] for t in w)
            assert set(sl2_weight(c)) == {-2 - shift}


def test_literal_signs_disagree_on_pi4_fixture():
    r = monodromy(package_by_name("acyclic-square-pi4"), 3, "literal")
    assert not r.comparison["agree"]


def test_bad_arguments():
    P = package_by_name("elliptic")
    with pytest.raises(MonodromyError):
        monodromy(P, 1)
    with pytest.raises(ValueError):
        monodromy(P, 3, "other")


def test_exact_difference_recognized_and_perturbation_rejected():
    rng = random.Random(1)
    P = package_by_name("torus-twisted")
    C = Calculus(P, 3)
    H = _harmonic_ring(P, C)
    sd = {t: H.degrees[t] - 1 for t in range(H.dim)}
    hpos = [t for t in range(H.dim) if t != H.unit]
    words = [w for m in (1, 2, 3) for w in itertools.product(hpos, repeat=m)]
    k = {(w, h): Fraction(rng.randint(-3, 3)) for w in words if len(w) < 3 for h in hpos
         if sd[h] == sum(sd[t] for t in w) - 1}

    def q(t):
        out = {}
        for w, c in t.items():
            pre = 0
            for i in range(len(w) - 1):
                s = -1 if (pre + sd[w[i]]) % 2 else 1
                for r, a in H.mul_basis(w[i], w[i + 1]).items():
                    if r != H.unit:
                        key = w[:i] + (r,) + w[i + 2:]
                        out[key] = out.get(key, 0) + s * a * c
                pre += sd[w[i]]
        return out

    def K(t):
        out = {}
        for w, c in t.items():
            pre = 0
            for i in range(len(w)):
                for j in range(i + 1, len(w) + 1):
                    for h in hpos:
                        a = k.get((w[i:j], h))
                        if a:
                            key = w[:i] + (h,) + w[j:]
                            out[key] = out.get(key, 0) + (-1 if pre % 2 else 1) * a * c
                pre += sd[w[i]]
        return out

    diff = {}
    for w in words:
        tot = {}
        for d in (q(K({w: 1})), K(q({w: 1}))):
            for ww, c in d.items():
                if len(ww) == 1:
                    tot[ww[0]] = tot.get(ww[0], 0) + c
        tot = {h: SL2Elem.const(c) for h, c in tot.items() if c}
        if tot:
            diff[w] = tot
    assert diff
    assert is_exact_difference(C, H, diff, words, "H")
    w0 = next(iter(diff))
    bad = dict(diff)
    bad[w0] = {h: c + SL2Elem.const(1) for h, c in diff[w0].items()}
    assert not is_exact_difference(C, H, bad, words, "H")


@pytest.mark.parametrize("name", SHIPPED)
def test_restriction_to_s_on_pi3_is_split(results, name):
    s = restrict_to_S(results[name], 3)
    assert s["split"] and s["kernel_dim"] == s["dim"]


def test_pi3_restriction_dimension_matches_bar():
    r = monodromy(package_by_name("formal(k3)"), 3)
    assert restrict_to_S(r, 3)["dim"] == 252


def test_pi4_of_projective_plane():
    st = pi4_structure(package_by_name("formal(proj-plane)"))
    assert (st["C"], st["L"], st["K"]) == (0, 0, 0)


@pytest.mark.parametrize("name", [n for n in FAST if package_by_name(n).is_simply_connected()])
def test_pi4_pieces_match_bar_homology(results, name):
    P = package_by_name(name)
    st = pi4_structure(P, results[name])
    assert {k: st[k] for k in "CLK"} == st["brute"]
    assert st["dim"] == homotopy_groups(cohomology_ring(P.A)[0], 4)[4]["dim"]


def _span_rank(vecs):
    rows = []
    for v in vecs:
        rows.append([c for p in v for c in (list(p.coeffs) + [0] * (3 - len(p.coeffs)))])
    return la.rank(rows)


def test_pi4_kernel_matches_presentation(results):
    P = package_by_name("acyclic-square-pi4")
    st = pi4_structure(P, results["acyclic-square-pi4"])
    assert st["alpha_prime_nonzero"] and not st["split"]
    s = restrict_to_S(results["acyclic-square-pi4"], 4)
    assert not s["split"] and s["kernel_dim"] == st["dim"]
    units = [[SPoly([Fraction(int(j == i))]) for j in range(st["dim"])] for i in st["C_index"]]
    expected = units + st["presentation_K"]
    assert _span_rank(s["kernel"]) == _span_rank(expected) == _span_rank(s["kernel"] + expected)


def test_pi4_needs_simple_connectivity():
    with pytest.raises(MonodromyError):
        pi4_structure(package_by_name("elliptic"))
