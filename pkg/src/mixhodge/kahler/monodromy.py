"""The Archimedean monodromy (alpha, gamma) of a Kähler package.

alpha sends words in the harmonic classes of positive degree to harmonic
classes, gamma sends them to the unit line; both carry O(SL2) coefficients.
They are evaluated twice: by the closed-form double sums and by running the
two homotopy-transfer steps on N.  The results are compared exactly, and
modulo exact coderivations when they differ.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, List, Optional, Sequence, Tuple

from .. import linalg as la
from ..rht.algebra import GCAlgebra
from ..rht.bar import HarrisonComplex
from ..scalars import SL2Elem, SPoly, sl2_weight
from .coder import Calculus, Map, Tensor, tadd, transfer_gamma_i as _li, transfer_gamma_p as _lp, tscale, tsum
from .package import KahlerPackage, PackageError

HWord = Tuple[int, ...]
ZERO = SL2Elem.const(0)
CONVENTIONS = ("koszul", "literal")


class MonodromyError(PackageError):
    pass


# ---------------------------------------------------------------------------
# transfer steps with the hypotheses checked


def _z_sample(C: Calculus, max_words: int = 400) -> List[Tensor]:
    """Words whose letters are harmonic forms or D~c-images of basis vectors."""
    P = C.P
    letters: List[Tensor] = []
    for t in range(len(P.harmonic_basis)):
        letters.append(C.harmonic_word((t,)))
    for i in range(P.n):
        img = C.T.Dct.cols.get(i)
        if img:
            letters.append({(r,): a for r, a in img.items()})
    out: List[Tensor] = []
    for m in range(1, C.n_max + 1):
        for combo in iproduct(range(len(letters)), repeat=m):
            if len(out) >= max_words * m:
                break
            acc: Tensor = {(): SL2Elem.const(1)}
            for k in combo:
                nxt: Tensor = {}
                for w, c in acc.items():
                    for w2, c2 in letters[k].items():
                        tadd(nxt, w + w2, c * c2)
                acc = nxt
            if acc:
                out.append(acc)
    return out


def transfer_gamma_i(P: KahlerPackage, f: Optional[Map] = None, n_max: int = 3,
                     C: Optional[Calculus] = None) -> Tuple[Map, Map]:
    """(gamma^i(f), f') for a cycle f (default N); f' preserves E(Z)."""
    C = C or Calculus(P, n_max)
    f = f if f is not None else C.N
    sample = _z_sample(C)
    for t in sample:
        if C.d_E.bracket(f)(t):
            raise MonodromyError("transfer needs [d_E, f] = 0")
    gamma, fprime = _li(C, f)
    for t in sample:
        if not C.in_Z(fprime(t)):
            raise MonodromyError("f' does not preserve E(Z)")
    return gamma, fprime


def transfer_gamma_p(P: KahlerPackage, f: Map, n_max: int = 3, C: Optional[Calculus] = None,
                     target_q: Optional[Map] = None) -> Tuple[Map, Map]:
    """(gamma^p(f), f'') for f from E(Z) to E(H (x) O(SL2)); f'' factors through pr_H."""
    C = C or Calculus(P, n_max)
    tq = target_q if target_q is not None else C.q_H
    gamma, fsecond = _lp(C, f, tq)
    for t in _z_sample(C):
        if tsum(fsecond(t), tscale(fsecond(C.E_prH(t)), -1)):
            raise MonodromyError("f'' does not factor through pr_H")
    return gamma, fsecond


# ---------------------------------------------------------------------------
# closed forms


class _Terms:
    """The operators appearing in the double sums."""

    def __init__(self, C: Calculus):
        q = C.q
        self.C = C
        self.A1 = q.bracket(C.X) @ C.Dct
        self.B = C.Dt @ q.bracket(C.GL)
        self.Cc = C.Dct @ q.bracket(C.GL)
        self.B0 = C.Dt @ C.GL
        self.q_prH = Map(lambda t: tsum(C.q_H(C.E_prH(t)), tscale(C.E_prH(q(t)), -1)), 1, "[q,pr_H]")

    def chain(self, t: Tensor, a: int, b: int, mid: Map) -> Tensor:
        return self.A1.power(b)(mid(self.Cc.power(a)(t)))


def _signs(convention: str):
    if convention == "koszul":
        return (lambda a, b: (-1) ** b, lambda a, b: (-1) ** b,
                lambda a, b: (-1) ** (a + b), lambda a, b: (-1) ** (a + b))
    if convention == "literal":
        return (lambda a, b: (-1) ** (a + b + 1), lambda a, b: (-1) ** (a + b),
                lambda a, b: (-1) ** (a + b), lambda a, b: (-1) ** (a + b))
    raise ValueError(f"unknown sign convention {convention!r}")


def closed_alpha(Tm: _Terms, t: Tensor, m: int, convention: str = "koszul") -> Dict[int, SL2Elem]:
    C = Tm.C
    s1, s2, _, _ = _signs(convention)
    acc: Tensor = {}
    for b in range(1, m - 1):
        a = m - 2 - b
        acc = tsum(acc, tscale(C.E_prH(Tm.chain(t, a, b, Tm.B)), s1(a, b)))
        if a > 0:
            acc = tsum(acc, tscale(Tm.q_prH(Tm.chain(t, a, b, Tm.B0)), s2(a, b)))
    return C.harmonic_coords(acc)


def closed_gamma(Tm: _Terms, t: Tensor, m: int, convention: str = "koszul") -> SL2Elem:
    C = Tm.C
    _, _, s1, s2 = _signs(convention)
    acc: Tensor = {}
    for b in range(0, m - 1):
        a = m - 2 - b
        acc = tsum(acc, tscale(C.E_x0(C.h_i(Tm.chain(t, a, b, Tm.B))), s1(a, b)))
    for b in range(1, m - 1):
        a = m - 1 - b
        acc = tsum(acc, tscale(C.E_x0(Tm.chain(t, a, b, Tm.B0)), s2(a, b)))
    return C.unit_coeff(acc)


# ---------------------------------------------------------------------------
# exactness modulo [d, k]


def _monomial_parts(vals: Dict[HWord, Dict[int, SL2Elem]]) -> Dict[tuple, Dict[HWord, Dict[int, Fraction]]]:
    out: Dict[tuple, Dict[HWord, Dict[int, Fraction]]] = {}
    for w, hv in vals.items():
        for h, c in hv.items():
            for mono, a in c.terms.items():
                out.setdefault(mono, {}).setdefault(w, {})[h] = a
    return out


def _harmonic_ring(P: KahlerPackage, C: Calculus) -> GCAlgebra:
    """Cohomology ring on the harmonic basis: h h' = pr_H(h h')."""
    hb = P.harmonic_basis
    A = P.A
    degs = [P.degrees[next(i for i, a in enumerate(v) if a)] for v in hb]
    unit = next(t for t, v in enumerate(hb) if degs[t] == 0)
    prods = []
    for s, vs in enumerate(hb):
        for t, vt in enumerate(hb):
            if unit in (s, t):
                continue
            xs = {i: a for i, a in enumerate(vs) if a}
            xt = {i: a for i, a in enumerate(vt) if a}
            pr = A.mul(xs, xt)
            if not pr:
                continue
            tens = {(i,): SL2Elem.const(a) for i, a in pr.items()}
            for h, c in C.harmonic_coords(C.E_prH(tens)).items():
                prods.append((s, t, h, c.evaluate(0, 0, 0, 0)))
    return GCAlgebra.build([f"h{t}" for t in range(len(hb))], degs, prods, unit=unit, symmetric=False)


def is_exact_difference(C: Calculus, H: GCAlgebra, diff: Dict[HWord, Dict[int, SL2Elem]],
                        words: Sequence[HWord], target: str) -> bool:
    """Whether diff is the cogenerator part of [q, k] for some k of degree -1.

    For ``target='H'`` k takes values in harmonic classes and the bracket
    includes the products h k(w) and k(w) h; for ``target='unit'`` only
    k q survives since positive-degree letters have zero basepoint value.
    """
    if not any(diff.values()):
        return True
    sd = {t: H.degrees[t] - 1 for t in range(H.dim)}
    hdeg = lambda w: sum(sd[t] for t in w)
    targets = [t for t in range(H.dim) if t != H.unit] if target == "H" else [H.unit]
    short = sorted({w[:j] for w in words for j in range(1, len(w))} | {w[j:] for w in words for j in range(1, len(w))},
                   key=lambda w: (len(w), w))
    unknowns = {}
    for w in short:
        for h in targets:
            if target == "unit" or sd[h] == hdeg(w) - 1:
                unknowns[(w, h)] = len(unknowns)

    def q_word(w: HWord) -> Dict[HWord, Fraction]:
        out: Dict[HWord, Fraction] = {}
        pre = 0
        for k in range(len(w) - 1):
            s = -1 if (pre + sd[w[k]]) % 2 else 1
            for r, a in H.mul_basis(w[k], w[k + 1]).items():
                if r == H.unit:
                    continue
                key = w[:k] + (r,) + w[k + 2:]
                out[key] = out.get(key, 0) + s * a
            pre += sd[w[k]]
        return out

    # row (word w, output class h): coefficient of each unknown k(w', h')
    rows: Dict[Tuple[HWord, int], Dict[int, Fraction]] = {}

    def put(w, h, key, c):
        if key not in unknowns or not c:
            return
        r = rows.setdefault((w, h), {})
        r[unknowns[key]] = r.get(unknowns[key], 0) + c

    for w in words:
        for w2, c in q_word(w).items():
            for h in targets:
                put(w, h, (w2, h), c)
        if target == "H" and len(w) >= 2:
            # k on w[1:] then q merges w[0] with it; k on w[:-1] then q
            # merges it with w[-1] (Koszul signs of both steps combined)
            first, rest = w[0], w[1:]
            last, init = w[-1], w[:-1]
            for h2 in targets:
                for h, a in H.mul_basis(first, h2).items():
                    if h in targets:
                        put(w, h, (rest, h2), a)
                s2 = -1 if sd[h2] % 2 else 1
                for h, a in H.mul_basis(h2, last).items():
                    if h in targets:
                        put(w, h, (init, h2), s2 * a)
    if not unknowns:
        return False
    for mono, part in _monomial_parts(diff).items():
        keys = sorted(set(rows) | {(w, h) for w, hv in part.items() for h in hv}, key=lambda k: (len(k[0]), k))
        rhs = [part.get(key[0], {}).get(key[1], Fraction(0)) for key in keys]
        if la.sparse_solve([rows.get(key, {}) for key in keys], rhs, len(unknowns)) is None:
            return False
    return True


# ---------------------------------------------------------------------------
# the result


@dataclass
class MonodromyResult:
    package: str
    n_max: int
    convention: str
    harmonic_degrees: List[int]
    alpha: Dict[HWord, Dict[int, SL2Elem]]
    gamma: Dict[HWord, SL2Elem]
    pipeline_alpha: Dict[HWord, Dict[int, SL2Elem]]
    pipeline_gamma: Dict[HWord, SL2Elem]
    comparison: Dict[str, object] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    simply_connected: bool = False
    _ring: Optional[GCAlgebra] = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and bool(self.comparison.get("agree"))

    def alpha_length(self, m: int) -> Dict[HWord, Dict[int, SL2Elem]]:
        return {w: v for w, v in self.alpha.items() if len(w) == m and v}

    def gamma_length(self, m: int) -> Dict[HWord, SL2Elem]:
        return {w: v for w, v in self.gamma.items() if len(w) == m and v}

    def to_json(self) -> dict:
        def a_json(d):
            return [[list(w), [[h, c.to_json()] for h, c in sorted(v.items())]] for w, v in sorted(d.items()) if v]

        def g_json(d):
            return [[list(w), c.to_json()] for w, c in sorted(d.items()) if c]

        return {
            "package": self.package, "n_max": self.n_max, "convention": self.convention,
            "harmonic_degrees": self.harmonic_degrees,
            "alpha": a_json(self.alpha), "gamma": g_json(self.gamma),
            "comparison": self.comparison, "checks": self.checks,
        }


def _weight_ok(degs: List[int], w: HWord, h: Optional[int], c: SL2Elem) -> bool:
    """Weight of the target class minus the inputs, plus the coefficient weight, is -2."""
    shift = (degs[h] if h is not None else 0) - sum(degs[t] for t in w)
    return all(r + shift == -2 for r in sl2_weight(c))


def monodromy(P: KahlerPackage, n_max: int = 3, convention: str = "koszul",
              pipeline: bool = True) -> MonodromyResult:
    """alpha and gamma on all harmonic words of length <= n_max."""
    if n_max < 2:
        raise MonodromyError("word-length truncation must be at least 2")
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown sign convention {convention!r}")
    C = Calculus(P, n_max)
    Tm = _Terms(C)
    hpos = C.harmonic_positive()
    degs = [P.degrees[next(i for i, a in enumerate(v) if a)] for v in P.harmonic_basis]
    words = [w for m in range(1, n_max + 1) for w in iproduct(hpos, repeat=m)]

    if pipeline:
        gi, fp = _li(C, C.N)
        F = C.E_prH @ fp
        _, alpha_pipe = _lp(C, F, C.q_H)
        _, gamma_pipe = _lp(C, C.E_x0 @ gi, C.q)

    alpha, gamma, pa, pg = {}, {}, {}, {}
    for w in words:
        t = C.harmonic_word(w)
        m = len(w)
        alpha[w] = closed_alpha(Tm, t, m, convention) if m >= 2 else {}
        gamma[w] = closed_gamma(Tm, t, m, convention) if m >= 2 else ZERO
        if pipeline:
            pa[w] = C.harmonic_coords(alpha_pipe(t))
            pg[w] = C.unit_coeff(gamma_pipe(t))

    res = MonodromyResult(P.name, n_max, convention, degs, alpha, gamma, pa, pg,
                          simply_connected=P.is_simply_connected())
    H = _harmonic_ring(P, C)
    res._ring = H
    res.checks["alpha vanishes in length 1"] = not res.alpha_length(1)
    res.checks["gamma vanishes in length 1"] = not res.gamma_length(1)
    res.checks["alpha vanishes in length 2"] = not res.alpha_length(2)
    res.checks["alpha has weight -2"] = all(
        _weight_ok(degs, w, h, c) for w, v in alpha.items() for h, c in v.items())
    res.checks["gamma has weight -2"] = all(
        _weight_ok(degs, w, None, c) for w, c in gamma.items() if c)
    if pipeline:
        dA = {w: {h: alpha[w].get(h, ZERO) - pa[w].get(h, ZERO) for h in set(alpha[w]) | set(pa[w])} for w in words}
        dA = {w: {h: c for h, c in v.items() if c} for w, v in dA.items()}
        dG = {w: {H.unit: gamma[w] - pg[w]} for w in words if gamma[w] != pg[w]}
        exact_a = not any(dA.values())
        exact_g = not dG
        cmp = {"alpha_equal": exact_a, "gamma_equal": exact_g,
               "alpha_mismatches": sum(1 for v in dA.values() if v), "gamma_mismatches": len(dG)}
        cmp["alpha_exact_difference"] = exact_a or is_exact_difference(C, H, dA, words, "H")
        cmp["gamma_exact_difference"] = exact_g or is_exact_difference(C, H, dG, words, "unit")
        cmp["agree"] = bool(cmp["alpha_exact_difference"] and cmp["gamma_exact_difference"])
        res.comparison = cmp
    else:
        res.comparison = {"agree": None}
    return res


# ---------------------------------------------------------------------------
# the induced operator on a graded piece of the homotopy Lie algebra


def _beta_on_word(res: MonodromyResult, w: HWord) -> Dict[HWord, SL2Elem]:
    """Coderivation extension of alpha plus the dual of ad_gamma."""
    out: Dict[HWord, SL2Elem] = {}

    def add(key, c):
        if not c:
            return
        s = out[key] + c if key in out else c
        if s:
            out[key] = s
        else:
            del out[key]

    m = len(w)
    for i in range(m):
        for j in range(i + 2, m + 1):
            for h, c in res.alpha.get(w[i:j], {}).items():
                add(w[:i] + (h,) + w[j:], c)
    for k in range(1, m):
        g = res.gamma.get(w[:k])
        if g:
            add(w[k:], g)
        g = res.gamma.get(w[m - k:])
        if g:
            add(w[:m - k], -g)
    return out


def _class_space(res: MonodromyResult, n: int):
    """Harrison complex of the harmonic ring and the degree of the target piece."""
    H = res._ring
    if res.simply_connected:
        return HarrisonComplex(H, n), n - 1
    return HarrisonComplex(H, n - 1), 0


def beta_matrix(res: MonodromyResult, n: int):
    """beta on the dual of pi_n (or of G/[G]_n without simple connectivity).

    Returns (Q, degree, dim, {(row, col): SL2Elem}, lengths).
    """
    Q, deg = _class_space(res, n)
    co = Q.cohomology(deg)
    dim = len(co.reps)
    need = max((L for r in co.reps for L, _ in r), default=0)
    if need > res.n_max:
        raise MonodromyError(f"monodromy computed to word length {res.n_max}, target needs {need}")
    lengths = [max(L for L, _ in r) for r in co.reps]
    M: Dict[Tuple[int, int], SL2Elem] = {}
    for j, r in enumerate(co.reps):
        img: Dict[HWord, SL2Elem] = {}
        for w, c in Q.lift(deg, r).items():
            for w2, a in _beta_on_word(res, w).items():
                s = img[w2] + a.scale(c) if w2 in img else a.scale(c)
                img[w2] = s
        by_mono: Dict[tuple, Dict[HWord, Fraction]] = {}
        for w2, a in img.items():
            for mono, x in a.terms.items():
                by_mono.setdefault(mono, {})[w2] = x
        for mono, tens in by_mono.items():
            tens = {w2: x for w2, x in tens.items() if x}
            if not tens:
                continue
            for i, x in Q.class_coords(deg, Q.project(deg, tens)).items():
                key = (i, j)
                term = SL2Elem({mono: x})
                M[key] = M[key] + term if key in M else term
    return Q, deg, dim, {k: v for k, v in M.items() if v}, lengths


def _to_poly(c: SL2Elem) -> SPoly:
    """Substitute (u, v, x, y) = (1, 0, x, 1)."""
    coeffs: Dict[int, Fraction] = {}
    for (a, b, cx, d), k in c.terms.items():
        if b:
            continue
        coeffs[cx] = coeffs.get(cx, 0) + k
    top = max(coeffs, default=-1)
    return SPoly([coeffs.get(i, Fraction(0)) for i in range(top + 1)])


def _nilpotency(M: Dict[Tuple[int, int], Fraction], dim: int) -> int:
    """Smallest s with M^s = 0 for a constant sparse matrix (dim + 1 if none)."""
    cols: Dict[int, Dict[int, Fraction]] = {}
    for (i, j), a in M.items():
        if a:
            cols.setdefault(j, {})[i] = a
    P = {j: dict(c) for j, c in cols.items()}
    s = 1
    while P and s <= dim:
        nxt: Dict[int, Dict[int, Fraction]] = {}
        for j, col in P.items():
            acc: Dict[int, Fraction] = {}
            for k, a in col.items():
                for i, b in cols.get(k, {}).items():
                    acc[i] = acc.get(i, 0) + a * b
            acc = {i: a for i, a in acc.items() if a}
            if acc:
                nxt[j] = acc
        P = nxt
        s += 1
    return s if not P else dim + 1


def restrict_to_S(res: MonodromyResult, n: int = 3, degree_bound: Optional[int] = None) -> Dict[str, object]:
    """Kernel of beta + d/dx on V (x) Q[x], V the dual of the degree-n piece.

    Polynomials are truncated at ``degree_bound`` (default: nilpotency index
    of beta plus its coefficient degree plus one); surjectivity onto
    V (x) Q[x] in degrees <= bound - index - coefficient degree is asserted.
    """
    Q, deg, dim, M, lengths = beta_matrix(res, n)
    polys = {k: _to_poly(c) for k, c in M.items()}
    polys = {k: p for k, p in polys.items() if p.coeffs}
    cdeg = max((p.degree() for p in polys.values()), default=0)
    if cdeg == 0:
        s = _nilpotency({k: p.coeffs[0] for k, p in polys.items()}, dim)
    else:
        s = dim + 1
    bound = degree_bound if degree_bound is not None else s + cdeg + 1
    width, top = bound + 1, bound + cdeg + 1
    cols = []
    for j in range(dim):
        for e in range(bound + 1):
            col: Dict[int, Fraction] = {}
            if e:
                col[j * top + e - 1] = Fraction(e)
            for (i, jj), p in polys.items():
                if jj != j:
                    continue
                for k, a in enumerate(p.coeffs):
                    if a:
                        key = i * top + e + k
                        col[key] = col.get(key, 0) + a
            cols.append({k: a for k, a in col.items() if a})
    ker, _ = la.sparse_kernel(cols)
    ech = la.SparseEchelon()
    for col in cols:
        ech.add(col)
    low = bound - s - cdeg
    if low < 0:
        raise MonodromyError("degree bound too small for the surjectivity check")
    for i in range(dim):
        for e in range(low + 1):
            if ech.reduce({i * top + e: Fraction(1)}):
                raise MonodromyError("beta + d/dx is not surjective; truncation too small")
    kernel = []
    for z in ker:
        vec = []
        for i in range(dim):
            vec.append(SPoly([z.get(i * width + e, Fraction(0)) for e in range(width)]))
        kernel.append(vec)
    split = len(kernel) == dim and all(p.degree() <= 0 for vec in kernel for p in vec)
    return {
        "dim": dim, "lengths": lengths, "beta": M, "beta_S": polys,
        "kernel": kernel, "kernel_dim": len(kernel), "split": split, "degree_bound": bound,
    }


# ---------------------------------------------------------------------------
# pi_4 of a simply connected package


def _brute_pieces(H: GCAlgebra) -> Dict[str, int]:
    """dim coker(Sym^2 H^2 -> H^4), ker(H^2 (x) H^3 -> H^5), ker q on CoLie^3(H^2[1])."""
    h2, h3, h4, h5 = (H.basis_of_degree(k) for k in (2, 3, 4, 5))
    pairs = [(a, b) for i, a in enumerate(h2) for b in h2[i:]]
    img = [[H.mul_basis(a, b).get(c, Fraction(0)) for c in h4] for a, b in pairs]
    C = len(h4) - (la.rank(img) if img and h4 else 0)
    m23 = [[H.mul_basis(a, b).get(c, Fraction(0)) for c in h5] for a in h2 for b in h3]
    L = len(h2) * len(h3) - (la.rank(m23) if m23 and h5 else 0)
    # CoLie^3 of odd letters: T^3 modulo shuffles; q(a|b|c) = (ab)|c - a|(bc)
    Qc = HarrisonComplex(GCAlgebra.build(["1"] + [f"g{a}" for a in h2], [0] + [2] * len(h2)), 3, check=False)
    pc3 = Qc.piece(3, 3)
    K = 0
    if pc3.dim:
        pos = {a: k + 1 for k, a in enumerate(h2)}
        inv = {v: a for a, v in pos.items()}
        pc2 = HarrisonComplex(H, 3, check=False)
        cols = []
        for k in range(pc3.dim):
            w = tuple(inv[g] for g in pc3.basis_word(k))
            cols.append(pc2.project(4, pc2.d_word(w)))
        keys = sorted({key for col in cols for key in col})
        mat = [[col.get(key, Fraction(0)) for col in cols] for key in keys]
        K = pc3.dim - (la.rank(mat) if keys else 0)
    return {"C": C, "L": L, "K": K}


def pi4_structure(P: KahlerPackage, res: Optional[MonodromyResult] = None) -> Dict[str, object]:
    """gr^W of the dual of pi_4 as C + L + K and the map alpha': K -> C(-1)."""
    if not P.is_simply_connected():
        raise MonodromyError("pi_4 structure needs a simply connected package")
    res = res if res is not None and res.n_max >= 3 else monodromy(P, 3)
    Q, deg, dim, M, lengths = beta_matrix(res, 4)
    Cidx = [i for i, L in enumerate(lengths) if L == 1]
    Lidx = [i for i, L in enumerate(lengths) if L == 2]
    Kidx = [i for i, L in enumerate(lengths) if L == 3]
    brute = _brute_pieces(res._ring)
    alpha_prime = [[M.get((i, j), ZERO) for j in Kidx] for i in Cidx]
    stray = [(i, j) for (i, j) in M if not (i in Cidx and j in Kidx)]
    if stray:
        raise MonodromyError("beta on pi_4 is not concentrated on K -> C")
    pres = []
    x = SPoly.x()
    for j in range(len(Kidx)):
        vec = [SPoly([]) for _ in range(dim)]
        vec[Kidx[j]] = SPoly([Fraction(1)])
        for r, i in enumerate(Cidx):
            p = _to_poly(alpha_prime[r][j])
            vec[i] = vec[i] - x * p
        pres.append(vec)
    return {
        "C": len(Cidx), "L": len(Lidx), "K": len(Kidx), "dim": dim,
        "brute": brute, "alpha_prime": alpha_prime,
        "alpha_prime_nonzero": any(c for row in alpha_prime for c in row),
        "presentation_K": pres, "C_index": Cidx, "L_index": Lidx, "K_index": Kidx,
        "split": not any(c for row in alpha_prime for c in row),
    }
