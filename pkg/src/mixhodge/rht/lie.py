"""Nilpotent dg Lie algebras, Maurer-Cartan elements and the gauge action.

Degrees are homological: d has degree -1, Maurer-Cartan elements have
degree -1 and gauge parameters degree 0.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import AlgebraError, GCAlgebra, Vec, cohomology_dims, vadd, vscale
from .bar import HarrisonComplex

Key = Tuple[int, int]


@dataclass
class NilpotentDGLA:
    labels: List[str]
    degrees: List[int]
    bracket_table: Dict[Key, Vec] = field(default_factory=dict)
    d: Dict[int, Vec] = field(default_factory=dict)
    nil_class: Optional[int] = None

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def bracket(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                v = self.bracket_table.get((i, j))
                if v:
                    vadd(out, v, a * b)
        return out

    def dvec(self, x: Vec) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            v = self.d.get(i)
            if v:
                vadd(out, v, a)
        return out

    def deg_of(self, x: Vec) -> int:
        ds = {self.degrees[i] for i in x}
        if len(ds) > 1:
            raise AlgebraError("inhomogeneous element")
        return ds.pop() if ds else 0

    def basis_of_degree(self, k: int) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d == k]

    def lower_central_class(self) -> int:
        """Smallest c with [g]_{c+1} = 0 (brackets of c+1 elements vanish)."""
        layer = [{i: Fraction(1)} for i in range(self.dim)]
        c = 0
        while layer:
            c += 1
            nxt = []
            for x in layer:
                for j in range(self.dim):
                    v = self.bracket({j: Fraction(1)}, x)
                    if v:
                        nxt.append(v)
            layer = _independent(nxt)
            if c > self.dim + 1:
                raise AlgebraError("not nilpotent")
        return c

    def validate(self) -> List[str]:
        errs = []
        n = self.dim
        e = lambda i: {i: Fraction(1)}
        sg = lambda a, b: -1 if (a * b) % 2 else 1
        for (i, j), v in self.bracket_table.items():
            if any(self.degrees[k] != self.degrees[i] + self.degrees[j] for k in v):
                errs.append(f"bracket [{self.labels[i]},{self.labels[j]}] has the wrong degree")
        for i, v in self.d.items():
            if any(self.degrees[k] != self.degrees[i] - 1 for k in v):
                errs.append(f"d({self.labels[i]}) has the wrong degree")
        for i in range(n):
            for j in range(n):
                if self.bracket(e(i), e(j)) != vscale(self.bracket(e(j), e(i)), -sg(self.degrees[i], self.degrees[j])):
                    errs.append(f"antisymmetry fails for ({self.labels[i]}, {self.labels[j]})")
        # a Jacobi triple can only fail if one of its three pairs brackets nontrivially
        triples = set()
        for (a, b) in self.bracket_table:
            for c in range(n):
                triples.update({(c, a, b), (a, c, b), (a, b, c)})
        for (i, j, k) in sorted(triples):
            di, dj = self.degrees[i], self.degrees[j]
            lhs = self.bracket(e(i), self.bracket(e(j), e(k)))
            rhs = vadd(self.bracket(self.bracket(e(i), e(j)), e(k)),
                       self.bracket(e(j), self.bracket(e(i), e(k))), sg(di, dj))
            if lhs != rhs:
                errs.append(f"Jacobi fails for ({i},{j},{k})")
        for i in range(n):
            if self.dvec(self.dvec(e(i))):
                errs.append(f"d^2 != 0 on {self.labels[i]}")
            for j in range(n):
                lhs = self.dvec(self.bracket(e(i), e(j)))
                rhs = vadd(self.bracket(self.dvec(e(i)), e(j)), self.bracket(e(i), self.dvec(e(j))),
                           sg(self.degrees[i], 1))
                if lhs != rhs:
                    errs.append(f"d is not a derivation on ({self.labels[i]}, {self.labels[j]})")
        if self.nil_class is not None and not errs:
            if self.lower_central_class() > self.nil_class:
                errs.append(f"nilpotency class exceeds {self.nil_class}")
        return errs

    # --- Maurer-Cartan theory ------------------------------------------------

    def ad_power_series(self, a: Vec, x: Vec, coeffs: Sequence[Fraction]) -> Vec:
        """sum_k coeffs[k] (ad a)^k x."""
        out: Vec = {}
        term = dict(x)
        for c in coeffs:
            if not term:
                break
            vadd(out, term, c)
            term = self.bracket(a, term)
        return out

    def _series_len(self) -> int:
        return (self.nil_class or self.dim) + 1


def _independent(vs: List[Vec]) -> List[Vec]:
    from .. import linalg as la
    ech = la.SparseEchelon()
    return [v for v in vs if ech.add(v)]


def _exp_coeffs(n: int) -> List[Fraction]:
    out, f = [], Fraction(1)
    for k in range(n):
        out.append(1 / f)
        f *= k + 1
    return out


def _exp_minus_one_over(n: int) -> List[Fraction]:
    """Coefficients of (e^t - 1)/t."""
    out, f = [], Fraction(1)
    for k in range(n):
        f *= k + 1
        out.append(1 / f)
    return out


def mc_check(L: NilpotentDGLA, w: Vec) -> bool:
    if w and L.deg_of(w) != -1:
        raise AlgebraError("Maurer-Cartan elements have degree -1")
    lhs = L.dvec(w)
    vadd(lhs, L.bracket(w, w), Fraction(1, 2))
    return not lhs


def gauge_act(L: NilpotentDGLA, a: Vec, w: Vec, check: bool = True) -> Vec:
    """exp(a) . w = e^{ad a} w - ((e^{ad a} - 1)/ad a)(da)."""
    if a and L.deg_of(a) != 0:
        raise AlgebraError("gauge parameters have degree 0")
    if check and not mc_check(L, w):
        raise AlgebraError("gauge action needs a Maurer-Cartan element")
    n = L._series_len()
    out = L.ad_power_series(a, w, _exp_coeffs(n))
    vadd(out, L.ad_power_series(a, L.dvec(a), _exp_minus_one_over(n)), -1)
    return out


def bch(L: NilpotentDGLA, a: Vec, b: Vec) -> Vec:
    """log(e^a e^b) through brackets of three elements."""
    if L.nil_class is None or L.nil_class > 3:
        raise AlgebraError("BCH is truncated at class 3")
    ab = L.bracket(a, b)
    out: Vec = {}
    vadd(out, a)
    vadd(out, b)
    vadd(out, ab, Fraction(1, 2))
    vadd(out, L.bracket(a, ab), Fraction(1, 12))
    vadd(out, L.bracket(b, ab), Fraction(-1, 12))
    return out


# --- tensor with a CDGA -----------------------------------------------------------


def tensor_dgla(g: NilpotentDGLA, A: GCAlgebra) -> NilpotentDGLA:
    """g (x) A with homological degree h - deg_A.

    [x(a), y(b)] = (-1)^{|a||y|} [x,y](ab) and d(x(a)) = dx(a) + (-1)^{|x|} x(da).
    """
    pairs = [(i, j) for i in range(g.dim) for j in range(A.dim)]
    idx = {p: k for k, p in enumerate(pairs)}
    labels = [f"{g.labels[i]}*{A.labels[j]}" for i, j in pairs]
    degrees = [g.degrees[i] - A.degrees[j] for i, j in pairs]
    table: Dict[Key, Vec] = {}
    for (i, a) in pairs:
        for (j, b) in pairs:
            gb = g.bracket_table.get((i, j))
            ab = A.mul_basis(a, b)
            if not gb or not ab:
                continue
            s = -1 if (A.degrees[a] * g.degrees[j]) % 2 else 1
            v: Vec = {}
            for k, c in gb.items():
                for l, e in ab.items():
                    vadd(v, {idx[(k, l)]: s * c * e})
            if v:
                table[(idx[(i, a)], idx[(j, b)])] = v
    d: Dict[int, Vec] = {}
    for (i, a) in pairs:
        v: Vec = {}
        for k, c in g.d.get(i, {}).items():
            vadd(v, {idx[(k, a)]: c})
        s = -1 if g.degrees[i] % 2 else 1
        for l, c in A.d.get(a, {}).items():
            vadd(v, {idx[(i, l)]: s * c})
        if v:
            d[idx[(i, a)]] = v
    return NilpotentDGLA(labels, degrees, table, d, g.nil_class)


# --- random class-3 instances ---------------------------------------------------


def upper_triangular_dgla(space_degrees: Sequence[int], delta: Dict[Tuple[int, int], Fraction]) -> NilpotentDGLA:
    """Strictly upper triangular endomorphisms of a graded complex (V, delta).

    V has cohomological degrees ``space_degrees``; an elementary matrix
    E_{rc} has homological degree deg(c) - deg(r).  The bracket is the graded
    commutator and d = [delta, -].
    """
    n = len(space_degrees)
    ents = [(r, c) for r in range(n) for c in range(r + 1, n)]
    idx = {e: k for k, e in enumerate(ents)}
    degs = [space_degrees[c] - space_degrees[r] for r, c in ents]
    table: Dict[Key, Vec] = {}
    for (r1, c1) in ents:
        for (r2, c2) in ents:
            v: Vec = {}
            if c1 == r2:
                vadd(v, {idx[(r1, c2)]: Fraction(1)})
            if c2 == r1:
                s = -1 if (degs[idx[(r1, c1)]] * degs[idx[(r2, c2)]]) % 2 else 1
                vadd(v, {idx[(r2, c1)]: Fraction(-s)})
            if v:
                table[(idx[(r1, c1)], idx[(r2, c2)])] = v
    g = NilpotentDGLA([f"E{r}{c}" for r, c in ents], degs, table, {}, nil_class=max(n - 1, 1))
    dl = {idx[e]: Fraction(c) for e, c in delta.items() if c}
    d: Dict[int, Vec] = {}
    for k in range(len(ents)):
        v = g.bracket(dl, {k: Fraction(1)})
        if v:
            d[k] = v
    g.d = d
    return g


def _mat(n, entries):
    M = [[Fraction(0)] * n for _ in range(n)]
    for (r, c), a in entries.items():
        M[r][c] = a
    return M


def _square_zero(n, entries) -> bool:
    M = _mat(n, entries)
    return all(not sum(M[r][k] * M[k][c] for k in range(n)) for r in range(n) for c in range(n))


def polynomial_forms() -> GCAlgebra:
    """Q[t]/t^3 with dt, t dt; a non-connected CDGA with d t^k = k t^{k-1} dt."""
    return GCAlgebra.build(["1", "t", "t2", "dt", "tdt"], [0, 0, 0, 1, 1],
                           [(1, 1, 2, 1), (1, 3, 4, 1)], d=[(1, 3, 1), (2, 4, 2)])


def exterior_one() -> GCAlgebra:
    return GCAlgebra.build(["1", "e"], [0, 1])


def random_instance(rng: random.Random, coefficients: Optional[str] = None):
    """A class-3 nilpotent DGLA L with a Maurer-Cartan element.

    L is built from 4x4 strictly upper triangular endomorphisms of a random
    graded complex (V, delta), tensored with Q, Q[e]/e^2 or polynomial forms
    on an interval.  The Maurer-Cartan element is D' - delta for a random
    square-zero D', moved by a random gauge transformation.
    """
    n = 4
    if rng.random() < 0.3:
        sd = [0] * n
    else:
        sd = [rng.choice([0, 0, 1, 1, 2]) for _ in range(n)]
    slots = [(r, c) for r in range(n) for c in range(r + 1, n) if sd[r] == sd[c] + 1]

    def square_zero_random(k):
        m: Dict[Tuple[int, int], Fraction] = {}
        for _ in range(k if slots else 0):
            cand = dict(m)
            cand[rng.choice(slots)] = Fraction(rng.randint(-3, 3))
            if _square_zero(n, cand):
                m = cand
        return m

    delta = square_zero_random(4)
    g = upper_triangular_dgla(sd, delta)
    coefficients = coefficients or rng.choice(["rational", "exterior", "forms"])
    A = {"rational": None, "exterior": exterior_one, "forms": polynomial_forms}[coefficients]
    L = tensor_dgla(g, A()) if A else g
    L.nil_class = 3
    width = L.dim // g.dim
    ents = [(r, c) for r in range(n) for c in range(r + 1, n)]
    gi = {e: k for k, e in enumerate(ents)}
    seed = square_zero_random(6)
    w: Vec = {}
    for e in set(seed) | set(delta):
        val = seed.get(e, 0) - delta.get(e, 0)
        if val:
            w[gi[e] * width] = Fraction(val)
    w = gauge_act(L, random_element(rng, L, 0, 0.4), w)
    return L, w


def random_element(rng: random.Random, L: NilpotentDGLA, degree: int, density: float = 0.6) -> Vec:
    return {i: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for i in L.basis_of_degree(degree)
            if rng.random() < density and rng.randint(-3, 3)}


# --- Chevalley-Eilenberg and the dual of the bar construction -------------------


def chevalley_eilenberg(g: NilpotentDGLA, max_degree: int) -> GCAlgebra:
    """Sym(g^dual[-1]) truncated above ``max_degree``.

    The cogenerator y_i dual to a basis element of homological degree h has
    degree h + 1.  d y_k = -sum_i c^k_i y_i - 1/2 sum_{i,j} b^k_{ij} y_i y_j
    where d e_i = sum c^k_i e_k and [e_i, e_j] = sum b^k_{ij} e_k, up to the
    Koszul sign (-1)^{|y_i|} on the quadratic part.  d^2 = 0 is asserted.
    """
    gd = [h + 1 for h in g.degrees]
    if any(x < 1 for x in gd):
        raise AlgebraError("cogenerators must have positive degree")
    monos = _free_monomials(gd, max_degree)
    index = {m: k for k, m in enumerate(monos)}
    labels = ["1" if not m else "*".join(f"y{i}" for i in m) for m in monos]
    degrees = [sum(gd[i] for i in m) for m in monos]
    prods = []
    for a in monos:
        if not a:
            continue
        for b in monos:
            if not b or degrees[index[a]] + degrees[index[b]] > max_degree:
                continue
            s, m = _mono_mul(gd, a, b)
            if s:
                prods.append((index[a], index[b], index[m], s))
    dgen: Dict[int, Vec] = {}
    for k in range(g.dim):
        dgen[k] = {}
    for i, v in g.d.items():
        if gd[i] > max_degree:
            continue
        for k, c in v.items():
            vadd(dgen[k], {index[(i,)]: -c})
    for (i, j), v in g.bracket_table.items():
        if gd[i] + gd[j] > max_degree:
            continue
        s, m = _mono_mul(gd, (i,), (j,))
        if not s:
            continue
        sign = -1 if gd[i] % 2 else 1
        for k, c in v.items():
            vadd(dgen[k], {index[m]: Fraction(-1, 2) * sign * s * c})
    A = GCAlgebra.build(labels, degrees, prods, unit=0, symmetric=False)
    dd: Dict[int, Vec] = {}
    for m in monos:
        if not m:
            continue
        v = _leibniz(A, gd, index, dgen, m, max_degree)
        if v:
            dd[index[m]] = v
    A.d = dd
    for k in range(len(monos)):
        if A.dvec(A.dvec({k: Fraction(1)})):
            raise AlgebraError("Chevalley-Eilenberg differential does not square to zero")
    return A


def _free_monomials(gd: Sequence[int], max_degree: int) -> List[Tuple[int, ...]]:
    out = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for m in frontier:
            start = m[-1] if m else 0
            for i in range(start, len(gd)):
                if m and i == m[-1] and gd[i] % 2:
                    continue
                deg = sum(gd[j] for j in m) + gd[i]
                if deg <= max_degree:
                    nxt.append(m + (i,))
        out += nxt
        frontier = nxt
    return sorted(out, key=lambda m: (sum(gd[j] for j in m), m))


def _mono_mul(gd, a, b) -> Tuple[int, Tuple[int, ...]]:
    """Sign and sorted monomial of a*b in the free graded-commutative algebra."""
    seq = list(a) + list(b)
    sign = 1
    # insertion sort, tracking Koszul signs of odd swaps
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            if gd[seq[j - 1]] % 2 and gd[seq[j]] % 2:
                sign = -sign
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            j -= 1
    for x, y in zip(seq, seq[1:]):
        if x == y and gd[x] % 2:
            return 0, ()
    return sign, tuple(seq)


def _leibniz(A, gd, index, dgen, m, max_degree) -> Vec:
    out: Vec = {}
    eps = 0
    for pos, i in enumerate(m):
        left, right = {index[m[:pos]]: Fraction(1)}, {index[m[pos + 1:]]: Fraction(1)}
        s = -1 if eps % 2 else 1
        for t, c in dgen[i].items():
            vadd(out, A.mul(A.mul(left, {t: Fraction(1)}), right), s * c)
        eps += gd[i]
    return out


def dual_lie_algebra(A: GCAlgebra, N: int) -> NilpotentDGLA:
    """G(A) modulo words longer than N: the dual of Q(A) in word length <= N.

    Basis elements dual to Q^k have homological degree k; the bracket is dual
    to the deconcatenation cobracket and d is dual to the Harrison
    differential.  Longer words form a dg ideal, so the quotient is a
    nilpotent DGLA of class <= N.
    """
    if not A.is_simply_connected():
        raise AlgebraError("the truncated dual Lie algebra is built for simply connected algebras")
    Q = HarrisonComplex(A, N)
    top = N * max(Q.sdeg.values(), default=0)
    basis: List[Tuple[int, int, int]] = []
    for deg in range(1, top + 1):
        for L in range(1, N + 1):
            for k in range(Q.piece(deg, L).dim):
                basis.append((deg, L, k))
    pos = {b: i for i, b in enumerate(basis)}
    labels = [f"q{deg}_{L}_{k}" for deg, L, k in basis]
    degrees = [deg for deg, _, _ in basis]
    d: Dict[int, Vec] = {}
    # (d f)(t) = f(D t) for f of degree k and t of degree k - 1
    for (deg, L, k) in basis:
        for (L2, k2), c in Q.differential_column(deg, L, k).items():
            tgt = pos[(deg + 1, L2, k2)]
            vadd(d.setdefault(tgt, {}), {pos[(deg, L, k)]: c})
    # [f, g](t) = sum over splits t = t1|t2 of f(t1) g(t2) - (-1)^{|f||g|} g(t1) f(t2)
    table: Dict[Key, Vec] = {}
    for (deg, L, k) in basis:
        w = Q.piece(deg, L).basis_word(k)
        t = pos[(deg, L, k)]
        for i in range(1, len(w)):
            w1, w2 = w[:i], w[i:]
            d1 = sum(Q.sdeg[a] for a in w1)
            p1 = Q.project(d1, {w1: Fraction(1)})
            p2 = Q.project(deg - d1, {w2: Fraction(1)})
            for (L1, k1), c1 in p1.items():
                for (L2, k2), c2 in p2.items():
                    f, h = pos[(d1, L1, k1)], pos[(deg - d1, L2, k2)]
                    s = -1 if (degrees[f] * degrees[h]) % 2 else 1
                    vadd(table.setdefault((f, h), {}), {t: c1 * c2})
                    vadd(table.setdefault((h, f), {}), {t: -s * c1 * c2})
    table = {k: v for k, v in table.items() if v}
    d = {k: v for k, v in d.items() if v}
    return NilpotentDGLA(labels, degrees, table, d, nil_class=N)


def round_trip(A: GCAlgebra, max_degree: int = 5) -> Dict[str, Dict[int, int]]:
    """Cohomology of W(G(A)) against that of A through ``max_degree``."""
    # in the simply connected case a word of degree <= max_degree has length <= max_degree
    g = dual_lie_algebra(A, max_degree)
    W = chevalley_eilenberg(g, max_degree + 1)
    hw = cohomology_dims(W)
    ha = cohomology_dims(A)
    return {"A": {k: ha.get(k, 0) for k in range(max_degree + 1)},
            "W": {k: hw.get(k, 0) for k in range(max_degree + 1)}}
