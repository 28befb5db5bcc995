"""Bar construction modulo shuffles (the Harrison complex) and homotopy groups.

Words are tuples of basis indices of the augmentation ideal.  A word
(a_1, ..., a_L) stands for s a_1 | ... | s a_L with |s a| = |a| - 1.  The
cochain complex Q = bar(A) / shuffles is graded by total shifted degree and
filtered by word length; the cohomology in degree n - 1 is dual to pi_n.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .. import linalg as la
from .algebra import AlgebraError, GCAlgebra, Vec, cohomology_ring, vadd

Word = Tuple[int, ...]
Tensor = Dict[Word, Fraction]


def _tadd(acc: Tensor, w: Word, c) -> None:
    x = acc.get(w, 0) + c
    if x:
        acc[w] = x
    else:
        acc.pop(w, None)


def shuffle(A: GCAlgebra, u: Word, v: Word) -> Tensor:
    """Signed shuffle product of two words (Koszul signs on shifted degrees)."""
    sd = lambda w: sum(A.degrees[a] - 1 for a in w)
    memo: Dict[Tuple[Word, Word], Tensor] = {}

    def go(x: Word, y: Word) -> Tensor:
        if not x:
            return {y: Fraction(1)}
        if not y:
            return {x: Fraction(1)}
        key = (x, y)
        if key in memo:
            return memo[key]
        out: Tensor = {}
        for w, c in go(x[1:], y).items():
            _tadd(out, (x[0],) + w, c)
        s = -1 if ((A.degrees[y[0]] - 1) * sd(x)) % 2 else 1
        for w, c in go(x, y[1:]).items():
            _tadd(out, (y[0],) + w, s * c)
        memo[key] = out
        return out

    return go(tuple(u), tuple(v))


@dataclass
class Piece:
    """Words of fixed shifted degree and length, modulo shuffles."""

    degree: int
    length: int
    words: List[Word]
    index: Dict[Word, int]
    relations: la.SparseEchelon
    basis: List[int]
    coord: Dict[int, int]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def project(self, t: Tensor) -> Dict[int, Fraction]:
        v = {self.index[w]: c for w, c in t.items() if c}
        v = self.relations.reduce(v)
        return {self.coord[i]: c for i, c in v.items()}

    def basis_word(self, k: int) -> Word:
        return self.words[self.basis[k]]


@dataclass
class Cohomology:
    degree: int
    reps: List[Dict[Tuple[int, int], Fraction]]
    boundaries: la.TrackedEchelon
    layout: Dict[int, int]
    bvecs: List[Dict[int, Fraction]] = field(default_factory=list)
    weights: Optional[List[int]] = None


class HarrisonComplex:
    """Q(A) = bar(A)/shuffles truncated at word length ``max_length``."""

    def __init__(self, A: GCAlgebra, max_length: int, check: bool = True):
        if not A.is_connected():
            raise AlgebraError("bar construction needs a connected algebra")
        if max_length < 1:
            raise AlgebraError("word-length truncation must be at least 1")
        self.A = A
        self.N = max_length
        self.check = check
        self.gens = [i for i in range(A.dim) if i != A.unit]
        self.sdeg = {i: A.degrees[i] - 1 for i in self.gens}
        self._pieces: Dict[Tuple[int, int], Piece] = {}
        self._coh: Dict[int, Cohomology] = {}

    # --- words and pieces ----------------------------------------------------

    def _words(self, degree: int, length: int) -> List[Word]:
        out: List[Word] = []
        by_deg: Dict[int, List[int]] = {}
        for g in self.gens:
            by_deg.setdefault(self.sdeg[g], []).append(g)
        lo = min(by_deg) if by_deg else 0

        def rec(prefix, remaining, left):
            if left == 0:
                if remaining == 0:
                    out.append(tuple(prefix))
                return
            for dg in sorted(by_deg):
                if remaining - dg < lo * (left - 1):
                    continue
                for g in by_deg[dg]:
                    prefix.append(g)
                    rec(prefix, remaining - dg, left - 1)
                    prefix.pop()

        if by_deg and lo >= 0:
            rec([], degree, length)
        return sorted(out)

    def piece(self, degree: int, length: int) -> Piece:
        key = (degree, length)
        if key in self._pieces:
            return self._pieces[key]
        words = self._words(degree, length) if 1 <= length <= self.N else []
        index = {w: i for i, w in enumerate(words)}
        ech = la.SparseEchelon()
        for p in range(1, length // 2 + 1):
            for u in self._words_any_degree(p, degree):
                du = sum(self.sdeg[a] for a in u)
                for v in self._words(degree - du, length - p):
                    rel = shuffle(self.A, u, v)
                    ech.add({index[w]: c for w, c in rel.items()})
        basis = [i for i in range(len(words)) if i not in ech.rows]
        pc = Piece(degree, length, words, index, ech, basis, {b: k for k, b in enumerate(basis)})
        self._pieces[key] = pc
        return pc

    def _words_any_degree(self, length: int, max_degree: int) -> List[Word]:
        lo = min(self.sdeg.values()) if self.sdeg else 0
        out: List[Word] = []
        for dgr in range(lo * length, max_degree + 1):
            out += self._words(dgr, length)
        return out

    def lengths(self, degree: int) -> List[int]:
        return [L for L in range(1, self.N + 1) if self.piece(degree, L).dim]

    # --- differential --------------------------------------------------------

    def d_word(self, w: Word) -> Tensor:
        A = self.A
        out: Tensor = {}
        eps = 0
        for i, a in enumerate(w):
            s = -1 if eps % 2 else 1
            for k, c in A.d.get(a, {}).items():
                _tadd(out, w[:i] + (k,) + w[i + 1:], -s * c)
            if i + 1 < len(w):
                s2 = s * (-1 if self.sdeg[a] % 2 else 1)
                for k, c in A.product.get((a, w[i + 1]), {}).items():
                    if k == A.unit:
                        continue
                    _tadd(out, w[:i] + (k,) + w[i + 2:], s2 * c)
            eps += self.sdeg[a]
        return out

    def project(self, degree: int, t: Tensor) -> Dict[Tuple[int, int], Fraction]:
        """Coordinates (length, basis position) of a tensor of the given degree."""
        by_len: Dict[int, Tensor] = {}
        for w, c in t.items():
            by_len.setdefault(len(w), {})[w] = c
        out = {}
        for L, tt in by_len.items():
            if L > self.N:
                continue
            for k, c in self.piece(degree, L).project(tt).items():
                out[(L, k)] = c
        return out

    def lift(self, degree: int, v: Dict[Tuple[int, int], Fraction]) -> Tensor:
        t: Tensor = {}
        for (L, k), c in v.items():
            t[self.piece(degree, L).basis_word(k)] = c
        return t

    def differential_column(self, degree: int, L: int, k: int) -> Dict[Tuple[int, int], Fraction]:
        return self.project(degree + 1, self.d_word(self.piece(degree, L).basis_word(k)))

    def check_well_defined(self, degree: int, L: int) -> bool:
        """D sends shuffle relations to shuffle relations."""
        pc = self.piece(degree, L)
        for row in pc.relations.rows.values():
            t: Tensor = {}
            for i, c in row.items():
                for w, a in self.d_word(pc.words[i]).items():
                    _tadd(t, w, a * c)
            if self.project(degree + 1, t):
                return False
        return True

    # --- cohomology ----------------------------------------------------------

    def _layout(self, degree: int) -> Dict[Tuple[int, int], int]:
        lay = {}
        n = 0
        for L in range(1, self.N + 1):
            for k in range(self.piece(degree, L).dim):
                lay[(L, k)] = n
                n += 1
        return lay

    def cohomology(self, degree: int) -> Cohomology:
        if degree in self._coh:
            return self._coh[degree]
        lay = self._layout(degree)
        src = sorted(lay, key=lay.get)
        cols = [self.differential_column(degree, L, k) for (L, k) in src]
        lay_next = self._layout_bounded(degree + 1, max((L for L, _ in src), default=0))
        kernel, _ = la.sparse_kernel([{lay_next[key]: c for key, c in col.items()} for col in cols])
        bnd = la.TrackedEchelon()
        prev = self._layout(degree - 1) if degree - 1 >= self._min_degree() else {}
        prev_cols = []
        bvecs = []
        for n, (L, k) in enumerate(sorted(prev, key=prev.get)):
            col = self.differential_column(degree - 1, L, k)
            prev_cols.append(col)
            if bnd.add({lay[key]: c for key, c in col.items()}, -1 - n):
                bvecs.append({lay[key]: c for key, c in col.items()})
        if self.check:
            for col in prev_cols:
                img = self.project(degree + 1, self._apply_d(degree, col))
                if img:
                    raise AlgebraError(f"D^2 != 0 in degree {degree - 1}")
            for L in range(1, self.N + 1):
                if self.piece(degree, L).dim and not self.check_well_defined(degree, L):
                    raise AlgebraError("differential does not preserve the shuffle relations")
        reps = []
        for z in kernel:
            vec = {lay[src[j]]: c for j, c in z.items()}
            if bnd.add(vec, len(reps)):
                reps.append({src[j]: c for j, c in z.items()})
        co = Cohomology(degree, reps, bnd, lay, bvecs)
        if self.A.is_formal_zero_d():
            co.weights = [self._weight_of(degree, r) for r in reps]
        self._coh[degree] = co
        return co

    def _layout_bounded(self, degree: int, max_len: int) -> Dict[Tuple[int, int], int]:
        lay = {}
        n = 0
        for L in range(1, min(max_len, self.N) + 1):
            for k in range(self.piece(degree, L).dim):
                lay[(L, k)] = n
                n += 1
        return lay

    def _min_degree(self) -> int:
        return min(self.sdeg.values()) if self.sdeg else 0

    def _apply_d(self, degree: int, v: Dict[Tuple[int, int], Fraction]) -> Tensor:
        out: Tensor = {}
        for w, c in self.lift(degree, v).items():
            for ww, a in self.d_word(w).items():
                _tadd(out, ww, a * c)
        return out

    def _weight_of(self, degree: int, v) -> int:
        ws = {sum(self.A.degrees[a] for a in self.piece(degree, L).basis_word(k)) for (L, k) in v}
        if len(ws) != 1:
            raise AlgebraError("cohomology class is not weight-homogeneous")
        return ws.pop()

    def class_coords(self, degree: int, v: Dict[Tuple[int, int], Fraction]) -> Dict[int, Fraction]:
        """Coordinates of a cocycle in the chosen basis of H^degree."""
        co = self.cohomology(degree)
        e = co.boundaries.express({co.layout[k]: c for k, c in v.items()})
        if e is None:
            raise AlgebraError("not a cocycle")
        return {t: c for t, c in e.items() if t >= 0}

    def theta_on_cohomology(self, degree: int) -> List[List[Fraction]]:
        """Matrix of the Weil operator (a derivation on words) on H^degree."""
        th = self.A.theta()
        co = self.cohomology(degree)
        n = len(co.reps)
        M = la.zeros(n, n)
        for j, r in enumerate(co.reps):
            t: Tensor = {}
            for w, c in self.lift(degree, r).items():
                for i, a in enumerate(w):
                    for b, x in th.get(a, {}).items():
                        _tadd(t, w[:i] + (b,) + w[i + 1:], c * x)
            for i, c in self.class_coords(degree, self.project(degree, t)).items():
                M[i][j] = c
        return M


# --- public operations ---------------------------------------------------------


def colie_dims(degrees: Sequence[int], n: int) -> Dict[int, int]:
    """Dimensions of CoLie^n of a graded space whose basis has the given
    (already shifted) degrees, split by total degree."""
    labels = ["1"] + [f"g{i}" for i in range(len(degrees))]
    A = GCAlgebra.build(labels, [0] + [d + 1 for d in degrees])
    Q = HarrisonComplex(A, n, check=False)
    lo, hi = min(degrees) * n, max(degrees) * n
    return {t: Q.piece(t, n).dim for t in range(lo, hi + 1) if Q.piece(t, n).dim}


def colie_basis(degrees: Sequence[int], n: int) -> Dict[int, List[Word]]:
    """Word representatives (0-based generator indices) of a CoLie^n basis."""
    labels = ["1"] + [f"g{i}" for i in range(len(degrees))]
    A = GCAlgebra.build(labels, [0] + [d + 1 for d in degrees])
    Q = HarrisonComplex(A, n, check=False)
    out = {}
    for t in range(min(degrees) * n, max(degrees) * n + 1):
        pc = Q.piece(t, n)
        if pc.dim:
            out[t] = [tuple(a - 1 for a in pc.basis_word(k)) for k in range(pc.dim)]
    return out


def bar_construction(A: GCAlgebra, N: int, max_degree: Optional[int] = None) -> HarrisonComplex:
    """Harrison complex with D^2 = 0 and shuffle compatibility asserted."""
    Q = HarrisonComplex(A, N)
    top = max_degree if max_degree is not None else N
    for deg in range(Q._min_degree(), top + 1):
        Q.cohomology(deg)
    return Q


def _hodge_from_theta(T: List[List[Fraction]], weight: int) -> Dict[Tuple[int, int], int]:
    n = len(T)
    out: Dict[Tuple[int, int], int] = {}
    if not n:
        return out
    T2 = la.matmul(T, T)
    for m in range(weight % 2, weight + 1, 2):
        if m == 0:
            k = n - la.rank(T)
            if k:
                out[(weight // 2, weight // 2)] = k
        else:
            M = la.madd(T2, la.mscale(la.identity(n), m * m))
            k = (n - la.rank(M)) // 2
            if k:
                p, q = (weight + m) // 2, (weight - m) // 2
                out[(p, q)] = k
                out[(q, p)] = k
    return out


def _hodge_grading(Q: HarrisonComplex, degree: int) -> Dict[Tuple[int, int], int]:
    co = Q.cohomology(degree)
    T = Q.theta_on_cohomology(degree)
    out: Dict[Tuple[int, int], int] = {}
    for w in sorted(set(co.weights or [])):
        idx = [i for i, x in enumerate(co.weights) if x == w]
        sub = [[T[i][j] for j in idx] for i in idx]
        for key, val in _hodge_from_theta(sub, w).items():
            out[key] = out.get(key, 0) + val
    return out


def homotopy_groups(A: GCAlgebra, n_max: int, N: Optional[int] = None) -> Dict[int, dict]:
    """pi_n for 2 <= n <= n_max of a simply connected algebra.

    Each entry has the dimension and, for d = 0, the weight grading of the
    dual (weight = sum of cohomological degrees) and, when typed, the Hodge
    numbers.
    """
    if not A.is_simply_connected():
        raise AlgebraError("homotopy groups need a simply connected algebra (A^1 = 0)")
    N = max(N or 0, n_max + 1)
    Q = HarrisonComplex(A, N)
    out = {}
    for n in range(2, n_max + 1):
        co = Q.cohomology(n - 1)
        entry = {"dim": len(co.reps)}
        if co.weights is not None:
            wts: Dict[int, int] = {}
            for w in co.weights:
                wts[w] = wts.get(w, 0) + 1
            entry["weights"] = dict(sorted(wts.items()))
            if A.has_types:
                entry["hodge"] = dict(sorted(_hodge_grading(Q, n - 1).items()))
        out[n] = entry
    # shifted degrees are >= 1, so a word of degree <= n_max has length <= n_max < N
    stable = Q._min_degree() >= 1 and N > n_max
    for e in out.values():
        e["stable"] = stable
    return out


def _sym2_kernel(H: GCAlgebra) -> Tuple[List[Dict[Tuple[int, int], Fraction]], List[int]]:
    """ker(Sym^2 H^2 -> H^4) with basis monomials (i, j), i <= j."""
    h2 = H.basis_of_degree(2)
    pairs = [(a, b) for x, a in enumerate(h2) for b in h2[x:]]
    cols = []
    for a, b in pairs:
        cols.append(dict(H.mul_basis(a, b)))
    ker, _ = la.sparse_kernel(cols)
    return [{pairs[j]: c for j, c in z.items()} for z in ker], h2


def pi3_formula(A: GCAlgebra) -> dict:
    """H^3 plus ker(Sym^2 H^2 -> H^4), with weights 3 and 4 and Hodge numbers."""
    if not A.is_simply_connected():
        raise AlgebraError("pi_3 formula needs a simply connected algebra")
    H, _ = cohomology_ring(A)
    h3 = H.basis_of_degree(3)
    ker, h2 = _sym2_kernel(H)
    out = {"dim": len(h3) + len(ker), "H3": len(h3), "sym2_kernel": len(ker),
           "weights": {k: v for k, v in ((3, len(h3)), (4, len(ker))) if v}}
    if H.has_types:
        th = H.theta()
        hod: Dict[Tuple[int, int], int] = {}
        T3 = _restrict_theta(th, h3)
        for key, val in _hodge_from_theta(T3, 3).items():
            hod[key] = hod.get(key, 0) + val
        # theta on Sym^2 acts by the Leibniz rule on the monomials a*b
        pairs = sorted({p for z in ker for p in z} | {(a, b) for i, a in enumerate(h2) for b in h2[i:]})
        pidx = {p: i for i, p in enumerate(pairs)}

        def th_pair(a, b):
            v: Dict[int, Fraction] = {}
            for x, c in th.get(a, {}).items():
                key = (min(x, b), max(x, b))
                v[pidx[key]] = v.get(pidx[key], 0) + c
            for x, c in th.get(b, {}).items():
                key = (min(a, x), max(a, x))
                v[pidx[key]] = v.get(pidx[key], 0) + c
            return v

        basis = [{pidx[p]: c for p, c in z.items()} for z in ker]
        ech = la.TrackedEchelon()
        for i, z in enumerate(basis):
            ech.add(z, i)
        T = la.zeros(len(basis), len(basis))
        for j, z in enumerate(basis):
            img: Dict[int, Fraction] = {}
            for i, c in z.items():
                for k, x in th_pair(*pairs[i]).items():
                    img[k] = img.get(k, 0) + c * x
            e = ech.express({k: c for k, c in img.items() if c})
            if e is None:
                raise AlgebraError("Weil operator does not preserve the cup-product kernel")
            for i, c in e.items():
                T[i][j] = c
        for key, val in _hodge_from_theta(T, 4).items():
            hod[key] = hod.get(key, 0) + val
        out["hodge"] = dict(sorted(hod.items()))
    return out


def _restrict_theta(th: Dict[int, Vec], idx: List[int]) -> List[List[Fraction]]:
    pos = {b: r for r, b in enumerate(idx)}
    T = la.zeros(len(idx), len(idx))
    for b in idx:
        for t, a in th.get(b, {}).items():
            T[pos[t]][pos[b]] = a
    return T


# --- brackets and Hurewicz -------------------------------------------------------


class HomotopyLie:
    """pi_* as the dual of H(Q): classes are coordinate vectors over H^{n-1}.

    A class of pi_n is a functional on Q^{n-1}; it is taken to vanish on the
    coboundaries and on the non-chosen part of a complement of the cocycles.
    """

    def __init__(self, Q: HarrisonComplex):
        self.Q = Q
        self._func: Dict[int, List[Dict[int, Fraction]]] = {}

    def dim(self, n: int) -> int:
        return len(self.Q.cohomology(n - 1).reps)

    def _functionals(self, degree: int) -> List[Dict[int, Fraction]]:
        """Rows f_t on Q^degree coordinates with f_t(rep_s) = delta, f_t(B) = 0."""
        if degree in self._func:
            return self._func[degree]
        co = self.Q.cohomology(degree)
        lay = co.layout
        size = len(lay)
        B = co.bvecs
        reps = [{lay[k]: c for k, c in r.items()} for r in co.reps]
        # complete B + reps to a basis, then invert
        ech = la.SparseEchelon()
        for v in B + reps:
            ech.add(v)
        extra = [{c: Fraction(1)} for c in range(size) if ech.add({c: Fraction(1)})]
        vecs = [_dense(v, size) for v in B + reps + extra]
        inv = la.inverse(la.transpose(vecs))
        off = len(B)
        out = [la.dense_to_sparse(inv[off + t]) for t in range(len(reps))]
        self._func[degree] = out
        return out

    def functional(self, n: int, xi: Sequence) -> Dict[int, Fraction]:
        rows = self._functionals(n - 1)
        out: Dict[int, Fraction] = {}
        for c, row in zip(xi, rows):
            if c:
                for k, a in row.items():
                    out[k] = out.get(k, 0) + Fraction(c) * a
        return out

    def _eval(self, degree: int, f: Dict[int, Fraction], w: Word) -> Fraction:
        if not f:
            return Fraction(0)
        lay = self.Q.cohomology(degree).layout
        v = self.Q.project(degree, {w: Fraction(1)})
        return sum((f.get(lay[k], 0) * c for k, c in v.items()), Fraction(0))

    def bracket(self, m: int, xi: Sequence, n: int, eta: Sequence) -> List[Fraction]:
        """[xi, eta] in pi_{m+n-1}, graded antisymmetric in Lie degrees m-1, n-1."""
        k, l = m - 1, n - 1
        target = k + l
        fx, fe = self.functional(m, xi), self.functional(n, eta)
        co = self.Q.cohomology(target)
        sign = -1 if (k * l) % 2 else 1
        out = []
        for r in co.reps:
            total = Fraction(0)
            for w, c in self.Q.lift(target, r).items():
                for i in range(1, len(w)):
                    w1, w2 = w[:i], w[i:]
                    d1 = sum(self.Q.sdeg[a] for a in w1)
                    if d1 == k:
                        total += c * self._eval(k, fx, w1) * self._eval(l, fe, w2)
                    if d1 == l:
                        total -= sign * c * self._eval(l, fe, w1) * self._eval(k, fx, w2)
            out.append(total)
        return out

    def hurewicz(self, n: int, xi: Sequence) -> List[Fraction]:
        """Values of xi on s(a) for the cohomology basis a of H^n(A)."""
        H, reps = cohomology_ring(self.Q.A)
        f = self.functional(n, xi)
        out = []
        for a in reps.get(n, []):
            t = {(i,): c for i, c in a.items()}
            lay = self.Q.cohomology(n - 1).layout
            v = self.Q.project(n - 1, t)
            out.append(sum((f.get(lay[k], 0) * c for k, c in v.items()), Fraction(0)))
        return out


def _dense(v: Dict[int, Fraction], n: int) -> List[Fraction]:
    out = [Fraction(0)] * n
    for k, a in v.items():
        out[k] = a
    return out
