"""Coderivations on the tensor coalgebra of A[1] (x) O(SL2).

A tensor is a dict {word: SL2Elem}; a word (i1, ..., im) stands for
s e_i1 | ... | s e_im with |s e| = deg e - 1.  All maps below act on whole
tensors (every word length) and carry a degree, so graded commutators and
composites can be formed exactly as written in the transfer formulas.
Shuffle relations need no special care: every operator used preserves
their span, and the cogenerator (length-one) part of a relation is zero.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import product as iproduct
from typing import Callable, Dict, List, Tuple

from ..scalars import ONE, SL2Elem, n_derive
from .package import KahlerPackage
from .twisted import SOp, TwistedComplex

Word = Tuple[int, ...]
Tensor = Dict[Word, SL2Elem]


def tadd(acc: Tensor, w: Word, c: SL2Elem) -> None:
    if not c:
        return
    if w in acc:
        s = acc[w] + c
        if s:
            acc[w] = s
        else:
            del acc[w]
    else:
        acc[w] = c


def tsum(*ts: Tensor) -> Tensor:
    acc: Tensor = {}
    for t in ts:
        for w, c in t.items():
            tadd(acc, w, c)
    return acc


def tscale(t: Tensor, c) -> Tensor:
    if isinstance(c, SL2Elem):
        return {w: a * c for w, a in t.items() if a * c}
    return {w: a.scale(c) for w, a in t.items()} if c else {}


def length_part(t: Tensor, m: int) -> Tensor:
    return {w: c for w, c in t.items() if len(w) == m}


class Map:
    """A graded linear map on tensors."""

    __slots__ = ("fn", "degree", "name")

    def __init__(self, fn: Callable[[Tensor], Tensor], degree: int, name: str = ""):
        self.fn, self.degree, self.name = fn, degree, name

    def __call__(self, t: Tensor) -> Tensor:
        return self.fn(t) if t else {}

    def __matmul__(self, o: "Map") -> "Map":
        return Map(lambda t: self(o(t)), self.degree + o.degree, f"{self.name}.{o.name}")

    def __add__(self, o: "Map") -> "Map":
        return Map(lambda t: tsum(self(t), o(t)), self.degree)

    def __sub__(self, o: "Map") -> "Map":
        return Map(lambda t: tsum(self(t), tscale(o(t), -1)), self.degree)

    def __neg__(self) -> "Map":
        return Map(lambda t: tscale(self(t), -1), self.degree)

    def bracket(self, o: "Map") -> "Map":
        s = -1 if (self.degree * o.degree) % 2 else 1
        return Map(lambda t: tsum(self(o(t)), tscale(o(self(t)), -s)), self.degree + o.degree,
                   f"[{self.name},{o.name}]")

    def power(self, k: int) -> "Map":
        def fn(t):
            for _ in range(k):
                t = self(t)
            return t
        return Map(fn, self.degree * k)


def series(first: Map, step: Map, last: Map, max_terms: int, sign0: int = 1) -> Map:
    """sum_n sign0 (-1)^n last . step^n . first, truncated (step lowers length)."""
    def fn(t):
        v = first(t)
        acc: Tensor = {}
        s = sign0
        for _ in range(max_terms + 1):
            if not v:
                break
            acc = tsum(acc, tscale(last(v), s))
            v = step(v)
            s = -s
        return acc
    return Map(fn, first.degree + last.degree)


class Calculus:
    """Coderivation toolkit for one package, words of length <= n_max."""

    def __init__(self, P: KahlerPackage, n_max: int):
        self.P = P
        self.n_max = n_max
        self.T = T = TwistedComplex(P)
        self.sdeg = [d - 1 for d in P.degrees]
        n = P.n
        unit = P.A.unit
        x0 = P.x0_vec
        self.x0op = SOp(n, {i: {unit: ONE.scale(a)} for i, a in x0.items()}, 0)
        self.q = Map(self._q, 1, "q")
        self.N = Map(lambda t: {w: n_derive(c) for w, c in t.items() if n_derive(c)}, 0, "N")
        self.Dt = self.coder(T.Dt, "D~")
        self.Dct = self.coder(T.Dct, "D~c")
        self.d_E = self.Dt + self.q
        self.h_i = self.coder(T.h_i, "h_i")
        self.h_p = self.coder(T.h_p, "h_p")
        self.X = self.coder(T.G2DsDcs, "G2D*Dc*")
        self.GL = self.coder(T.GL, "GL")
        self.E_prH = self.factorwise(T.prH)
        self.E_prZ = self.factorwise(T.pr_Z)
        self.E_x0 = self.factorwise(self.x0op)
        self.q_H = self.E_prH @ self.q

    # -- primitive maps --------------------------------------------------
    def _q(self, t: Tensor) -> Tensor:
        A = self.P.A
        sd = self.sdeg
        acc: Tensor = {}
        for w, c in t.items():
            pre = 0
            for k in range(len(w) - 1):
                s = -1 if (pre + sd[w[k]]) % 2 else 1
                for r, a in A.mul_basis(w[k], w[k + 1]).items():
                    tadd(acc, w[:k] + (r,) + w[k + 2:], c.scale(s * a))
                pre += sd[w[k]]
        return acc

    def coder(self, op: SOp, name: str = "") -> Map:
        """Extension of op as a coderivation: f(sa) = (-1)^|f| s f(a), Koszul signs."""
        sd = self.sdeg
        deg = op.degree
        cols = op.cols

        def fn(t: Tensor) -> Tensor:
            acc: Tensor = {}
            for w, c in t.items():
                pre = 0
                for k, letter in enumerate(w):
                    col = cols.get(letter)
                    if col:
                        s = -1 if (deg * (pre + 1)) % 2 else 1
                        for r, a in col.items():
                            tadd(acc, w[:k] + (r,) + w[k + 1:], a * c if s == 1 else -(a * c))
                    pre += sd[letter]
            return acc
        return Map(fn, deg, name)

    def factorwise(self, op: SOp, name: str = "") -> Map:
        """Coalgebra map E(op) for a degree-0 operator."""
        cols = op.cols

        def fn(t: Tensor) -> Tensor:
            acc: Tensor = {}
            for w, c in t.items():
                imgs = [list(cols.get(letter, {}).items()) for letter in w]
                if any(not i for i in imgs):
                    continue
                for combo in iproduct(*imgs):
                    coef = c
                    for _, a in combo:
                        coef = coef * a
                    tadd(acc, tuple(r for r, _ in combo), coef)
            return acc
        return Map(fn, 0, name)

    def position_ops(self, op: SOp) -> List[Map]:
        """op applied at one fixed position (for factorwise membership tests)."""
        out = []
        for pos in range(self.n_max):
            def fn(t, pos=pos):
                acc: Tensor = {}
                for w, c in t.items():
                    if len(w) <= pos:
                        continue
                    for r, a in op.cols.get(w[pos], {}).items():
                        tadd(acc, w[:pos] + (r,) + w[pos + 1:], a * c)
                return acc
            out.append(Map(fn, op.degree))
        return out

    # -- harmonic inputs ---------------------------------------------------
    def harmonic_positive(self) -> List[int]:
        hb = self.P.harmonic_basis
        lead = lambda v: next(i for i, a in enumerate(v) if a)
        return [t for t, v in enumerate(hb) if self.P.degrees[lead(v)] > 0]

    def harmonic_word(self, word: Tuple[int, ...]) -> Tensor:
        """s h_t1 | ... | s h_tm expanded in the basis of A."""
        hb = self.P.harmonic_basis
        acc: Tensor = {}
        vecs = [[(i, a) for i, a in enumerate(hb[t]) if a] for t in word]
        for combo in iproduct(*vecs):
            c = ONE
            for _, a in combo:
                c = c.scale(a)
            tadd(acc, tuple(i for i, _ in combo), c)
        return acc

    @cached_property
    def _harmonic_dual(self) -> Dict[int, List[Tuple[int, Fraction]]]:
        """Basis index -> [(harmonic index, coefficient)] of the orthogonal projection."""
        from .. import linalg as la
        P = self.P
        hb = P.harmonic_basis
        if not hb:
            return {}
        G = la.matmul(hb, la.matmul(P.gram, la.transpose(hb)))
        coord = la.matmul(la.inverse(G), la.matmul(hb, P.gram))
        out: Dict[int, List[Tuple[int, Fraction]]] = {}
        for h, row in enumerate(coord):
            for i, a in enumerate(row):
                if a:
                    out.setdefault(i, []).append((h, a))
        return out

    def harmonic_coords(self, t: Tensor) -> Dict[int, SL2Elem]:
        """Length-one part of t read in harmonic coordinates (after pr_H)."""
        coord = self._harmonic_dual
        out: Dict[int, SL2Elem] = {}
        for w, c in t.items():
            if len(w) != 1:
                continue
            for h, a in coord.get(w[0], ()):
                out[h] = out[h] + c.scale(a) if h in out else c.scale(a)
        return {h: c for h, c in out.items() if c}

    def unit_coeff(self, t: Tensor) -> SL2Elem:
        """Length-one part of t on the unit letter."""
        c = t.get((self.P.A.unit,))
        return c if c is not None else SL2Elem.const(0)

    def in_Z(self, t: Tensor) -> bool:
        """Every tensor factor lies in ker D~c."""
        return all(not m(t) for m in self.position_ops(self.T.Dct))


# ---------------------------------------------------------------------------
# transfer lemmas

def transfer_gamma_i(C: Calculus, f: Map) -> Tuple[Map, Map]:
    """(gamma^i(f), f' = f + [d_E, gamma^i(f)])."""
    e = f + C.h_i @ C.q.bracket(f)
    qh = C.q.bracket(C.h_i)
    gamma = series(e, qh, C.h_i, C.n_max, -1)
    fprime = f + C.d_E.bracket(gamma)
    return gamma, fprime


def transfer_gamma_p(C: Calculus, f: Map, target_q: Map) -> Tuple[Map, Map]:
    """(gamma^p(f), f'' = f + [d, gamma^p(f)]).

    ``target_q`` is the differential on the target coalgebra (the product
    there; the internal differential vanishes on harmonic forms and on R).
    """
    s = -1 if f.degree % 2 else 1
    qf = Map(lambda t: tsum(target_q(f(t)), tscale(f(C.q(t)), -s)), f.degree + 1)
    e = f + qf @ C.h_p
    qh = C.q.bracket(C.h_p)
    gamma = series(C.h_p, qh, e, C.n_max, -1)
    g = gamma.degree
    sg = -1 if g % 2 else 1
    dgamma = Map(lambda t: tsum(target_q(gamma(t)), tscale(gamma(C.d_E(t)), -sg)), g + 1)
    fsecond = f + dgamma
    return gamma, fsecond
