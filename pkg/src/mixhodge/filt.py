"""Filtered vector spaces, Rees jumps, conjugation and the weak-Hodge cone."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg as la
from .scalars import Gauss


class FiltrationError(ValueError):
    pass


@dataclass(frozen=True)
class RationalSpace:
    dim: int
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i+1}" for i in range(self.dim)))
        if len(self.labels) != self.dim:
            raise FiltrationError("label count differs from dimension")
        if len(set(self.labels)) != self.dim:
            raise FiltrationError("basis labels must be distinct")


def gspan(vectors, dim: int) -> Tuple[tuple, ...]:
    """Canonical RREF basis with Gaussian entries."""
    S = la.span([[Gauss.of(a) for a in v] for v in vectors], dim)
    return tuple(tuple(Gauss.of(a) for a in r) for r in S)


def full(dim: int):
    return gspan([[int(i == j) for j in range(dim)] for i in range(dim)], dim)


def gconj(v):
    return [Gauss.of(a).conj() for a in v]


@dataclass(frozen=True)
class Filtration:
    """Decreasing filtration of C^dim.

    ``steps`` holds F^p for finitely many p.  For other p, F^p equals the
    step at the smallest listed index >= p, and 0 above the last listed index.
    The lowest listed step must be the whole space.
    """

    dim: int
    steps: Tuple[Tuple[int, tuple], ...]

    @staticmethod
    def make(dim: int, steps: Dict[int, Sequence[Sequence]]) -> "Filtration":
        if not steps:
            raise FiltrationError("empty filtration")
        st = tuple(sorted((int(p), gspan(vs, dim)) for p, vs in steps.items()))
        for _, S in st:
            for r in S:
                if len(r) != dim:
                    raise FiltrationError("vector length differs from dimension")
        F = Filtration(dim, st)
        F.validate()
        return F

    def validate(self):
        if len(self.steps[0][1]) != self.dim:
            raise FiltrationError(f"not exhaustive: F^{self.steps[0][0]} is not the whole space")
        for (p, A), (q, B) in zip(self.steps, self.steps[1:]):
            if not la.sub_le(B, A):
                raise FiltrationError(f"not decreasing: F^{q} is not inside F^{p}")

    @property
    def p_min(self) -> int:
        return self.steps[0][0]

    @property
    def p_max(self) -> int:
        """Largest index with F^p possibly nonzero."""
        nz = [p for p, S in self.steps if S]
        return nz[-1] if nz else self.p_min - 1

    def __call__(self, p: int):
        for q, S in self.steps:
            if q >= p:
                return S
        return ()

    def dims(self) -> Dict[int, int]:
        return {p: len(self(p)) for p in range(self.p_min, self.p_max + 2)}

    def same_as(self, other: "Filtration") -> bool:
        lo = min(self.p_min, other.p_min)
        hi = max(self.p_max, other.p_max) + 1
        return self.dim == other.dim and all(self(p) == other(p) for p in range(lo, hi + 1))

    def shifted(self, n: int) -> "Filtration":
        """The filtration p -> F^{p+n}."""
        return Filtration(self.dim, tuple((p - n, S) for p, S in self.steps))

    def with_steps(self, steps) -> "Filtration":
        return Filtration(self.dim, tuple(sorted(steps)))


@dataclass(frozen=True)
class RealStructure:
    """Antilinear involution v -> S conj(v)."""

    S: Tuple[tuple, ...]

    @staticmethod
    def standard(dim: int) -> "RealStructure":
        return RealStructure(tuple(tuple(Gauss(int(i == j)) for j in range(dim)) for i in range(dim)))

    @property
    def dim(self):
        return len(self.S)

    def validate(self):
        SS = la.matmul([list(r) for r in self.S], [gconj(r) for r in self.S])
        if SS != la.identity(self.dim):
            raise FiltrationError("conjugation is not an involution")

    def apply(self, v):
        return la.matvec([list(r) for r in self.S], gconj(v))

    def is_standard(self) -> bool:
        return self.S == RealStructure.standard(self.dim).S

    def real_basis(self) -> List[list]:
        """Q-basis of the fixed subspace, in (re, im) coordinates of Q^{2n}."""
        n = self.dim
        # fixed points: S conj(a + ib) = a + ib, with S = P + iQ
        P = [[Gauss.of(a).re for a in r] for r in self.S]
        Qm = [[Gauss.of(a).im for a in r] for r in self.S]
        # S conj(z) = (P + iQ)(a - ib) = (Pa + Qb) + i(Qa - Pb)
        rows = []
        for i in range(n):
            rows.append([P[i][j] - int(i == j) for j in range(n)] + [Qm[i][j] for j in range(n)])
            rows.append([Qm[i][j] for j in range(n)] + [-P[i][j] - int(i == j) for j in range(n)])
        return la.nullspace(rows, 2 * n)


def rees_jumps(V: RationalSpace, F: Filtration) -> List[int]:
    """Generator degrees of the Rees module: p repeated dim gr_F^p times."""
    if F.dim != V.dim:
        raise FiltrationError("dimension mismatch")
    F.validate()
    out = []
    for p in range(F.p_min, F.p_max + 1):
        out += [p] * (len(F(p)) - len(F(p + 1)))
    return out


def conjugate_filtration(F: Filtration, sigma: Optional[RealStructure] = None) -> Filtration:
    sigma = sigma or RealStructure.standard(F.dim)
    if sigma.dim != F.dim:
        raise FiltrationError("dimension mismatch")
    return Filtration(F.dim, tuple((p, gspan([sigma.apply(v) for v in S], F.dim)) for p, S in F.steps))


def is_pure_hodge(V: RationalSpace, F: Filtration, sigma: Optional[RealStructure], n: int) -> bool:
    Fb = conjugate_filtration(F, sigma)
    lo = min(F.p_min, n - Fb.p_max - 1)
    hi = max(F.p_max, n - Fb.p_min) + 1
    pieces = []
    for p in range(lo, hi + 1):
        pieces.extend(la.sub_intersect(F(p), Fb(n - p), V.dim))
    return len(pieces) == V.dim and la.rank([list(v) for v in pieces] or [[0]]) == V.dim


# --- weak Hodge cohomology --------------------------------------------------


@dataclass
class HodgeComplexTerm:
    degree: int
    F: Filtration
    sigma: RealStructure = None

    def __post_init__(self):
        if self.sigma is None:
            self.sigma = RealStructure.standard(self.F.dim)


def _realify(M):
    """Complex-linear map as a real 2n x 2m block matrix on (re, im)."""
    P = [[Gauss.of(a).re for a in r] for r in M]
    Qm = [[Gauss.of(a).im for a in r] for r in M]
    top = [p + [-q for q in qr] for p, qr in zip(P, Qm)]
    bot = [q + p for p, q in zip(P, Qm)]
    return top + bot


def _real_vectors(S) -> List[list]:
    """Q-basis of a complex subspace viewed inside Q^{2n}."""
    out = []
    for v in S:
        g = [Gauss.of(a) for a in v]
        out.append([a.re for a in g] + [a.im for a in g])
        iv = [a * Gauss(0, 1) for a in g]
        out.append([a.re for a in iv] + [a.im for a in iv])
    return out


def weak_hodge_cohomology(terms: Sequence[HodgeComplexTerm], diffs: Dict[int, Sequence[Sequence]]) -> Dict[int, int]:
    """Dimensions of the cone of F^0 V_C + V_R -> V_C.

    ``diffs[m]`` is the matrix of d: V^m -> V^{m+1}.
    """
    by_deg = {t.degree: t for t in terms}
    if not by_deg:
        return {}
    degs = range(min(by_deg), max(by_deg) + 2)
    n = {m: (by_deg[m].F.dim if m in by_deg else 0) for m in range(min(degs) - 2, max(degs) + 2)}
    D = {}
    for m in range(min(degs) - 1, max(degs) + 1):
        M = diffs.get(m)
        if M is None or n[m] == 0 or n[m + 1] == 0:
            D[m] = [[Fraction(0)] * (2 * n[m]) for _ in range(2 * n[m + 1])]
            if M is not None and any(any(r) for r in M):
                raise FiltrationError(f"differential d^{m} has the wrong shape")
            continue
        if len(M) != n[m + 1] or any(len(r) != n[m] for r in M):
            raise FiltrationError(f"differential d^{m} has the wrong shape")
        D[m] = _realify(M)
    for m in degs:
        if m - 1 in D and m in D and not la.is_zero_matrix(la.matmul(D[m], D[m - 1])):
            raise FiltrationError("d^2 != 0")
    X = {}
    for m in range(min(degs) - 1, max(degs) + 2):
        if m in by_deg:
            t = by_deg[m]
            F0 = _real_vectors(t.F(0))
            VR = t.sigma.real_basis()
            X[m] = (F0, VR)
            for v in F0:
                w = la.matvec(D[m], v)
                if any(w) and m + 1 in by_deg and not la.sub_contains(la.span(_real_vectors(by_deg[m + 1].F(0)), 2 * n[m + 1]), w):
                    raise FiltrationError("differential does not preserve F^0")
            if by_deg.get(m + 1):
                for v in VR:
                    w = la.matvec(D[m], v)
                    if any(w) and not la.sub_contains(la.span(by_deg[m + 1].sigma.real_basis(), 2 * n[m + 1]), w):
                        raise FiltrationError("differential is not real")
        else:
            X[m] = ([], [])

    def cone_basis(m):
        """Vectors in the ambient (x_F, x_R, y) coordinates of C^m."""
        F0, VR = X.get(m, ([], []))
        a, b, c = 2 * n[m], 2 * n[m], 2 * n[m - 1]
        out = []
        for v in F0:
            out.append(list(v) + [Fraction(0)] * (b + c))
        for v in VR:
            out.append([Fraction(0)] * a + list(v) + [Fraction(0)] * c)
        for i in range(c):
            out.append([Fraction(0)] * (a + b) + [Fraction(int(i == j)) for j in range(c)])
        return out

    def d_cone(m, vec):
        a = 2 * n[m]
        xf, xr, y = vec[:a], vec[a:2 * a], vec[2 * a:]
        dm = D.get(m)
        dxf = la.matvec(dm, xf) if dm else []
        dxr = la.matvec(dm, xr) if dm else []
        fy = [p - q for p, q in zip(xf, xr)]
        dy = la.matvec(D[m - 1], y) if (m - 1) in D and y else [Fraction(0)] * a
        return dxf + dxr + [p - q for p, q in zip(fy, dy)]

    ranks = {}
    dims = {}
    for m in range(min(degs) - 1, max(degs) + 2):
        B = cone_basis(m)
        dims[m] = len(B)
        imgs = [d_cone(m, v) for v in B]
        ranks[m] = la.rank(imgs) if imgs and imgs[0] else 0
    out = {}
    for m in degs:
        out[m] = dims[m] - ranks[m] - ranks.get(m - 1, 0)
    return out
