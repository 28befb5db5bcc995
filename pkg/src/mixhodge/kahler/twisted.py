"""O(SL2)-linear operators on A (x) O(SL2): D~, D~c, the homotopies h_i, h_p.

Operators are sparse {column: {row: SL2Elem}} maps on the basis of A.  The
formality check at the end works over the fraction field of O(SL2) (with
sympy) and at rational points of SL2.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .. import linalg as la
from ..scalars import ONE, SL2Elem, U, V_, X, Y
from .package import KahlerPackage, Matrix, comm

SVec = Dict[int, SL2Elem]


class SOp:
    """O(SL2)-linear operator of a fixed degree on A (x) O(SL2)."""

    __slots__ = ("n", "cols", "degree")

    def __init__(self, n: int, cols: Dict[int, SVec], degree: int = 0):
        self.n = n
        self.cols = {c: {r: a for r, a in col.items() if a} for c, col in cols.items()}
        self.cols = {c: col for c, col in self.cols.items() if col}
        self.degree = degree

    @staticmethod
    def const(M: Matrix, degree: int = 0, coeff: SL2Elem = ONE) -> "SOp":
        n = len(M)
        cols: Dict[int, SVec] = {}
        for c in range(n):
            for r in range(n):
                if M[r][c]:
                    cols.setdefault(c, {})[r] = coeff.scale(M[r][c])
        return SOp(n, cols, degree)

    @staticmethod
    def identity(n: int) -> "SOp":
        return SOp(n, {i: {i: ONE} for i in range(n)}, 0)

    def __add__(self, o: "SOp") -> "SOp":
        cols = {c: dict(col) for c, col in self.cols.items()}
        for c, col in o.cols.items():
            tgt = cols.setdefault(c, {})
            for r, a in col.items():
                tgt[r] = tgt[r] + a if r in tgt else a
        return SOp(self.n, cols, self.degree)

    def __neg__(self) -> "SOp":
        return SOp(self.n, {c: {r: -a for r, a in col.items()} for c, col in self.cols.items()}, self.degree)

    def __sub__(self, o: "SOp") -> "SOp":
        return self + (-o)

    def __matmul__(self, o: "SOp") -> "SOp":
        cols: Dict[int, SVec] = {}
        for c, col in o.cols.items():
            acc: SVec = {}
            for k, b in col.items():
                for r, a in self.cols.get(k, {}).items():
                    t = a * b
                    acc[r] = acc[r] + t if r in acc else t
            cols[c] = acc
        return SOp(self.n, cols, self.degree + o.degree)

    def bracket(self, o: "SOp") -> "SOp":
        """Graded commutator [self, o]."""
        s = -1 if (self.degree * o.degree) % 2 else 1
        other = o @ self
        return self @ o - other if s == 1 else self @ o + other

    def apply(self, v: SVec) -> SVec:
        acc: SVec = {}
        for k, b in v.items():
            for r, a in self.cols.get(k, {}).items():
                t = a * b
                acc[r] = acc[r] + t if r in acc else t
        return {r: a for r, a in acc.items() if a}

    def is_zero(self) -> bool:
        return not self.cols

    def first_nonzero(self, labels: Sequence[str]) -> Optional[str]:
        for c in sorted(self.cols):
            for r in sorted(self.cols[c]):
                return f"entry ({labels[r]}, {labels[c]}) = {self.cols[c][r]}"
        return None

    def at(self, point) -> Matrix:
        u, v, x, y = (Fraction(t) for t in point)
        M = la.zeros(self.n, self.n)
        for c, col in self.cols.items():
            for r, a in col.items():
                M[r][c] = Fraction(a.evaluate(u, v, x, y))
        return M


class TwistedComplex:
    """D~ = u d + v dc and D~c = x d + y dc with the derived homotopies."""

    def __init__(self, P: KahlerPackage):
        self.P = P
        n = P.n
        self.n = n
        c = lambda M, deg: SOp.const(M, deg)
        self.d, self.dc = c(P.D, 1), c(P.Dc, 1)
        self.ds, self.dcs = c(P.Ds, -1), c(P.Dcs, -1)
        self.lam = c(P.L, -2)
        self.G = c(P.green, 0)
        self.prH = c(P.pr_H, 0)
        self.one = SOp.identity(n)
        self.Dt = SOp.const(P.D, 1, U) + SOp.const(P.Dc, 1, V_)
        self.Dct = SOp.const(P.D, 1, X) + SOp.const(P.Dc, 1, Y)
        self.Dts = -self.lam.bracket(self.Dct)
        self.Dcts = self.lam.bracket(self.Dt)
        G2 = la.matmul(P.green, P.green)
        self.G2DsDcs = c(la.matmul(G2, la.matmul(P.Ds, P.Dcs)), -2)
        self.GL = c(la.matmul(P.green, P.L), -2)
        self.h_i = self.G2DsDcs @ self.Dct
        self.pr_Z = self.one - self.G @ self.Dcts @ self.Dct
        self.h_p = self.G @ self.Dts

    @cached_property
    def laplacian(self) -> SOp:
        return SOp.const(self.P.laplacian, 0)

    def identities(self) -> List[Tuple[str, SOp]]:
        """Pairs (name, operator that must vanish)."""
        Dt, Dct, hi, hp, prZ = self.Dt, self.Dct, self.h_i, self.h_p, self.pr_Z
        Lap = self.laplacian
        return [
            ("D~^2", Dt @ Dt),
            ("D~c^2", Dct @ Dct),
            ("D~ D~c + D~c D~", Dt.bracket(Dct)),
            ("[D~, D~*] - Laplacian", Dt.bracket(self.Dts) - Lap),
            ("[D~c, D~c*] - Laplacian", Dct.bracket(self.Dcts) - Lap),
            ("h_i^2", hi @ hi),
            ("h_i - G D~* (1 - pr_Z)", hi - self.G @ self.Dts @ (self.one - prZ)),
            ("pr_Z + D~ h_i + h_i D~ - 1", prZ + Dt.bracket(hi) - self.one),
            ("pr_Z^2 - pr_Z", prZ @ prZ - prZ),
            ("D~c pr_Z", Dct @ prZ),
            ("([h_p, D~] - (1 - pr_H)) on Z", (hp.bracket(Dt) - (self.one - self.prH)) @ prZ),
            ("(G D~* - G D~c Lambda) on Z", (hp - self.G @ Dct @ self.lam) @ prZ),
            ("D~c h_p on Z", Dct @ hp @ prZ),
        ]

    def h_p_vanishes_in_degree_one(self) -> bool:
        op = self.h_p @ self.pr_Z
        return all(self.P.degrees[c] != 1 for c in op.cols)


def twisted_failures(P: KahlerPackage) -> List[str]:
    T = TwistedComplex(P)
    out = []
    for name, op in T.identities():
        bad = op.first_nonzero(P.labels)
        if bad:
            out.append(f"{name} != 0: {bad}")
    if not T.h_p_vanishes_in_degree_one():
        out.append("h_p is nonzero on Z^1")
    return out


# ---------------------------------------------------------------------------
# formality zig-zag

DEFAULT_POINTS = ((1, 0, 0, 1), (1, 0, 1, 1), (1, 0, 2, 1), (2, 1, 1, 1), (0, 1, -1, 0))


def _field_data(P: KahlerPackage, point=None):
    """Domain, D~, D~c as sympy DomainMatrices (generic or at a point)."""
    from sympy import QQ, symbols
    from sympy.polys.matrices import DomainMatrix

    if point is None:
        u, v, x = symbols("u v x")
        K = QQ.frac_field(u, v, x)
        cu, cv, cx = K.from_sympy(u), K.from_sympy(v), K.from_sympy(x)
        cy = K.from_sympy((1 + v * x) / u)
    else:
        K = QQ
        cu, cv, cx, cy = (QQ(Fraction(t).numerator, Fraction(t).denominator) for t in point)
    conv = lambda a: K.convert(QQ(a.numerator, a.denominator))
    n = P.n

    def lin(M1, M2, a, b):
        return DomainMatrix([[a * conv(M1[r][c]) + b * conv(M2[r][c]) for c in range(n)] for r in range(n)],
                            (n, n), K)

    return K, DomainMatrix, lin(P.D, P.Dc, cu, cv), lin(P.D, P.Dc, cx, cy), conv


def _block(M, rows: List[int], cols: List[int]):
    from sympy.polys.matrices import DomainMatrix
    K = M.domain
    if not rows or not cols:
        return DomainMatrix.zeros((len(rows), len(cols)), K)
    return M.extract(rows, cols)


def _rank(M) -> int:
    return 0 if 0 in M.shape else M.rank()


def _cols(M):
    """Columns of the nullspace (returned by sympy as rows)."""
    return M.transpose()


def _quasi_iso(P: KahlerPackage, point=None) -> Dict[str, object]:
    from sympy.polys.matrices import DomainMatrix

    K, DM, Dt, Dct, conv = _field_data(P, point)
    degs = sorted(set(P.degrees))
    idx = {k: P.A.basis_of_degree(k) for k in range(min(degs) - 1, max(degs) + 2)}
    Zb, dimsA, dimsZ = {}, {}, {}
    # harmonic coordinates c = (B^T g B)^-1 B^T g, restricted per degree
    hb = P.harmonic_basis
    Bt = [[conv(a) for a in v] for v in hb]
    g = [[conv(a) for a in r] for r in P.gram]
    for k in idx:
        rows = idx[k]
        if not rows:
            Zb[k] = DM.zeros((0, 0), K)
            continue
        dct = _block(Dct, idx.get(k + 1, []), rows)
        if dct.shape[0] == 0:
            Zb[k] = DM.eye(len(rows), K)
        else:
            ns = dct.nullspace()
            Zb[k] = _cols(ns) if ns.shape[0] else DM.zeros((len(rows), 0), K)
    ok_i, ok_p = True, True
    report = []
    for k in degs:
        rows, up, down = idx[k], idx.get(k + 1, []), idx.get(k - 1, [])
        dA = _block(Dt, up, rows)
        dA_prev = _block(Dt, rows, down)
        rA, rA_prev = _rank(dA), _rank(dA_prev)
        hA = len(rows) - rA - rA_prev
        Z, Zprev = Zb[k], Zb[k - 1]
        dZ = dA * Z if Z.shape[1] and dA.shape[0] else DM.zeros((len(up), Z.shape[1]), K)
        dZprev = (dA_prev * Zprev) if Zprev.shape[1] and dA_prev.shape[0] else DM.zeros((len(rows), 0), K)
        rZ, rZprev = _rank(dZ), _rank(dZprev)
        hZ = Z.shape[1] - rZ - rZprev
        # cocycles of Z^k as columns in A^k
        if Z.shape[1] == 0:
            C = DM.zeros((len(rows), 0), K)
        elif dZ.shape[0] == 0:
            C = Z
        else:
            ns = dZ.nullspace()
            C = Z * _cols(ns) if ns.shape[0] else DM.zeros((len(rows), 0), K)
        dimC = C.shape[1]
        if dA_prev.shape[1] and dimC:
            joint = _rank(C.hstack(dA_prev))
        else:
            joint = dimC + rA_prev if dimC else rA_prev
        inter = dimC + rA_prev - joint
        inj = inter == rZprev
        ok_i = ok_i and inj and hA == hZ
        # p: coordinates along harmonic forms of degree k
        hk = [t for t, v in enumerate(hb) if any(v[i] for i in rows)]
        if hk:
            Bk = DM([[Bt[t][i] for t in hk] for i in range(P.n)], (P.n, len(hk)), K)
            gm = DM(g, (P.n, P.n), K)
            coord = (Bk.transpose() * gm * Bk).inv() * Bk.transpose() * gm
            coord = coord.extract(list(range(len(hk))), rows)
            rp = _rank(coord * C) if dimC else 0
            chain = (coord * dZprev).is_zero_matrix if dZprev.shape[1] else True
        else:
            rp, chain = 0, True
        ok_p = ok_p and chain and rp == len(hk) and dimC - rp == rZprev
        report.append({"degree": k, "H(A)": hA, "H(Z)": hZ, "H": len(hk), "i_injective": inj})
    return {"i_quasi_iso": ok_i, "p_quasi_iso": ok_p, "degrees": report}


def formality_zigzag(P: KahlerPackage, points: Optional[Iterable] = None) -> Dict[str, object]:
    """Certify Z = ker D~c -> A (x) O(SL2) and Z -> H (x) O(SL2) are quasi-isomorphisms."""
    pts = [tuple(Fraction(t) for t in p) for p in (points or DEFAULT_POINTS)]
    for p in pts:
        u, v, x, y = p
        if u * y - v * x != 1:
            raise ValueError(f"point {p} is not in SL2")
    generic = _quasi_iso(P, None)
    spec = []
    for p in pts:
        r = _quasi_iso(P, p)
        spec.append({"point": [str(t) for t in p], **r})
    ok = generic["i_quasi_iso"] and generic["p_quasi_iso"] and all(
        s["i_quasi_iso"] and s["p_quasi_iso"] for s in spec)
    return {"ok": bool(ok), "generic": generic, "specializations": spec}
