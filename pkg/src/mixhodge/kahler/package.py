"""Finite-dimensional Kähler packages and their first-order identities."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence

from .. import linalg as la
from ..rht.algebra import GCAlgebra, Vec

Matrix = List[list]


class PackageError(ValueError):
    pass


def sparse_to_matrix(op: Dict[int, Vec], n: int) -> Matrix:
    M = la.zeros(n, n)
    for c, col in op.items():
        for r, a in col.items():
            M[r][c] = Fraction(a)
    return M


def matrix_to_sparse(M: Matrix) -> Dict[int, Vec]:
    n = len(M)
    out: Dict[int, Vec] = {}
    for c in range(n):
        col = {r: M[r][c] for r in range(n) if M[r][c]}
        if col:
            out[c] = col
    return out


def comm(A: Matrix, B: Matrix, sign: int = 1) -> Matrix:
    """AB - sign * BA (sign = -1 gives the anticommutator)."""
    return la.madd(la.matmul(A, B), la.matmul(B, A), -sign)


def first_nonzero(M: Matrix, labels: Sequence[str]) -> Optional[str]:
    for r, row in enumerate(M):
        for c, a in enumerate(row):
            if a:
                return f"entry ({labels[r]}, {labels[c]}) = {a}"
    return None


@dataclass
class KahlerPackage:
    """A bityped algebra with metric, d, d^c and Lambda.

    ``d`` is the differential stored on ``A``; ``dc`` and ``lam`` are sparse
    operators in the same column format.  ``x0`` is the augmentation as a
    functional on the basis; by default it reads off the unit coordinate.
    """

    name: str
    A: GCAlgebra
    gram: Matrix
    dc: Dict[int, Vec] = field(default_factory=dict)
    lam: Dict[int, Vec] = field(default_factory=dict)
    x0: Optional[Dict[int, Fraction]] = None

    @property
    def n(self) -> int:
        return self.A.dim

    @property
    def labels(self) -> List[str]:
        return self.A.labels

    @property
    def degrees(self) -> List[int]:
        return self.A.degrees

    @cached_property
    def x0_vec(self) -> Dict[int, Fraction]:
        return dict(self.x0) if self.x0 is not None else {self.A.unit: Fraction(1)}

    # -- operator matrices ------------------------------------------------
    @cached_property
    def D(self) -> Matrix:
        return sparse_to_matrix(self.A.d, self.n)

    @cached_property
    def Dc(self) -> Matrix:
        return sparse_to_matrix(self.dc, self.n)

    @cached_property
    def L(self) -> Matrix:
        return sparse_to_matrix(self.lam, self.n)

    @cached_property
    def theta(self) -> Matrix:
        return sparse_to_matrix(self.A.theta(), self.n)

    @cached_property
    def gram_inv(self) -> Matrix:
        return la.inverse(self.gram)

    def adj(self, M: Matrix) -> Matrix:
        """Adjoint g^-1 M^T g with respect to the Gram matrix."""
        return la.matmul(self.gram_inv, la.matmul(la.transpose(M), self.gram))

    @cached_property
    def Ds(self) -> Matrix:
        return self.adj(self.D)

    @cached_property
    def Dcs(self) -> Matrix:
        return self.adj(self.Dc)

    @cached_property
    def laplacian(self) -> Matrix:
        return comm(self.D, self.Ds, -1)

    @cached_property
    def harmonic_basis(self) -> List[list]:
        """Basis of ker Laplacian, ordered by degree then by basis position."""
        ker = la.nullspace(self.laplacian, self.n)
        lead = lambda v: next(i for i, a in enumerate(v) if a)
        return sorted((list(v) for v in ker), key=lambda v: (self.degrees[lead(v)], lead(v)))

    @cached_property
    def pr_H(self) -> Matrix:
        B = la.transpose(self.harmonic_basis) if self.harmonic_basis else la.zeros(self.n, 0)
        if not self.harmonic_basis:
            return la.zeros(self.n, self.n)
        Bt = la.transpose(B)
        M = la.matmul(Bt, la.matmul(self.gram, B))
        return la.matmul(B, la.matmul(la.inverse(M), la.matmul(Bt, self.gram)))

    @cached_property
    def green(self) -> Matrix:
        """Inverse of the Laplacian on the orthogonal complement of harmonics."""
        inv = la.inverse(la.madd(self.laplacian, self.pr_H))
        return la.madd(inv, self.pr_H, -1)

    @cached_property
    def pr_im_dsdcs(self) -> Matrix:
        """Orthogonal projection onto im(d* dc*)."""
        M = la.matmul(self.Ds, self.Dcs)
        cols = list(la.span(la.transpose(M), self.n))
        if not cols:
            return la.zeros(self.n, self.n)
        B = la.transpose([list(c) for c in cols])
        Bt = la.transpose(B)
        G = la.matmul(Bt, la.matmul(self.gram, B))
        return la.matmul(B, la.matmul(la.inverse(G), la.matmul(Bt, self.gram)))

    def harmonic_dims(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for v in self.harmonic_basis:
            k = self.degrees[next(i for i, a in enumerate(v) if a)]
            out[k] = out.get(k, 0) + 1
        return out

    def is_simply_connected(self) -> bool:
        hd = self.harmonic_dims()
        return hd.get(0, 0) == 1 and hd.get(1, 0) == 0

    def to_json(self) -> dict:
        from ..io import package_to_json
        return package_to_json(self)


# ---------------------------------------------------------------------------
# validation

def _positive_definite(g: Matrix) -> bool:
    n = len(g)
    M = [list(r) for r in g]
    for k in range(n):
        if M[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            if f:
                for j in range(k, n):
                    M[i][j] -= f * M[k][j]
    return True


def _derivation_failures(P: KahlerPackage, op: Matrix, name: str) -> List[str]:
    A = P.A
    errs = []
    for i in range(P.n):
        for j in range(P.n):
            lhs = la.matvec(op, _dense(A.mul_basis(i, j), P.n))
            s = -1 if A.degrees[i] % 2 else 1
            di = {k: op[k][i] for k in range(P.n) if op[k][i]}
            dj = {k: op[k][j] for k in range(P.n) if op[k][j]}
            rhs = la.madd([_dense(A.mul(di, {j: Fraction(1)}), P.n)],
                          [_dense(A.mul({i: Fraction(1)}, dj), P.n)], s)[0]
            if lhs != rhs:
                errs.append(f"{name} is not a derivation on ({P.labels[i]}, {P.labels[j]})")
    return errs


def _dense(v: Vec, n: int) -> list:
    out = [Fraction(0)] * n
    for k, a in v.items():
        out[k] = Fraction(a)
    return out


def _two_types(P: KahlerPackage, D1: Matrix, D2: Matrix) -> bool:
    n = P.n
    ker = la.sub_intersect(la.span(la.nullspace(D1, n), n), la.span(la.nullspace(D2, n), n), n)
    im = la.sub_sum(la.span(la.transpose(D1), n), la.span(la.transpose(D2), n), n)
    lhs = la.sub_intersect(ker, im, n)
    rhs = la.span(la.transpose(la.matmul(D1, D2)), n)
    return la.sub_le(lhs, rhs) and la.sub_le(rhs, lhs)


def validate_package(P: KahlerPackage) -> Dict[str, object]:
    """Check every package identity; failures name the offending entry."""
    fails: List[str] = []
    lab = P.labels
    n = P.n

    def need(M: Matrix, what: str):
        bad = first_nonzero(M, lab)
        if bad:
            fails.append(f"{what}: {bad}")

    fails += [f"algebra: {e}" for e in P.A.validate(require_connected=False, d_preserves_types=False)]
    if fails:
        return {"ok": False, "failures": fails}
    if not P.A.has_types:
        fails.append("algebra carries no bitypes")
        return {"ok": False, "failures": fails}
    g = P.gram
    if len(g) != n or any(len(r) != n for r in g):
        return {"ok": False, "failures": ["Gram matrix has the wrong shape"]}
    need(la.madd(g, la.transpose(g), -1), "Gram matrix not symmetric")
    if not _positive_definite(g):
        fails.append("Gram matrix not positive definite")
        return {"ok": False, "failures": fails}
    for i in range(n):
        for j in range(n):
            if g[i][j] and P.degrees[i] != P.degrees[j]:
                fails.append(f"Gram pairs different degrees at ({lab[i]}, {lab[j]})")
    th = P.theta
    need(la.madd(la.matmul(la.transpose(th), g), la.matmul(g, th)), "types not orthogonal (theta not skew)")
    for name, op, deg in (("dc", P.Dc, 1), ("Lambda", P.L, -2)):
        for c in range(n):
            for r in range(n):
                if op[r][c] and P.degrees[r] != P.degrees[c] + deg:
                    fails.append(f"{name} has wrong degree at ({lab[r]}, {lab[c]})")
    D, Dc, L = P.D, P.Dc, P.L
    need(la.matmul(D, D), "d^2 != 0")
    need(la.matmul(Dc, Dc), "dc^2 != 0")
    need(comm(D, Dc, -1), "d dc + dc d != 0")
    fails += _derivation_failures(P, Dc, "dc")
    # d = del + delbar and dc = i del - i delbar, read off through theta
    need(la.madd(comm(th, D), Dc, -1), "dc != [theta, d]")
    need(la.madd(comm(th, Dc), D), "d has components outside types (1,0)+(0,1)")
    need(comm(th, L), "Lambda is not of type (-1,-1)")
    need(la.madd(P.Ds, comm(L, Dc)), "d* != -[Lambda, dc]")
    need(la.madd(P.Dcs, comm(L, D), -1), "dc* != [Lambda, d]")
    need(la.madd(P.laplacian, comm(Dc, P.Dcs, -1), -1), "[d,d*] != [dc,dc*]")
    if not _two_types(P, D, Dc):
        fails.append("principle of two types fails")
    x0 = P.x0_vec
    if x0.get(P.A.unit, 0) != 1:
        fails.append("augmentation does not send the unit to 1")
    for i in x0:
        if P.degrees[i] != 0:
            fails.append(f"augmentation nonzero in positive degree at {lab[i]}")
    deg0 = P.A.basis_of_degree(0)
    for i in deg0:
        for j in deg0:
            pr = P.A.mul_basis(i, j)
            if sum(x0.get(k, 0) * a for k, a in pr.items()) != x0.get(i, 0) * x0.get(j, 0):
                fails.append(f"augmentation not multiplicative on ({lab[i]}, {lab[j]})")
    if P.harmonic_dims().get(0, 0) != 1:
        fails.append("H^0 is not one-dimensional")
    if not fails:
        fails += green_failures(P)
    if not fails:
        from .twisted import twisted_failures
        fails += twisted_failures(P)
    return {"ok": not fails, "failures": fails, "harmonic_dims": P.harmonic_dims()}


def green_failures(P: KahlerPackage) -> List[str]:
    fails = []
    G, Lap, prH = P.green, P.laplacian, P.pr_H
    idm = la.identity(P.n)
    for what, M in (("G Laplacian != 1 - pr_H", la.madd(la.matmul(G, Lap), la.madd(idm, prH, -1), -1)),
                    ("Laplacian G != 1 - pr_H", la.madd(la.matmul(Lap, G), la.madd(idm, prH, -1), -1)),
                    ("G pr_H != 0", la.matmul(G, prH))):
        bad = first_nonzero(M, P.labels)
        if bad:
            fails.append(f"{what}: {bad}")
    for name, op in (("d", P.D), ("dc", P.Dc), ("Lambda", P.L), ("d*", P.Ds), ("dc*", P.Dcs)):
        bad = first_nonzero(comm(G, op), P.labels)
        if bad:
            fails.append(f"[G, {name}] != 0: {bad}")
    return fails


def green(P: KahlerPackage) -> Matrix:
    fails = green_failures(P)
    if fails:
        raise PackageError("; ".join(fails))
    return P.green


def two_types_family(P: KahlerPackage, M) -> bool:
    """Check the GL2 family (ud + v dc, xd + y dc) against (d, dc)."""
    (a, b), (c, e) = [[Fraction(t) for t in row] for row in M]
    if a * e - b * c == 0:
        raise PackageError("singular matrix")
    n = P.n
    D1 = la.madd(la.mscale(P.D, a), la.mscale(P.Dc, b))
    D2 = la.madd(la.mscale(P.D, c), la.mscale(P.Dc, e))
    sp = lambda M_: la.span(la.transpose(M_), n)
    ker = lambda M_: la.span(la.nullspace(M_, n), n)
    eq = lambda S, T: la.sub_le(S, T) and la.sub_le(T, S)
    ok = eq(la.sub_intersect(ker(P.D), ker(P.Dc), n), la.sub_intersect(ker(D1), ker(D2), n))
    ok = ok and eq(la.sub_sum(sp(P.D), sp(P.Dc), n), la.sub_sum(sp(D1), sp(D2), n))
    ok = ok and eq(sp(la.matmul(P.D, P.Dc)), sp(la.matmul(D1, D2)))
    return bool(ok and _two_types(P, D1, D2))
