"""Finite-dimensional graded-commutative differential algebras."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, List, Optional, Sequence, Tuple

from .. import linalg as la

Vec = Dict[int, Fraction]


class AlgebraError(ValueError):
    pass


def vadd(acc: Vec, v: Vec, c=1) -> Vec:
    for k, a in v.items():
        x = acc.get(k, 0) + c * a
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)
    return acc


def vscale(v: Vec, c) -> Vec:
    return {k: a * c for k, a in v.items()} if c else {}


@dataclass
class GCAlgebra:
    """Basis e_0..e_{n-1} with degrees; products e_i e_j = sum_k c e_k.

    ``bitypes`` lists (p, q) per basis vector.  A pair of types (p, q), (q, p)
    with p > q on consecutive basis vectors e_k, e_{k+1} means e_k + i e_{k+1}
    has type (p, q); a type (p, p) vector is real of that type.
    """

    labels: List[str]
    degrees: List[int]
    unit: int = 0
    product: Dict[Tuple[int, int], Vec] = field(default_factory=dict)
    d: Dict[int, Vec] = field(default_factory=dict)
    bitypes: Optional[List[Tuple[int, int]]] = None
    weil: Optional[Dict[int, Vec]] = None

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @staticmethod
    def build(labels, degrees, products=(), d=(), unit=0, bitypes=None, symmetric=True) -> "GCAlgebra":
        """From triples (i, j, k, c) meaning e_i e_j has coefficient c on e_k.

        Unit products are filled in; with ``symmetric`` the graded-commutative
        partner e_j e_i is filled in too.
        """
        n = len(degrees)
        prod: Dict[Tuple[int, int], Vec] = {}
        for i in range(n):
            prod[(unit, i)] = {i: Fraction(1)}
            prod[(i, unit)] = {i: Fraction(1)}
        for i, j, k, c in products:
            c = Fraction(c)
            vadd(prod.setdefault((i, j), {}), {k: c})
            if symmetric and i != j:
                s = -1 if (degrees[i] * degrees[j]) % 2 else 1
                vadd(prod.setdefault((j, i), {}), {k: s * c})
        dd: Dict[int, Vec] = {}
        for i, k, c in d:
            vadd(dd.setdefault(i, {}), {k: Fraction(c)})
        return GCAlgebra(list(labels), list(degrees), unit, {k: v for k, v in prod.items() if v},
                         {k: v for k, v in dd.items() if v}, list(bitypes) if bitypes else None)

    def mul_basis(self, i: int, j: int) -> Vec:
        return self.product.get((i, j), {})

    def mul(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                p = self.product.get((i, j))
                if p:
                    vadd(out, p, a * b)
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

    @property
    def top_degree(self) -> int:
        return max(self.degrees) if self.degrees else 0

    def d_matrix(self, k: int) -> List[list]:
        src, tgt = self.basis_of_degree(k), self.basis_of_degree(k + 1)
        M = la.zeros(len(tgt), len(src))
        ti = {t: r for r, t in enumerate(tgt)}
        for c, s in enumerate(src):
            for t, a in self.d.get(s, {}).items():
                M[ti[t]][c] = a
        return M

    def is_formal_zero_d(self) -> bool:
        return not any(self.d.values())

    @property
    def has_types(self) -> bool:
        return self.bitypes is not None or self.weil is not None

    def theta(self) -> Dict[int, Vec]:
        """Weil operator: multiplication by i(p - q) on type (p, q)."""
        if self.weil is not None:
            return self.weil
        if self.bitypes is None:
            raise AlgebraError("algebra carries no bitypes")
        th: Dict[int, Vec] = {}
        k = 0
        bt = self.bitypes
        while k < self.dim:
            p, q = bt[k]
            if p == q:
                k += 1
                continue
            m = p - q
            th[k] = {k + 1: Fraction(-m)}
            th[k + 1] = {k: Fraction(m)}
            k += 2
        return th

    def is_connected(self) -> bool:
        return self.basis_of_degree(0) == [self.unit]

    def is_simply_connected(self) -> bool:
        return self.is_connected() and not self.basis_of_degree(1)

    def validate(self, require_connected: bool = True, d_preserves_types: bool = True) -> List[str]:
        errs: List[str] = []
        n = self.dim
        if len(self.labels) != n:
            errs.append("label count differs from basis size")
        if len(set(self.labels)) != len(self.labels):
            errs.append("labels not distinct")
        if any(d < 0 for d in self.degrees):
            errs.append("negative degree")
        if not (0 <= self.unit < n) or self.degrees[self.unit] != 0:
            errs.append("unit must be a degree-0 basis vector")
            return errs
        for (i, j), v in self.product.items():
            for k in v:
                if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                    errs.append(f"product e{i}*e{j} has a term of the wrong degree")
        for i, v in self.d.items():
            for k in v:
                if self.degrees[k] != self.degrees[i] + 1:
                    errs.append(f"d(e{i}) has a term of the wrong degree")
        e = lambda i: {i: Fraction(1)}
        for i in range(n):
            if self.mul(e(self.unit), e(i)) != e(i) or self.mul(e(i), e(self.unit)) != e(i):
                errs.append(f"unit law fails on {self.labels[i]}")
        if self.d.get(self.unit):
            errs.append("unit not closed: d(1) != 0")
        for i in range(n):
            for j in range(n):
                s = -1 if (self.degrees[i] * self.degrees[j]) % 2 else 1
                if self.mul_basis(i, j) != vscale(self.mul_basis(j, i), s):
                    errs.append(f"graded commutativity fails for ({self.labels[i]}, {self.labels[j]})")
        for i in range(n):
            for j in range(n):
                ij = self.mul_basis(i, j)
                for k in range(n):
                    if self.degrees[i] + self.degrees[j] + self.degrees[k] > self.top_degree:
                        continue
                    if self.mul(ij, e(k)) != self.mul(e(i), self.mul_basis(j, k)):
                        errs.append(f"associativity fails for ({i},{j},{k})")
        for i in range(n):
            if self.dvec(self.dvec(e(i))):
                errs.append(f"d^2 != 0 on {self.labels[i]}")
        for i in range(n):
            for j in range(n):
                lhs = self.dvec(self.mul_basis(i, j))
                s = -1 if self.degrees[i] % 2 else 1
                rhs = vadd(self.mul(self.dvec(e(i)), e(j)), self.mul(e(i), self.dvec(e(j))), s)
                if lhs != rhs:
                    errs.append(f"Leibniz rule fails for ({self.labels[i]}, {self.labels[j]})")
        if require_connected and not self.is_connected():
            errs.append("not connected: degree-0 part is larger than the unit line")
        if self.has_types:
            errs += self._validate_bitypes(d_preserves_types)
        return errs

    def _validate_bitypes(self, d_preserves_types: bool = True) -> List[str]:
        errs = []
        bt = self.bitypes or []
        if self.bitypes is not None and len(bt) != self.dim:
            return ["bitype count differs from basis size"]
        k = 0
        while k < len(bt):
            p, q = bt[k]
            if p + q != self.degrees[k]:
                errs.append(f"bitype of {self.labels[k]} does not sum to its degree")
            if p != q:
                if k + 1 >= self.dim or tuple(bt[k + 1]) != (q, p) or p < q:
                    errs.append(f"bitype pair at {self.labels[k]} malformed")
                    k += 1
                    continue
                k += 2
            else:
                k += 1
        if errs:
            return errs
        th = self.theta()

        def T(x):
            out: Vec = {}
            for i, a in x.items():
                vadd(out, th.get(i, {}), a)
            return out

        e = lambda i: {i: Fraction(1)}
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = T(self.mul_basis(i, j))
                rhs = vadd(self.mul(T(e(i)), e(j)), self.mul(e(i), T(e(j))))
                if lhs != rhs:
                    errs.append(f"product does not respect bitypes at ({self.labels[i]}, {self.labels[j]})")
            if d_preserves_types and T(self.dvec(e(i))) != self.dvec(T(e(i))):
                errs.append(f"d does not respect bitypes at {self.labels[i]}")
            if any(self.degrees[j] != self.degrees[i] for j in th.get(i, {})):
                errs.append(f"Weil operator changes degree at {self.labels[i]}")
        # eigenvalues i m with |m| <= k and m = k mod 2 on degree k
        for k in sorted(set(self.degrees)):
            idx = self.basis_of_degree(k)
            pos = {b: r for r, b in enumerate(idx)}
            Tm = la.zeros(len(idx), len(idx))
            for b in idx:
                for t, a in th.get(b, {}).items():
                    Tm[pos[t]][pos[b]] = a
            P = la.identity(len(idx))
            T2 = la.matmul(Tm, Tm)
            for m in range(k % 2, k + 1, 2):
                f = Tm if m == 0 else la.madd(T2, la.mscale(la.identity(len(idx)), m * m))
                P = la.matmul(P, f)
            if not la.is_zero_matrix(P):
                errs.append(f"Weil operator in degree {k} is not of Hodge type")
        return errs


def cohomology_ring(A: GCAlgebra) -> Tuple[GCAlgebra, Dict[int, List[Vec]]]:
    """H*(A) with induced product; returns the ring and cocycle representatives."""
    reps: Dict[int, List[Vec]] = {}
    coords = {}
    labels, degrees = [], []
    for k in range(0, A.top_degree + 1):
        idx = A.basis_of_degree(k)
        if not idx:
            continue
        Dk = A.d_matrix(k)
        Dprev = A.d_matrix(k - 1) if k > 0 else []
        Z = la.nullspace(Dk, len(idx)) if Dk else [[Fraction(int(i == j)) for j in range(len(idx))] for i in range(len(idx))]
        Bv = la.transpose(Dprev) if Dprev and Dprev[0] else []
        Bs = la.span(Bv, len(idx))
        cur = list(Bs)
        chosen = []
        for z in Z:
            inside = la.sub_contains(la.span(cur, len(idx)), z) if cur else not any(z)
            if not inside:
                cur.append(z)
                chosen.append(z)
        reps[k] = [{idx[i]: a for i, a in enumerate(z) if a} for z in chosen]
        coords[k] = (idx, chosen, list(Bs))
        for t in range(len(chosen)):
            labels.append(f"h{k}_{t}")
            degrees.append(k)
    order = [(k, t) for k in sorted(reps) for t in range(len(reps[k]))]
    pos = {kt: i for i, kt in enumerate(order)}

    def to_coords(k, v: Vec):
        idx, chosen, Bs = coords[k]
        vec = [v.get(i, Fraction(0)) for i in idx]
        cols = chosen + Bs
        sol = la.solve(la.transpose(cols), vec, len(cols))
        if sol is None:
            raise AlgebraError("product of cocycles is not a cocycle")
        return {pos[(k, t)]: sol[t] for t in range(len(chosen)) if sol[t]}

    prods = []
    for (k1, t1) in order:
        for (k2, t2) in order:
            if k1 + k2 not in reps:
                continue
            pr = A.mul(reps[k1][t1], reps[k2][t2])
            if not pr:
                continue
            for j, c in to_coords(k1 + k2, pr).items():
                prods.append((pos[(k1, t1)], pos[(k2, t2)], j, c))
    unit_pos = 0
    for i, (k, t) in enumerate(order):
        if k == 0:
            unit_pos = i
            break
    # remove the unit products that build() adds
    H = GCAlgebra.build(labels, degrees, [p for p in prods if p[0] != unit_pos and p[1] != unit_pos],
                        unit=unit_pos, symmetric=False)
    if A.has_types:
        th = A.theta()
        w: Dict[int, Vec] = {}
        for (k, t) in order:
            img: Vec = {}
            for i, a in reps[k][t].items():
                vadd(img, th.get(i, {}), a)
            if img:
                w[pos[(k, t)]] = to_coords(k, img)
        H.weil = w
    return H, {k: reps[k] for k in reps}


def cohomology_dims(A: GCAlgebra) -> Dict[int, int]:
    out = {}
    for k in range(0, A.top_degree + 1):
        n = len(A.basis_of_degree(k))
        if not n:
            out[k] = 0
            continue
        r_out = la.rank(A.d_matrix(k)) if A.basis_of_degree(k + 1) else 0
        r_in = la.rank(A.d_matrix(k - 1)) if k > 0 and A.basis_of_degree(k - 1) else 0
        out[k] = n - r_out - r_in
    return out


def tensor_algebra(A: GCAlgebra, B: GCAlgebra) -> GCAlgebra:
    """Graded tensor product with Koszul signs."""
    pairs = [(i, j) for i in range(A.dim) for j in range(B.dim)]
    idx = {p: n for n, p in enumerate(pairs)}
    labels = [f"{A.labels[i]}|{B.labels[j]}" for i, j in pairs]
    degrees = [A.degrees[i] + B.degrees[j] for i, j in pairs]
    prods = []
    for (i, j) in pairs:
        for (k, l) in pairs:
            if (i, j) == (A.unit, B.unit) or (k, l) == (A.unit, B.unit):
                continue
            s = -1 if (B.degrees[j] * A.degrees[k]) % 2 else 1
            for a, ca in A.mul_basis(i, k).items():
                for b, cb in B.mul_basis(j, l).items():
                    prods.append((idx[(i, j)], idx[(k, l)], idx[(a, b)], s * ca * cb))
    d = []
    for (i, j) in pairs:
        for a, c in A.d.get(i, {}).items():
            d.append((idx[(i, j)], idx[(a, j)], c))
        s = -1 if A.degrees[i] % 2 else 1
        for b, c in B.d.get(j, {}).items():
            d.append((idx[(i, j)], idx[(i, b)], s * c))
    out = GCAlgebra.build(labels, degrees, prods, d, unit=idx[(A.unit, B.unit)], symmetric=False)
    if A.has_types and B.has_types:
        tA, tB = A.theta(), B.theta()
        w: Dict[int, Vec] = {}
        for (i, j) in pairs:
            v: Vec = {}
            for a, c in tA.get(i, {}).items():
                vadd(v, {idx[(a, j)]: c})
            for b, c in tB.get(j, {}).items():
                vadd(v, {idx[(i, b)]: c})
            if v:
                w[idx[(i, j)]] = v
        out.weil = w
    return out

