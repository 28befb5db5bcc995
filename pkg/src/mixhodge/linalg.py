"""Exact linear algebra over Q and Q(i).

Dense routines work on lists of rows whose entries are Fractions or Gauss
values.  Sparse routines use dict rows {column: Fraction} and are used for
the larger bar-complex differentials.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

Row = Dict[int, Fraction]


def zeros(n: int, m: int) -> List[list]:
    return [[Fraction(0)] * m for _ in range(n)]


def identity(n: int) -> List[list]:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def transpose(M: Sequence[Sequence]) -> List[list]:
    return [list(r) for r in zip(*M)] if M else []


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> List[list]:
    if not A:
        return []
    m = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [Fraction(0)] * m
        for k, a in enumerate(row):
            if not a:
                continue
            bk = B[k]
            for j in range(m):
                b = bk[j]
                if b:
                    acc[j] = acc[j] + a * b
        out.append(acc)
    return out


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in A:
        acc = Fraction(0)
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def madd(A, B, s=1):
    return [[a + s * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mscale(A, s):
    return [[a * s for a in r] for r in A]


def is_zero_matrix(A) -> bool:
    return all(not a for r in A for a in r)


def rref(M: Sequence[Sequence]) -> Tuple[List[list], List[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [list(r) for r in M]
    if not R:
        return [], []
    ncols = len(R[0])
    piv: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(R)) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [a * inv for a in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        piv.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], piv


def rank(M) -> int:
    return len(rref(M)[1]) if M and M[0] else 0


def nullspace(M: Sequence[Sequence], ncols: Optional[int] = None) -> List[list]:
    """Basis of {v : M v = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    R, piv = rref(M) if M else ([], [])
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, piv):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(M: Sequence[Sequence], b: Sequence, ncols: Optional[int] = None):
    """A solution of M v = b with free variables zero, or None."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    aug = [list(r) + [bb] for r, bb in zip(M, b)]
    R, piv = rref(aug) if aug else ([], [])
    if ncols in piv:
        return None
    v = [Fraction(0)] * ncols
    for row, pc in zip(R, piv):
        v[pc] = row[-1]
    return v


def inverse(M: Sequence[Sequence]) -> List[list]:
    n = len(M)
    aug = [list(r) + e for r, e in zip(M, identity(n))]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in R]


# --- subspaces, stored as RREF row bases --------------------------------


def span(vectors: Sequence[Sequence], dim: int) -> Tuple[tuple, ...]:
    """Canonical (RREF) basis of the span; hashable and comparable."""
    vs = [list(v) for v in vectors if any(v)]
    if not vs:
        return ()
    R, _ = rref(vs)
    return tuple(tuple(r) for r in R)


def sub_dim(S) -> int:
    return len(S)


def sub_sum(A, B, dim: int):
    return span(list(A) + list(B), dim)


def sub_contains(S, v) -> bool:
    if not any(v):
        return True
    if not S:
        return False
    return rank(list(S) + [list(v)]) == len(S)


def sub_le(A, B) -> bool:
    return all(sub_contains(B, v) for v in A)


def sub_intersect(A, B, dim: int):
    """Intersection of two subspaces via the kernel of [A^T | -B^T]."""
    if not A or not B:
        return ()
    cols = [list(a) for a in A] + [[-x for x in b] for b in B]
    K = nullspace(transpose(cols), len(cols))
    out = []
    for k in K:
        v = [Fraction(0)] * dim
        for c, a in zip(k[: len(A)], A):
            if c:
                v = [p + c * q for p, q in zip(v, a)]
        out.append(v)
    return span(out, dim)


def annihilator(S, dim: int) -> List[list]:
    """Rows f with f . s = 0 for s in S (bilinear pairing, no conjugation)."""
    if not S:
        return [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    return nullspace([list(s) for s in S], dim)


def image_of(M, S, dim_out: int):
    return span([matvec(M, s) for s in S], dim_out)


def complement_basis(S, dim: int) -> List[list]:
    """Standard basis vectors completing S to the whole space."""
    _, piv = rref(list(S)) if S else ([], [])
    out = []
    for c in range(dim):
        if c not in piv:
            e = [Fraction(0)] * dim
            e[c] = Fraction(1)
            out.append(e)
    return out


# --- sparse ----------------------------------------------------------------


class SparseEchelon:
    """Incremental fully reduced echelon basis of a row space over Q."""

    def __init__(self):
        self.rows: Dict[int, Row] = {}

    def reduce(self, v: Row) -> Row:
        v = dict(v)
        changed = True
        while changed:
            changed = False
            for c in sorted(k for k in v if k in self.rows):
                f = v.get(c)
                if not f:
                    continue
                for k, a in self.rows[c].items():
                    nv = v.get(k, 0) - f * a
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
                changed = True
        return v

    def add(self, v: Row) -> bool:
        """Insert v; returns True if it increased the rank."""
        v = self.reduce(v)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {k: a * inv for k, a in v.items()}
        for c, row in self.rows.items():
            f = row.get(p)
            if f:
                for k, a in v.items():
                    nv = row.get(k, 0) - f * a
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[p] = v
        return True

    def rank(self) -> int:
        return len(self.rows)


def sparse_rank(rows: Sequence[Row]) -> int:
    return len(sparse_rref_pivots(rows))


def sparse_rref_pivots(rows: Sequence[Row]) -> Dict[int, Row]:
    """Forward elimination only (not fully reduced); pivot -> row."""
    piv: Dict[int, Row] = {}
    for r in rows:
        v = {k: a for k, a in r.items() if a}
        while v:
            p = min(v)
            if p not in piv:
                inv = 1 / v[p]
                piv[p] = {k: a * inv for k, a in v.items()}
                break
            f = v[p]
            for k, a in piv[p].items():
                nv = v.get(k, 0) - f * a
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return piv


def sparse_to_dense(rows: Sequence[Row], ncols: int) -> List[list]:
    out = []
    for r in rows:
        v = [Fraction(0)] * ncols
        for k, a in r.items():
            v[k] = a
        out.append(v)
    return out


def dense_to_sparse(v: Sequence) -> Row:
    return {i: a for i, a in enumerate(v) if a}


def sparse_solve(rows: Sequence[Row], rhs: Sequence, ncols: int):
    """A solution of the sparse system with free variables zero, or None."""
    aug = []
    for r, b in zip(rows, rhs):
        v = {k: Fraction(a) for k, a in r.items() if a}
        if b:
            v[ncols] = Fraction(b)
        if v:
            aug.append(v)
    piv = sparse_rref_pivots(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for p in sorted(piv, reverse=True):
        row = piv[p]
        val = row.get(ncols, Fraction(0))
        for k, a in row.items():
            if k != p and k != ncols:
                val -= a * x[k]
        x[p] = val
    return x


class TrackedEchelon:
    """Fully reduced echelon rows that remember how they were built.

    Each inserted vector carries a tag; ``express`` writes a vector in the
    row space as a combination of tags.
    """

    def __init__(self):
        self.rows: Dict[int, Row] = {}
        self.combo: Dict[int, Row] = {}

    def _reduce(self, v: Row, comb: Row) -> Tuple[Row, Row]:
        v, comb = dict(v), dict(comb)
        for c in sorted(k for k in v if k in self.rows):
            f = v.get(c)
            if not f:
                continue
            _axpy(v, self.rows[c], -f)
            _axpy(comb, self.combo[c], -f)
        return v, comb

    def add(self, v: Row, tag: int) -> bool:
        v, comb = self._reduce(v, {tag: Fraction(1)})
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {k: a * inv for k, a in v.items()}
        comb = {k: a * inv for k, a in comb.items()}
        for c, row in self.rows.items():
            f = row.get(p)
            if f:
                _axpy(row, v, -f)
                _axpy(self.combo[c], comb, -f)
        self.rows[p] = v
        self.combo[p] = comb
        return True

    def express(self, v: Row) -> Optional[Row]:
        """Tag combination equal to v, or None if v is outside the span."""
        rest, comb = self._reduce(v, {})
        if rest:
            return None
        return {k: -a for k, a in comb.items() if a}

    def rank(self) -> int:
        return len(self.rows)


def _axpy(acc: Row, v: Row, c) -> None:
    for k, a in v.items():
        x = acc.get(k, 0) + c * a
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)


def sparse_kernel(columns: Sequence[Row]) -> Tuple[List[Row], int]:
    """Kernel basis (as source combinations) and rank of a sparse map.

    ``columns[j]`` is the image of the j-th source basis vector.
    """
    piv: Dict[int, Tuple[Row, Row]] = {}
    kernel: List[Row] = []
    for j, col in enumerate(columns):
        v = {k: Fraction(a) for k, a in col.items() if a}
        comb: Row = {j: Fraction(1)}
        while v:
            p = min(v)
            if p not in piv:
                inv = 1 / v[p]
                piv[p] = ({k: a * inv for k, a in v.items()}, {k: a * inv for k, a in comb.items()})
                break
            f = v[p]
            pv, pc = piv[p]
            _axpy(v, pv, -f)
            _axpy(comb, pc, -f)
        if not v:
            kernel.append(comb)
    return kernel, len(piv)
