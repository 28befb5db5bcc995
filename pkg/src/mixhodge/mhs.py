"""Mixed Hodge / mixed twistor structures and their S-splittings.

Polynomial matrices over S = Q[x] are lists of coefficient matrices
[M_0, M_1, ...] meaning sum_k M_k x^k.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg as la
from .filt import Filtration, FiltrationError, RealStructure, conjugate_filtration, gspan
from .scalars import Gauss, I


class MHSError(ValueError):
    pass


def qspan(vectors, dim):
    S = la.span([[Fraction(a) for a in v] for v in vectors], dim)
    return tuple(tuple(Fraction(a) for a in r) for r in S)


@dataclass(frozen=True)
class MixedStructure:
    dim: int
    W: Tuple[Tuple[int, tuple], ...]
    F: Filtration
    Fminus: Optional[Filtration] = None
    kind: str = "MHS"
    labels: Tuple[str, ...] = ()

    @staticmethod
    def make(dim, W: Dict[int, Sequence], F: Filtration, Fminus=None, kind="MHS", labels=()):
        if kind not in ("MHS", "MTS"):
            raise MHSError(f"unknown kind {kind!r}")
        st = tuple(sorted((int(n), qspan(vs, dim)) for n, vs in W.items()))
        M = MixedStructure(dim, st, F, Fminus, kind, tuple(labels))
        M.validate()
        return M

    def validate(self):
        if not self.W:
            raise MHSError("empty weight filtration")
        if len(self.W[-1][1]) != self.dim:
            raise MHSError("weight filtration is not exhaustive")
        for (n, A), (m, B) in zip(self.W, self.W[1:]):
            if not la.sub_le(A, B):
                raise MHSError(f"weight filtration not increasing at W_{m}")
        if self.F.dim != self.dim or (self.Fminus is not None and self.Fminus.dim != self.dim):
            raise MHSError("filtration dimension mismatch")
        if self.kind == "MHS" and self.Fminus is not None:
            if not self.Fminus.same_as(conjugate_filtration(self.F)):
                raise MHSError("for an MHS the second filtration must be the conjugate")

    def Wn(self, n: int):
        out = ()
        for m, S in self.W:
            if m <= n:
                out = S
        return out

    @property
    def weights(self) -> List[int]:
        """Weights n with gr^W_n nonzero."""
        out = []
        prev = 0
        for n, S in self.W:
            if len(S) > prev:
                out.append(n)
            prev = len(S)
        return out

    def Fbar(self) -> Filtration:
        return self.Fminus if self.Fminus is not None else conjugate_filtration(self.F)

    def twist(self, n: int) -> "MixedStructure":
        """Tate twist M(n): W_k(M(n)) = W_{k+2n}(M), F^p(M(n)) = F^{p+n}(M)."""
        W = tuple((m - 2 * n, S) for m, S in self.W)
        Fm = self.Fminus.shifted(n) if self.Fminus is not None else None
        return MixedStructure(self.dim, W, self.F.shifted(n), Fm, self.kind, self.labels)


def direct_sum(M1: MixedStructure, M2: MixedStructure) -> MixedStructure:
    d1, d2 = M1.dim, M2.dim
    dim = d1 + d2

    def pad(v, left):
        z1 = [0] * d1
        z2 = [0] * d2
        return (list(v) + z2) if left else (z1 + list(v))

    ns = sorted({n for n, _ in M1.W} | {n for n, _ in M2.W})
    W = {n: [pad(v, True) for v in M1.Wn(n)] + [pad(v, False) for v in M2.Wn(n)] for n in ns}

    def fsum(F1, F2):
        ps = sorted({p for p, _ in F1.steps} | {p for p, _ in F2.steps})
        lo = ps[0]
        steps = {}
        for p in ps:
            a = F1(p) if p >= F1.p_min else tuple(tuple(r) for r in la.identity(d1))
            b = F2(p) if p >= F2.p_min else tuple(tuple(r) for r in la.identity(d2))
            steps[p] = [pad(v, True) for v in a] + [pad(v, False) for v in b]
        return Filtration.make(dim, steps)

    Fm = None
    if M1.Fminus is not None or M2.Fminus is not None:
        Fm = fsum(M1.Fbar(), M2.Fbar())
    return MixedStructure.make(dim, W, fsum(M1.F, M2.F), Fm, M1.kind)


# --- adapted coordinates ------------------------------------------------------


def adapted_basis(M: MixedStructure) -> Tuple[List[list], List[int]]:
    """Columns B and their weights: for each weight, standard vectors
    completing W_{n-1} inside W_n, expressed through W_n's RREF rows."""
    cols: List[list] = []
    wts: List[int] = []
    prev: tuple = ()
    for n, S in M.W:
        if len(S) == len(prev):
            continue
        cur = list(prev)
        for v in S:
            inside = la.sub_contains(la.span(cur, M.dim), v) if cur else not any(v)
            if not inside:
                cols.append(list(v))
                wts.append(n)
                cur.append(list(v))
        prev = S
    return cols, wts


def _coords(Binv, S):
    return [la.matvec(Binv, list(v)) for v in S]


def _block(wts, n):
    return [i for i, w in enumerate(wts) if w == n]


def _induced_on_gr(Fsub_coords, wts, n, dim):
    """Induced subspace on gr_n (block coordinates), from a subspace in
    adapted coordinates."""
    idx_le = [i for i, w in enumerate(wts) if w <= n]
    idx_gt = [i for i, w in enumerate(wts) if w > n]
    blk = _block(wts, n)
    # intersect with W_n: vectors whose coordinates of weight > n vanish
    if not Fsub_coords:
        return ()
    if idx_gt:
        rows = [[v[i] for v in Fsub_coords] for i in idx_gt]
        K = la.nullspace(rows, len(Fsub_coords))
        vecs = []
        for k in K:
            acc = [Fraction(0)] * dim
            for c, v in zip(k, Fsub_coords):
                if c:
                    acc = [a + c * b for a, b in zip(acc, v)]
            vecs.append(acc)
    else:
        vecs = [list(v) for v in Fsub_coords]
    return gspan([[v[i] for i in blk] for v in vecs], len(blk))


class Graded:
    """Induced filtrations on gr^W in adapted coordinates."""

    def __init__(self, M: MixedStructure, B=None, wts=None):
        if B is None:
            B, wts = adapted_basis(M)
        self.M = M
        self.B = B  # columns
        self.wts = wts
        Bm = la.transpose(B)
        self.Bmat = Bm
        self.Binv = la.inverse(Bm)
        self.Fb = M.Fbar()
        self.ns = sorted(set(wts))
        lo = min(M.F.p_min, self.Fb.p_min)
        hi = max(M.F.p_max, self.Fb.p_max) + 1
        self.prange = (lo, hi)
        self._cache = {}

    def coordsF(self, which, p):
        key = ("c", which, p)
        if key not in self._cache:
            F = self.M.F if which == "F" else self.Fb
            self._cache[key] = _coords(self.Binv, F(p))
        return self._cache[key]

    def gr(self, which, n, p):
        key = (which, n, p)
        if key not in self._cache:
            self._cache[key] = _induced_on_gr(self.coordsF(which, p), self.wts, n, self.M.dim)
        return self._cache[key]

    def bigraded(self, n) -> Dict[Tuple[int, int], int]:
        lo, hi = self.prange
        k = len(_block(self.wts, n))

        def d(i, j):
            A, Bs = self.gr("F", n, i), self.gr("Fb", n, j)
            if len(A) == k:
                return len(Bs)
            if len(Bs) == k:
                return len(A)
            return len(la.sub_intersect(A, Bs, k))

        out = {}
        for i in range(lo, hi + 1):
            for j in range(lo, hi + 1):
                g = d(i, j) - d(i + 1, j) - d(i, j + 1) + d(i + 1, j + 1)
                if g:
                    out[(i, j)] = g
        return out

    def F_gr(self, p):
        """F^p on gr^W V = direct sum of induced pieces, in block coordinates."""
        vecs = []
        for n in self.ns:
            blk = _block(self.wts, n)
            for v in self.gr("F", n, p):
                full = [Gauss(0)] * self.M.dim
                for i, a in zip(blk, v):
                    full[i] = a
                vecs.append(full)
        return gspan(vecs, self.M.dim)


def check_opposedness(M: MixedStructure):
    G = Graded(M)
    viol = []
    for n in G.ns:
        for (i, j), g in sorted(G.bigraded(n).items()):
            if i + j != n:
                viol.append((n, i, j, g))
    return (not viol), viol


def hodge_numbers(M: MixedStructure) -> Dict[Tuple[int, int], int]:
    ok, viol = check_opposedness(M)
    if not ok:
        raise MHSError(f"opposedness fails: {viol}")
    G = Graded(M)
    h: Dict[Tuple[int, int], int] = {}
    for n in G.ns:
        for k, g in G.bigraded(n).items():
            h[k] = h.get(k, 0) + g
    if M.kind == "MHS":
        for (p, q), v in h.items():
            if h.get((q, p), 0) != v:
                raise MHSError("Hodge numbers are not symmetric")
    return dict(sorted(h.items()))


def mts_underlying(M: MixedStructure) -> MixedStructure:
    return MixedStructure(M.dim, M.W, M.F, conjugate_filtration(M.F), "MTS", M.labels)


def bundle_type(M: MixedStructure) -> Dict[int, List[int]]:
    G = Graded(M)
    out = {}
    for n in G.ns:
        slopes = []
        for (i, j), g in sorted(G.bigraded(n).items()):
            slopes += [i + j] * g
        out[n] = sorted(slopes)
    return out


def gamma_filtration(M: MixedStructure, p: int):
    """gamma^p V = V intersected with F^p, as a rational subspace."""
    F = M.F(p)
    if not F:
        return ()
    # rational points of F^p are the real points of F^p meet its conjugate
    Fb = tuple(tuple(Gauss.of(a).conj() for a in r) for r in F)
    X = la.sub_intersect(F, Fb, M.dim)
    vecs = []
    for v in X:
        vecs.append([Gauss.of(a).re for a in v])
        vecs.append([Gauss.of(a).im for a in v])
    return qspan(vecs, M.dim)


# --- polynomial matrices ----------------------------------------------------


def pm_mul(A: List, B: List) -> List:
    if not A or not B:
        return []
    out = [None] * (len(A) + len(B) - 1)
    for i, a in enumerate(A):
        for j, b in enumerate(B):
            p = la.matmul(a, b)
            out[i + j] = p if out[i + j] is None else la.madd(out[i + j], p)
    return pm_trim(out)


def pm_add(A, B, s=1):
    n = max(len(A), len(B))
    dim = len((A or B)[0])
    Z = la.zeros(dim, dim)
    out = [la.madd(A[k] if k < len(A) else Z, B[k] if k < len(B) else Z, s) for k in range(n)]
    return pm_trim(out)


def pm_trim(A):
    A = list(A)
    while A and la.is_zero_matrix(A[-1]):
        A.pop()
    return A


def pm_identity(dim):
    return [la.identity(dim)]


def pm_inv_unipotent(A: List) -> List:
    """Inverse of a matrix I + nilpotent."""
    dim = len(A[0])
    Nn = pm_add(A, pm_identity(dim), -1)
    out = pm_identity(dim)
    term = pm_identity(dim)
    for _ in range(dim):
        term = [la.mscale(m, -1) for m in pm_mul(term, Nn)]
        if not term:
            break
        out = pm_add(out, term)
    return out


def pm_apply(A: List, vpoly: List[list]) -> List[list]:
    """Apply polynomial matrix to polynomial vector (list of coefficient vectors)."""
    if not A or not vpoly:
        return []
    out = [None] * (len(A) + len(vpoly) - 1)
    for i, a in enumerate(A):
        for j, v in enumerate(vpoly):
            w = la.matvec(a, v)
            out[i + j] = w if out[i + j] is None else [p + q for p, q in zip(out[i + j], w)]
    while out and not any(out[-1]):
        out.pop()
    return out


def taylor_coeffs(vpoly: List[list]) -> List[list]:
    """(x - i)-adic coefficients of a polynomial vector."""
    if not vpoly:
        return []
    dim = len(vpoly[0])
    out = []
    for J in range(len(vpoly)):
        acc = [Gauss(0)] * dim
        for k in range(J, len(vpoly)):
            c = comb(k, J) * (I ** (k - J))
            acc = [a + c * Gauss.of(b) for a, b in zip(acc, vpoly[k])]
        out.append(acc)
    return out


def level_basis(Fsub, lo, hi, dim):
    """Pairs (a, w) with w in F^a completing F^{a+1}; together a basis.

    Since S-multiples of w (x - i)^{p - a} generate F^p of a tensor with S,
    phi respects F as soon as phi(w) lies in F^a for each pair.
    """
    out = []
    cur = []
    for a in range(hi, lo - 1, -1):
        S = Fsub(a)
        for v in S:
            if not cur or not la.sub_contains(la.span(cur, dim), v):
                cur.append(list(v))
                out.append((a, list(v)))
    return out


def in_F_tensor_S(vpoly, Fsub, p) -> bool:
    """Whether v(x) lies in sum_a F^a (x - i)^{p - a}."""
    for J, c in enumerate(taylor_coeffs(vpoly)):
        if any(c) and not la.sub_contains(Fsub(p - J), c):
            return False
    return True


def times_x_minus_i(v: list, b: int) -> List[list]:
    """Constant complex vector times (x - i)^b as a polynomial vector."""
    dim = len(v)
    out = [[Gauss(0)] * dim]
    out[0] = [Gauss.of(a) for a in v]
    for _ in range(b):
        nxt = [[Gauss(0)] * dim for _ in range(len(out) + 1)]
        for k, c in enumerate(out):
            for i in range(dim):
                nxt[k + 1][i] = nxt[k + 1][i] + c[i]
                nxt[k][i] = nxt[k][i] - I * c[i]
        out = nxt
    return out


# --- splitting ---------------------------------------------------------------


@dataclass
class SplittingCertificate:
    B: List[list]  # columns: adapted basis of V
    weights: List[int]
    A: List  # polynomial correction in adapted coordinates, strictly W-lowering

    @property
    def dim(self):
        return len(self.weights)

    def phi(self) -> List:
        """phi = B (I + A(x)) as a polynomial matrix in V coordinates."""
        Bm = la.transpose(self.B)
        core = pm_add(pm_identity(self.dim), self.A) if self.A else pm_identity(self.dim)
        return pm_mul([Bm], core)

    def phi_inverse(self) -> List:
        Binv = la.inverse(la.transpose(self.B))
        core = pm_add(pm_identity(self.dim), self.A) if self.A else pm_identity(self.dim)
        return pm_mul(pm_inv_unipotent(core), [Binv])

    def degree(self) -> int:
        return len(self.A) - 1

    def compose(self, g: List) -> "SplittingCertificate":
        """Certificate for phi o g, g = I + lowering in adapted coordinates."""
        core = pm_add(pm_identity(self.dim), self.A) if self.A else pm_identity(self.dim)
        new = pm_mul(core, g)
        return SplittingCertificate(self.B, self.weights, pm_add(new, pm_identity(self.dim), -1))


def _lowering_positions(wts):
    return [(r, s) for r in range(len(wts)) for s in range(len(wts)) if wts[r] < wts[s]]


def s_split(M: MixedStructure, kind: str = "MHS", max_degree: Optional[int] = None) -> SplittingCertificate:
    if kind != "MHS" or M.kind != "MHS":
        raise MHSError("s_split requires an MHS")
    ok, viol = check_opposedness(M)
    if not ok:
        raise MHSError(f"opposedness fails: {viol}")
    G = Graded(M)
    dim = M.dim
    pos = _lowering_positions(G.wts)
    if not pos:
        return SplittingCertificate(G.B, G.wts, [])
    Fv = lambda p: _coords_span(G, p)
    pmin = M.F.p_min
    pmax = M.F.p_max
    # w of exact level a: phi(w) in F^a(V x S) implies every other condition
    gens = [(a, a, list(w)) for a, w in level_basis(G.F_gr, pmin, pmax, dim) if a > pmin]
    if max_degree is None:
        max_degree = 2 * (max(G.wts) - min(G.wts)) + (pmax - pmin) + 2
    ann_cache = {}

    def ann(r):
        if r not in ann_cache:
            ann_cache[r] = la.annihilator(Fv(r), dim)
        return ann_cache[r]

    for D in range(0, max_degree + 1):
        nv = (D + 1) * len(pos)
        var = {(k, r, s): k * len(pos) + t for k in range(D + 1) for t, (r, s) in enumerate(pos)}
        rows, rhs = [], []
        for p, a, w in gens:
            b = p - a
            for J in range(b, p - pmin):
                j = J - b
                for f in ann(p - J):
                    coeff = [Gauss(0)] * nv
                    const = Gauss(0)
                    if j == 0:
                        const = sum((Gauss.of(fi) * wi for fi, wi in zip(f, w)), Gauss(0))
                    for k in range(j, D + 1):
                        ck = comb(k, j) * (I ** (k - j))
                        for (r, s) in pos:
                            if w[s] and f[r]:
                                coeff[var[(k, r, s)]] = coeff[var[(k, r, s)]] + ck * Gauss.of(f[r]) * w[s]
                    for part in ("re", "im"):
                        row = {t: getattr(c, part) for t, c in enumerate(coeff) if getattr(c, part)}
                        cc = getattr(const, part)
                        if row or cc:
                            rows.append(row)
                            rhs.append(-cc)
        sol = la.sparse_solve(rows, rhs, nv)
        if sol is None:
            continue
        A = []
        for k in range(D + 1):
            Mk = la.zeros(dim, dim)
            for (r, s) in pos:
                Mk[r][s] = sol[var[(k, r, s)]]
            A.append(Mk)
        cert = SplittingCertificate(G.B, G.wts, pm_trim(A))
        return cert
    raise MHSError("no splitting found: internal solver failure or invalid input")


def _coords_span(G: Graded, p):
    key = ("span", p)
    if key not in G._cache:
        G._cache[key] = gspan(G.coordsF("F", p), G.M.dim)
    return G._cache[key]


def verify_splitting(M: MixedStructure, cert: SplittingCertificate) -> bool:
    """Independent re-check of the splitting conditions."""
    try:
        return _verify(M, cert)
    except (ZeroDivisionError, MHSError, FiltrationError, IndexError):
        return False


def _verify(M, cert):
    dim = M.dim
    B, wts = cert.B, cert.weights
    if len(B) != dim or len(wts) != dim:
        return False
    # B adapted to W
    for n in sorted(set(wts)):
        Wn, Wprev = M.Wn(n), M.Wn(n - 1)
        cols = [B[i] for i, w in enumerate(wts) if w == n]
        if not all(la.sub_contains(Wn, c) for c in cols):
            return False
        if la.rank([list(v) for v in Wprev] + cols) != len(Wprev) + len(cols):
            return False
        if len(Wn) != len([w for w in wts if w <= n]):
            return False
    phi = cert.phi()
    # coefficients real and phi = B mod lowering terms
    for Mk in phi:
        if any(isinstance(a, Gauss) and a.im for r in Mk for a in r):
            return False
    for k, Mk in enumerate(cert.A):
        for r in range(dim):
            for s in range(dim):
                if Mk[r][s] and not wts[r] < wts[s]:
                    return False
    # W preserved: column s of every coefficient lies in W_{wts[s]}
    for Mk in phi:
        for s in range(dim):
            col = [Mk[r][s] for r in range(dim)]
            if any(col) and not la.sub_contains(M.Wn(wts[s]), col):
                return False
    G = Graded(M, B, wts)
    Fgr = G.F_gr
    FV = lambda p: M.F(p)
    pmin, pmax = M.F.p_min, M.F.p_max
    inv = cert.phi_inverse()
    for a, w in level_basis(Fgr, pmin, pmax, dim):
        if not in_F_tensor_S(pm_apply(phi, [w]), FV, a):
            return False
    for a, w in level_basis(FV, pmin, pmax, dim):
        if not in_F_tensor_S(pm_apply(inv, [w]), Fgr, a):
            return False
    return True


def _block_diag_part(Mx, wts):
    out = la.zeros(len(wts), len(wts))
    for r in range(len(wts)):
        for s in range(len(wts)):
            if wts[r] == wts[s]:
                out[r][s] = Mx[r][s]
    return out


def splitting_difference(M: MixedStructure, cert1: SplittingCertificate, cert2: SplittingCertificate) -> List:
    """phi_2^{-1} phi_1, re-expressed on gr^W in cert1's coordinates.

    Raises unless the result is I + (strictly W-lowering, real,
    F-preserving) over S.
    """
    if cert1.weights != cert2.weights and sorted(cert1.weights) != sorted(cert2.weights):
        raise MHSError("certificates for different weight data")
    dim = M.dim
    raw = pm_mul(cert2.phi_inverse(), cert1.phi())
    Dm = _block_diag_part(raw[0], cert2.weights)
    # the induced map gr_1 -> gr_2 must be constant
    for Mk in raw[1:]:
        if not la.is_zero_matrix(_block_diag_part(Mk, cert2.weights)):
            raise MHSError("difference is not the identity on gr^W")
    g = pm_mul([la.inverse(Dm)], raw)
    wts = cert1.weights
    for k, Mk in enumerate(g):
        for r in range(dim):
            for s in range(dim):
                target = Fraction(int(r == s)) if k == 0 else Fraction(0)
                if wts[r] >= wts[s] and Mk[r][s] != target:
                    raise MHSError("difference is not unipotent and strictly W-lowering")
    G = Graded(M, cert1.B, wts)
    Fgr = lambda p: G.F_gr(p)
    for a, w in level_basis(Fgr, M.F.p_min, M.F.p_max, dim):
        if not in_F_tensor_S(pm_apply(g, [w]), Fgr, a):
            raise MHSError("difference does not preserve F")
    return g


def permuted(M: MixedStructure, perm: Sequence[int]) -> MixedStructure:
    """M expressed in permuted coordinates: new coordinate i is old perm[i]."""
    def pv(v):
        return [v[perm[i]] for i in range(len(perm))]

    W = {n: [pv(v) for v in S] for n, S in M.W}
    F = Filtration.make(M.dim, {p: [pv(v) for v in S] for p, S in M.F.steps})
    Fm = None
    if M.Fminus is not None:
        Fm = Filtration.make(M.dim, {p: [pv(v) for v in S] for p, S in M.Fminus.steps})
    return MixedStructure.make(M.dim, W, F, Fm, M.kind)


def unpermute_certificate(cert: SplittingCertificate, perm: Sequence[int]) -> SplittingCertificate:
    """Transport a certificate for permuted(M, perm) back to M."""
    dim = len(perm)
    B = []
    for col in cert.B:
        v = [Fraction(0)] * dim
        for i, a in enumerate(col):
            v[perm[i]] = a
        B.append(v)
    return SplittingCertificate(B, list(cert.weights), cert.A)


# --- generators -----------------------------------------------------------------


def pure_types(n: int, dim: int, rng) -> List[Tuple[int, int]]:
    """Random Hodge types of a real weight-n structure of the given dimension.

    Pairs (p, q), (q, p) with p > q are listed consecutively.
    """
    if n % 2 and dim % 2:
        raise MHSError("odd weight needs even dimension")
    out: List[Tuple[int, int]] = []
    left = dim
    while left:
        if n % 2 == 0 and (left == 1 or rng.random() < 0.4):
            out.append((n // 2, n // 2))
            left -= 1
        else:
            q = n // 2 - rng.randint(1, 2) + (n % 2)
            p = n - q
            out += [(p, q), (q, p)]
            left -= 2
    return out


def split_filtration(types: Sequence[Tuple[int, int]]) -> Dict[int, List[list]]:
    """F^r spanned by the type vectors: e_re + i e_im for (p, q), conjugate for (q, p)."""
    dim = len(types)
    vecs = []
    k = 0
    while k < dim:
        p, q = types[k]
        e = [Gauss(0)] * dim
        if p == q:
            e[k] = Gauss(1)
            vecs.append((p, e))
            k += 1
            continue
        z = [Gauss(0)] * dim
        zb = [Gauss(0)] * dim
        z[k], z[k + 1] = Gauss(1), Gauss(0, 1)
        zb[k], zb[k + 1] = Gauss(1), Gauss(0, -1)
        vecs.append((p, z))
        vecs.append((q, zb))
        k += 2
    ps = [p for p, _ in vecs]
    lo, hi = min(ps), max(ps)
    return {r: [v for p, v in vecs if p >= r] for r in range(lo, hi + 2)}


def random_mhs(rng, max_dim: int = 6, max_weights: int = 3, scramble: bool = True) -> MixedStructure:
    """A random real MHS: split pieces, then exp(i delta), then a basis change."""
    while True:
        k = rng.randint(1, max_weights)
        ws = sorted(rng.sample(range(-3, 4), k))
        dims = []
        for n in ws:
            d = rng.choice([2] if n % 2 else [1, 2])
            dims.append(d)
        if sum(dims) <= max_dim:
            break
    types = []
    wt = []
    for n, d in zip(ws, dims):
        types += pure_types(n, d, rng)
        wt += [n] * d
    dim = len(types)
    Fs = split_filtration(types)
    delta = la.zeros(dim, dim)
    for r in range(dim):
        for s in range(dim):
            if wt[r] < wt[s]:
                delta[r][s] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    E = [[Gauss(int(r == s)) for s in range(dim)] for r in range(dim)]
    term = E
    iD = [[Gauss(0, a) for a in row] for row in delta]
    for j in range(1, dim + 1):
        term = la.mscale(la.matmul(term, iD), Fraction(1, j))
        E = la.madd(E, term)
    if scramble:
        while True:
            g = [[Fraction(rng.randint(-2, 2)) for _ in range(dim)] for _ in range(dim)]
            if la.rank(g) == dim:
                break
    else:
        g = la.identity(dim)
    gE = la.matmul(g, E)
    F = Filtration.make(dim, {r: [la.matvec(gE, v) for v in vs] for r, vs in Fs.items()})
    W = {}
    for n in ws:
        W[n] = [la.matvec(g, [Fraction(int(i == s)) for i in range(dim)]) for s in range(dim) if wt[s] <= n]
    return MixedStructure.make(dim, W, F)


def cs_truncation() -> MixedStructure:
    """S mod x^2 in the basis (1, x), weight 0, F^p = (x - i)^p."""
    F = Filtration.make(2, {0: [[1, 0], [0, 1]], 1: [[Gauss(0, -1), Gauss(1)]], 2: []})
    return MixedStructure.make(2, {0: [[1, 0], [0, 1]]}, F)
