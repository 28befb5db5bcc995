"""Deligne and Archimedean cohomology dimensions from a Hodge diamond."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from . import linalg as la
from .scalars import SL2Elem, mono_weight, n_derive, normal_monomials


class DiamondError(ValueError):
    pass


@dataclass(frozen=True)
class HodgeDiamond:
    n: int
    h: Tuple[Tuple[Tuple[int, int], int], ...]

    @staticmethod
    def make(n: int, h: Dict[Tuple[int, int], int]) -> "HodgeDiamond":
        hh = {k: int(v) for k, v in h.items() if v}
        for (p, q), v in hh.items():
            if v < 0:
                raise DiamondError("negative Hodge number")
            if not (0 <= p <= n and 0 <= q <= n):
                raise DiamondError(f"h^{p},{q} outside the diamond")
            if hh.get((q, p), 0) != v:
                raise DiamondError(f"h^{p},{q} != h^{q},{p}")
        return HodgeDiamond(n, tuple(sorted(hh.items())))

    def __call__(self, p: int, q: int) -> int:
        return dict(self.h).get((p, q), 0)

    def betti(self, m: int) -> int:
        return sum(v for (p, q), v in self.h if p + q == m)


def deligne_dim_seq(h: HodgeDiamond, m: int, a: int) -> int:
    """Quotient of H^{m-1}_C by F^a + H_R, plus gamma^a H^m."""
    b = h.betti(m - 1)
    f = sum(h(p, m - 1 - p) for p in range(max(a, 0), m))
    g = sum(h(p, m - 1 - p) for p in range(max(a, 0), m) if m - 1 - p >= a)
    quot = max(b - 2 * f + g, 0)
    gam = sum(h(p, m - p) for p in range(max(a, 0), m + 1) if m - p >= a)
    return quot + gam


def deligne_dim_split(h: HodgeDiamond, m: int, a: int) -> int:
    first = sum(h(p, m - p) for p in range(0, m + 1) if p >= a and m - p >= a)
    second = sum(h(p, m - 1 - p) for p in range(0, m) if p < a and m - 1 - p < a)
    return first + second


def deligne_table(h: HodgeDiamond, a_range=None) -> List[Tuple[int, int, int, int]]:
    """Rows (m, a, seq, split)."""
    if a_range is None:
        a_range = range(-1, h.n + 2)
    return [(m, a, deligne_dim_seq(h, m, a), deligne_dim_split(h, m, a))
            for m in range(0, 2 * h.n + 1) for a in a_range]


def weight_counts(max_degree: int) -> Dict[int, int]:
    """dim of each weight piece of O(SL2) among monomials of degree <= max_degree."""
    out: Dict[int, int] = {}
    for m in normal_monomials(max_degree):
        w = mono_weight(m)
        out[w] = out.get(w, 0) + 1
    return dict(sorted(out.items()))


def archimedean_hilbert(h: HodgeDiamond, q: int, max_degree: int):
    """Weight series of H^q x O(SL2) and of the ker N / coker N pieces.

    The window is the set of normal-form monomials of degree <= max_degree.
    ker N is spanned by u^a v^b (weight -a-b); coker N is x^c y^d in the
    twist O(SL2)(-1), so x^c y^d sits in weight c + d + 2.
    """
    if max_degree is None or max_degree < 0:
        raise DiamondError("window must be a finite non-negative degree bound")
    b = h.betti(q)
    total = {r: b * c for r, c in weight_counts(max_degree).items()}
    ker: Dict[int, int] = {}
    coker: Dict[int, int] = {}
    for deg in range(max_degree + 1):
        ker[-deg] = b * (deg + 1)
        coker[deg + 2] = b * (deg + 1)
    return {"total": total, "ker_N": ker, "coker_N": coker}


def rjc_cone_check(max_degree: int) -> Dict[str, object]:
    """Check ker N and the coker complement inside the degree window."""
    if max_degree < 0:
        return {"ok": True, "window": 0, "kernel": [], "checks": {}}
    monos = list(normal_monomials(max_degree))
    idx = {m: i for i, m in enumerate(monos)}
    cols = []
    for m in monos:
        img = n_derive(SL2Elem({m: 1}, _raw=True))
        v = [Fraction(0)] * len(monos)
        for mm, c in img.terms.items():
            if mm not in idx:
                raise DiamondError("window is not closed under N")
            v[idx[mm]] = c
        cols.append(v)
    Nmat = la.transpose(cols)
    ker = la.nullspace(Nmat, len(monos))
    uv = [m for m in monos if m[2] == 0 and m[3] == 0]
    ker_ok = len(ker) == len(uv) and all(
        la.sub_contains(la.span(ker, len(monos)), [Fraction(int(mm == m)) for mm in monos]) for m in uv
    )
    xy = [m for m in monos if m[0] == 0 and m[1] == 0]
    img = la.span(cols, len(monos))
    comp = la.span(list(img) + [[Fraction(int(mm == m)) for mm in monos] for m in xy], len(monos))
    coker_ok = len(comp) == len(monos) and len(img) + len(xy) == len(monos)
    weight_ok = all(
        all(mono_weight(mm) == mono_weight(m) - 2 for mm in n_derive(SL2Elem({m: 1}, _raw=True)).terms)
        for m in monos
    )
    return {
        "ok": bool(ker_ok and coker_ok and weight_ok),
        "window": len(monos),
        "kernel_dim": len(ker),
        "checks": {"ker_is_uv": ker_ok, "coker_complement_xy": coker_ok, "N_lowers_weight_by_2": weight_ok},
    }
