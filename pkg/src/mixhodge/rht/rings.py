"""Cohomology rings used as fixtures."""
from __future__ import annotations

from typing import Dict, List, Tuple

from .algebra import GCAlgebra, tensor_algebra


def sphere2() -> GCAlgebra:
    return GCAlgebra.build(["1", "h"], [0, 2], bitypes=[(0, 0), (1, 1)])


def proj_plane() -> GCAlgebra:
    return GCAlgebra.build(["1", "h", "h2"], [0, 2, 4], [(1, 1, 2, 1)], bitypes=[(0, 0), (1, 1), (2, 2)])


def k3() -> GCAlgebra:
    """Unit, 22 classes in degree 2, a top class.

    The (2,0)+(0,2) plane is spanned by e1, e2 with e1^2 = e2^2 = w; on the
    twenty (1,1) classes the form is diag(1, -1, ..., -1).  Signature (3, 19).
    """
    labels = ["1", "e1", "e2"] + [f"c{i}" for i in range(1, 21)] + ["w"]
    degrees = [0] + [2] * 22 + [4]
    top = 23
    form = [1, 1, 1] + [-1] * 19
    prods = [(i, i, top, form[i - 1]) for i in range(1, 23)]
    bitypes = [(0, 0), (2, 0), (0, 2)] + [(1, 1)] * 20 + [(2, 2)]
    return GCAlgebra.build(labels, degrees, prods, bitypes=bitypes)


def elliptic() -> GCAlgebra:
    """Exterior algebra on a, b of degree 1; a + ib has type (1, 0)."""
    return GCAlgebra.build(["1", "a", "b", "ab"], [0, 1, 1, 2], [(1, 2, 3, 1)],
                           bitypes=[(0, 0), (1, 0), (0, 1), (1, 1)])


def formal_ring(n: int, h: Dict[Tuple[int, int], int]) -> GCAlgebra:
    """Hodge-graded ring with the given diamond and all products zero."""
    labels: List[str] = ["1"]
    degrees = [0]
    bitypes = [(0, 0)]
    hh = dict(h)
    for m in range(0, 2 * n + 1):
        for p in range(m, -1, -1):
            q = m - p
            if p < q:
                continue
            count = hh.get((p, q), 0) - (1 if (p, q) == (0, 0) else 0)
            for c in range(count):
                if p == q:
                    labels.append(f"x{p}{q}_{c}")
                    degrees.append(m)
                    bitypes.append((p, p))
                else:
                    labels += [f"x{p}{q}_{c}", f"x{q}{p}_{c}"]
                    degrees += [m, m]
                    bitypes += [(p, q), (q, p)]
    return GCAlgebra.build(labels, degrees, bitypes=bitypes)


RINGS = {
    "sphere2": sphere2,
    "proj-plane": proj_plane,
    "k3": k3,
    "elliptic": elliptic,
}


def ring_by_name(name: str) -> GCAlgebra:
    if name.startswith("tensor(") and name.endswith(")"):
        a, b = _split_args(name[len("tensor("):-1])
        return tensor_algebra(ring_by_name(a), ring_by_name(b))
    if name not in RINGS:
        raise KeyError(f"unknown ring fixture {name!r}")
    return RINGS[name]()


def _split_args(s: str) -> Tuple[str, str]:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return s[:i].strip(), s[i + 1:].strip()
    raise KeyError(f"tensor fixture needs two arguments: {s!r}")
