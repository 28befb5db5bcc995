"""Generator library of Kähler packages."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List

from .. import linalg as la
from ..rht.algebra import GCAlgebra, tensor_algebra
from ..rht.rings import _split_args, elliptic, formal_ring, ring_by_name
from .package import KahlerPackage, PackageError


def formal_package(A: GCAlgebra, name: str = "formal") -> KahlerPackage:
    """d = dc = 0, Lambda = 0, orthonormal metric."""
    if A.d and any(A.d.values()):
        raise PackageError("formal packages need d = 0")
    return KahlerPackage(name, A, la.identity(A.dim))


def elliptic_package() -> KahlerPackage:
    """Invariant forms on an elliptic curve; Lambda contracts with a^b."""
    A = elliptic()
    return KahlerPackage("elliptic", A, la.identity(4), lam={3: {0: Fraction(1)}})


def acyclic_square(p: int = 0) -> KahlerPackage:
    """Adjoin e of type (p, p) with de, d^c e and dd^c e; all products zero.

    Basis 1, e, y = d^c e, x = de, z = dd^c e; y + ix is 2i(del e), of type
    (p+1, p).  With the orthonormal metric, Lambda z = e.
    """
    deg = [0, 2 * p, 2 * p + 1, 2 * p + 1, 2 * p + 2]
    bt = [(0, 0), (p, p), (p + 1, p), (p, p + 1), (p + 1, p + 1)]
    A = GCAlgebra.build(["1", "e", "y", "x", "z"], deg, d=[(1, 3, 1), (2, 4, 1)], bitypes=bt)
    dc = {1: {2: Fraction(1)}, 3: {4: Fraction(-1)}}
    return KahlerPackage("acyclic-square" if p == 0 else f"acyclic-square({p})", A, la.identity(5), dc,
                         {4: {1: Fraction(1)}})


def acyclic_square_pi4() -> KahlerPackage:
    """Simply connected package with a nonzero Massey-type pi_4 monodromy.

    Harmonic classes a, b (degree 2) and t (degree 4); the square e, de, d^c e,
    dd^c e sits in degrees 2-4 with ab = dd^c e and ea = t.
    """
    labels = ["1", "a", "b", "e", "y", "x", "z", "t"]
    deg = [0, 2, 2, 2, 3, 3, 4, 4]
    bt = [(0, 0), (1, 1), (1, 1), (1, 1), (2, 1), (1, 2), (2, 2), (2, 2)]
    A = GCAlgebra.build(labels, deg, [(1, 2, 6, 1), (3, 1, 7, 1)], d=[(3, 5, 1), (4, 6, 1)], bitypes=bt)
    dc = {3: {4: Fraction(1)}, 5: {6: Fraction(-1)}}
    return KahlerPackage("acyclic-square-pi4", A, la.identity(8), dc, {6: {3: Fraction(1)}})


def torus_twisted(c: Fraction = Fraction(1)) -> KahlerPackage:
    """Torus-like package whose basepoint sees the Green operator.

    Harmonic 1, a, b, w with ab = w + dd^c e; the function e has e(x0) = c,
    and e - c is square-zero.  For c != 0 the length-two part of gamma is
    nonzero.
    """
    c = Fraction(c)
    labels = ["1", "e", "a", "b", "y", "x", "w", "z"]
    deg = [0, 0, 1, 1, 1, 1, 2, 2]
    bt = [(0, 0), (0, 0), (1, 0), (0, 1), (1, 0), (0, 1), (1, 1), (1, 1)]
    prods = [(2, 3, 6, 1), (2, 3, 7, 1), (1, 1, 1, 2 * c), (1, 1, 0, -c * c)]
    prods += [(1, k, k, c) for k in range(2, 8)]
    A = GCAlgebra.build(labels, deg, prods, d=[(1, 5, 1), (4, 7, 1)], bitypes=bt)
    dc = {1: {4: Fraction(1)}, 5: {7: Fraction(-1)}}
    lam = {6: {0: Fraction(1)}, 7: {1: Fraction(1)}}
    return KahlerPackage("torus-twisted", A, la.identity(8), dc, lam, x0={0: Fraction(1), 1: c})


def _kron(M: List[list], N: List[list]) -> List[list]:
    return [[a * b for a in ra for b in rb] for ra in M for rb in N]


def tensor_package(P: KahlerPackage, Q: KahlerPackage) -> KahlerPackage:
    """Product package: Koszul-signed d, dc; Lambda = Lambda_P + Lambda_Q."""
    A = tensor_algebra(P.A, Q.A)
    m = Q.n
    dc: Dict[int, Dict[int, Fraction]] = {}
    lam: Dict[int, Dict[int, Fraction]] = {}

    def put(op, src, tgt, c):
        col = op.setdefault(src, {})
        col[tgt] = col.get(tgt, 0) + c
        if not col[tgt]:
            del col[tgt]

    for i in range(P.n):
        for j in range(m):
            s = -1 if P.degrees[i] % 2 else 1
            for a, c in P.dc.get(i, {}).items():
                put(dc, i * m + j, a * m + j, c)
            for b, c in Q.dc.get(j, {}).items():
                put(dc, i * m + j, i * m + b, s * c)
            for a, c in P.lam.get(i, {}).items():
                put(lam, i * m + j, a * m + j, c)
            for b, c in Q.lam.get(j, {}).items():
                put(lam, i * m + j, i * m + b, c)
    x0 = {i * m + j: a * b for i, a in P.x0_vec.items() for j, b in Q.x0_vec.items()}
    return KahlerPackage(f"tensor({P.name},{Q.name})", A, _kron(P.gram, Q.gram),
                         {k: v for k, v in dc.items() if v}, {k: v for k, v in lam.items() if v}, x0)


PACKAGES: Dict[str, Callable[[], KahlerPackage]] = {
    "elliptic": elliptic_package,
    "acyclic-square": acyclic_square,
    "acyclic-square-pi4": acyclic_square_pi4,
    "torus-twisted": torus_twisted,
}


def package_by_name(name: str) -> KahlerPackage:
    """Names: elliptic, acyclic-square, acyclic-square-pi4, torus-twisted,
    formal(<ring>), tensor(<pkg>, <pkg>)."""
    name = name.strip()
    if name.startswith("tensor(") and name.endswith(")"):
        a, b = _split_args(name[len("tensor("):-1])
        return tensor_package(package_by_name(a), package_by_name(b))
    if name.startswith("formal(") and name.endswith(")"):
        ring = name[len("formal("):-1].strip()
        return formal_package(ring_by_name(ring), name)
    if name not in PACKAGES:
        raise KeyError(f"unknown package fixture {name!r}")
    return PACKAGES[name]()


def formal_from_diamond(n: int, h: Dict) -> KahlerPackage:
    return formal_package(formal_ring(n, h), "formal(diamond)")


SHIPPED = [
    "formal(sphere2)", "formal(proj-plane)", "formal(k3)", "elliptic", "acyclic-square",
    "acyclic-square-pi4", "torus-twisted", "tensor(elliptic,elliptic)",
    "tensor(elliptic,acyclic-square)", "tensor(formal(sphere2),acyclic-square)",
]
