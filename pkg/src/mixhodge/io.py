"""JSON (de)serialization with a "kind" discriminator.

Rationals are strings "p/q"; Gaussian rationals are two-element arrays
[re, im] (a plain string is accepted for a real entry); SL2 elements are
lists of [exponents, scalar] pairs.  An algebra carries its Hodge types
either as per-vector bitypes or as a sparse Weil operator "weil".
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional

from . import __version__
from .dcoh import HodgeDiamond
from .filt import Filtration, RationalSpace, RealStructure
from .mhs import MixedStructure
from .rht.algebra import GCAlgebra
from .rht.lie import NilpotentDGLA
from .scalars import Gauss, Q, q_str

KINDS = ("filtration", "mixed-structure", "gc-algebra", "kahler-package", "hodge-diamond", "dgla-mc")


class SchemaError(ValueError):
    pass


def _need(obj: dict, key: str):
    if key not in obj:
        raise SchemaError(f"missing field {key!r}")
    return obj[key]


def rat(a) -> Fraction:
    if isinstance(a, bool) or not isinstance(a, (str, int)):
        raise SchemaError(f"rational expected as a string or integer, got {a!r}")
    try:
        return Q(a)
    except (ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"bad rational {a!r}") from e


def gauss(a) -> Gauss:
    if isinstance(a, list):
        if len(a) != 2:
            raise SchemaError("Gaussian scalar must be [re, im]")
        return Gauss(rat(a[0]), rat(a[1]))
    return Gauss(rat(a), 0)


def gauss_json(z) -> Any:
    z = Gauss.of(z)
    return q_str(z.re) if z.im == 0 else [q_str(z.re), q_str(z.im)]


def vec_json(v) -> list:
    return [gauss_json(a) for a in v]


def _sparse(entries, three: bool) -> list:
    out = []
    for e in entries:
        if not isinstance(e, list) or len(e) != (4 if three else 3):
            raise SchemaError(f"bad sparse entry {e!r}")
        out.append(tuple(int(x) for x in e[:-1]) + (rat(e[-1]),))
    return out


# ---------------------------------------------------------------------------
# filtrations and mixed structures


def filtration_from_json(dim: int, steps) -> Filtration:
    st = {}
    for item in steps:
        p, vecs = item
        vs = [[gauss(a) for a in v] for v in vecs]
        for v in vs:
            if len(v) != dim:
                raise SchemaError("filtration vector has the wrong length")
        st[int(p)] = vs
    return Filtration.make(dim, st)


def filtration_to_json(F: Filtration) -> list:
    return [[p, [vec_json(r) for r in S]] for p, S in F.steps]


def load_filtration(obj: dict):
    dim = int(_need(obj, "dim"))
    V = RationalSpace(dim, tuple(obj.get("labels", ())))
    F = filtration_from_json(dim, _need(obj, "steps"))
    sigma = None
    if obj.get("conj") is not None:
        sigma = RealStructure(tuple(tuple(gauss(a) for a in r) for r in obj["conj"]))
        sigma.validate()
    return V, F, sigma


def mixed_from_json(obj: dict) -> MixedStructure:
    dim = int(_need(obj, "dim"))
    W = {}
    for n, vecs in _need(obj, "W"):
        W[int(n)] = [[rat(a) for a in v] for v in vecs]
    F = filtration_from_json(dim, _need(obj, "F"))
    Fm = filtration_from_json(dim, obj["Fminus"]) if obj.get("Fminus") is not None else None
    return MixedStructure.make(dim, W, F, Fm, obj.get("type", "MHS"), obj.get("labels", ()))


def mixed_to_json(M: MixedStructure) -> dict:
    out = {"kind": "mixed-structure", "type": M.kind, "dim": M.dim,
           "W": [[n, [[q_str(a) for a in r] for r in S]] for n, S in M.W],
           "F": filtration_to_json(M.F)}
    if M.labels:
        out["labels"] = list(M.labels)
    if M.Fminus is not None:
        out["Fminus"] = filtration_to_json(M.Fminus)
    return out


# ---------------------------------------------------------------------------
# algebras and packages


def algebra_from_json(obj: dict) -> GCAlgebra:
    labels = list(_need(obj, "labels"))
    degrees = [int(d) for d in _need(obj, "degrees")]
    if len(labels) != len(degrees):
        raise SchemaError("labels and degrees differ in length")
    bt = obj.get("bitypes")
    bitypes = [tuple(int(x) for x in t) for t in bt] if bt is not None else None
    prods = _sparse(obj.get("products", []), True)
    d = _sparse(obj.get("d", []), False)
    n = len(degrees)
    for e in prods + d:
        if any(not 0 <= i < n for i in e[:-1]):
            raise SchemaError("basis index out of range")
    A = GCAlgebra.build(labels, degrees, prods, d, unit=int(obj.get("unit", 0)), bitypes=bitypes,
                        symmetric=bool(obj.get("symmetric", False)))
    if obj.get("weil") is not None:
        A.weil = _op_from(obj["weil"])
    return A


def algebra_to_json(A: GCAlgebra) -> dict:
    prods = [[i, j, k, q_str(c)] for (i, j), v in sorted(A.product.items()) for k, c in sorted(v.items())
             if A.unit not in (i, j)]
    d = [[i, k, q_str(c)] for i, v in sorted(A.d.items()) for k, c in sorted(v.items())]
    out = {"kind": "gc-algebra", "labels": list(A.labels), "degrees": list(A.degrees), "unit": A.unit,
           "products": prods, "d": d}
    if A.bitypes is not None:
        out["bitypes"] = [list(t) for t in A.bitypes]
    if A.weil is not None:
        out["weil"] = _op_json(A.weil)
    return out


def _op_json(op: Dict[int, Dict[int, Fraction]]) -> list:
    return [[i, k, q_str(c)] for i, v in sorted(op.items()) for k, c in sorted(v.items()) if c]


def _op_from(entries) -> Dict[int, Dict[int, Fraction]]:
    out: Dict[int, Dict[int, Fraction]] = {}
    for i, k, c in _sparse(entries, False):
        out.setdefault(i, {})[k] = out.get(i, {}).get(k, 0) + c
    return out


def package_to_json(P) -> dict:
    return {"kind": "kahler-package", "name": P.name, "algebra": algebra_to_json(P.A),
            "gram": [[q_str(a) for a in r] for r in P.gram], "dc": _op_json(P.dc), "lambda": _op_json(P.lam),
            "x0": [[i, q_str(a)] for i, a in sorted(P.x0_vec.items())]}


def package_from_json(obj: dict):
    from .kahler.package import KahlerPackage
    A = algebra_from_json(_need(obj, "algebra"))
    gram = [[rat(a) for a in r] for r in _need(obj, "gram")]
    if len(gram) != A.dim or any(len(r) != A.dim for r in gram):
        raise SchemaError("Gram matrix has the wrong shape")
    x0 = {int(i): rat(a) for i, a in obj["x0"]} if obj.get("x0") is not None else None
    return KahlerPackage(obj.get("name", "package"), A, gram, _op_from(obj.get("dc", [])),
                         _op_from(obj.get("lambda", [])), x0)


# ---------------------------------------------------------------------------
# diamonds and Maurer-Cartan data


def diamond_from_json(obj: dict) -> HodgeDiamond:
    h = {}
    for e in _need(obj, "h"):
        p, q, v = (int(x) for x in e)
        h[(p, q)] = v
    return HodgeDiamond.make(int(_need(obj, "n")), h)


def diamond_to_json(h: HodgeDiamond) -> dict:
    return {"kind": "hodge-diamond", "n": h.n, "h": [[p, q, v] for (p, q), v in h.h]}


def dgla_from_json(obj: dict):
    """A nilpotent DGLA with a Maurer-Cartan element and a gauge parameter."""
    labels = list(_need(obj, "labels"))
    degrees = [int(d) for d in _need(obj, "degrees")]
    table: Dict = {}
    for i, j, k, c in _sparse(obj.get("brackets", []), True):
        table.setdefault((i, j), {})[k] = c
    L = NilpotentDGLA(labels, degrees, table, _op_from(obj.get("d", [])), obj.get("nil_class"))
    vec = lambda key: {int(i): rat(a) for i, a in obj.get(key, [])}
    return L, vec("omega"), vec("gauge")


def dgla_to_json(L: NilpotentDGLA, omega, gauge=None) -> dict:
    return {"kind": "dgla-mc", "labels": list(L.labels), "degrees": list(L.degrees),
            "brackets": [[i, j, k, q_str(c)] for (i, j), v in sorted(L.bracket_table.items())
                         for k, c in sorted(v.items()) if c],
            "d": _op_json(L.d), "nil_class": L.nil_class,
            "omega": [[i, q_str(a)] for i, a in sorted(omega.items())],
            "gauge": [[i, q_str(a)] for i, a in sorted((gauge or {}).items())]}


# ---------------------------------------------------------------------------


def parse(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"not JSON: {e}") from e
    if not isinstance(obj, dict) or obj.get("kind") not in KINDS:
        raise SchemaError(f"input needs a 'kind' among {', '.join(KINDS)}")
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def input_hash(text: Optional[str]) -> Optional[str]:
    return hashlib.sha256(text.encode()).hexdigest() if text is not None else None


def provenance(text: Optional[str], options: Dict[str, Any]) -> dict:
    return {"input_sha256": input_hash(text), "version": __version__, "options": options}
