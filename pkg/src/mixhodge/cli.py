"""Command-line front end.

Exit codes: 0 pass, 1 mathematical failure, 2 input or schema error,
3 internal error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from . import io
from .dcoh import DiamondError, archimedean_hilbert, deligne_table, rjc_cone_check
from .filt import FiltrationError, is_pure_hodge, rees_jumps
from .fixtures import NAMES, make_fixture
from .kahler.monodromy import MonodromyError, monodromy, pi4_structure, restrict_to_S
from .kahler.package import PackageError, validate_package
from .kahler.twisted import formality_zigzag
from .mhs import (MHSError, bundle_type, check_opposedness, hodge_numbers, s_split,
                  verify_splitting)
from .rht.algebra import AlgebraError, cohomology_ring
from .rht.bar import homotopy_groups, pi3_formula
from .rht.lie import gauge_act, mc_check
from .scalars import Gauss, SL2Elem, SPoly, q_str

PASS, FAIL, INPUT, INTERNAL = 0, 1, 2, 3
MATH_ERRORS = (MHSError, FiltrationError, AlgebraError, PackageError, DiamondError)


class InputError(Exception):
    pass


def jsonable(x: Any) -> Any:
    """Exact, deterministic JSON image of a payload."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return q_str(x)
    if isinstance(x, Gauss):
        return io.gauss_json(x)
    if isinstance(x, SL2Elem):
        return str(x) if x else "0"
    if isinstance(x, SPoly):
        return [q_str(Fraction(c)) if not isinstance(c, Gauss) else io.gauss_json(c) for c in x.coeffs]
    if isinstance(x, dict):
        return {(",".join(str(k) for k in key) if isinstance(key, tuple) else str(key)): jsonable(v)
                for key, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


# ---------------------------------------------------------------------------
# input loading


def _load(args) -> tuple:
    if args.fixture:
        try:
            obj = make_fixture(args.fixture)
        except KeyError as e:
            raise InputError(f"{e.args[0]}; known fixtures: {NAMES}") from e
        text = io.dumps(obj)
    elif args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise InputError(f"cannot read {args.input}: {e.strerror}") from e
        obj = io.parse(text)
    else:
        raise InputError("give an input file or --fixture NAME")
    return obj, text


def _want(obj: dict, *kinds: str) -> None:
    if obj["kind"] not in kinds:
        raise InputError(f"expected kind {' or '.join(kinds)}, got {obj['kind']}")


def _algebra(obj: dict):
    _want(obj, "gc-algebra", "kahler-package")
    if obj["kind"] == "kahler-package":
        return io.algebra_from_json(obj["algebra"])
    return io.algebra_from_json(obj)


def _package(obj: dict):
    _want(obj, "kahler-package")
    return io.package_from_json(obj)


def _points(spec: Optional[str]):
    if not spec:
        return None
    pts = []
    for item in spec.split(";"):
        vals = [Fraction(t) for t in item.split(",")]
        if len(vals) != 4:
            raise InputError(f"a point needs four coordinates u,v,x,y: {item!r}")
        pts.append(tuple(vals))
    return pts


# ---------------------------------------------------------------------------
# commands; each returns (ok, payload)


def cmd_validate(obj, args):
    kind = obj["kind"]
    if kind == "filtration":
        V, F, sigma = io.load_filtration(obj)
        out = {"kind": kind, "rees_jumps": rees_jumps(V, F)}
        if "weight" in obj:
            out["pure_hodge"] = is_pure_hodge(V, F, sigma, int(obj["weight"]))
            return out["pure_hodge"], out
        return True, out
    if kind == "mixed-structure":
        M = io.mixed_from_json(obj)
        ok, viol = check_opposedness(M)
        out = {"kind": kind, "type": M.kind, "opposed": ok, "violations": [list(v) for v in viol]}
        if ok:
            out["hodge_numbers"] = hodge_numbers(M)
        return ok, out
    if kind == "gc-algebra":
        A = io.algebra_from_json(obj)
        fails = A.validate(require_connected=False, d_preserves_types=False)
        return not fails, {"kind": kind, "failures": fails, "dim": A.dim}
    if kind == "kahler-package":
        return cmd_kahler_validate(obj, args)
    if kind == "hodge-diamond":
        h = io.diamond_from_json(obj)
        return True, {"kind": kind, "n": h.n, "betti": {m: h.betti(m) for m in range(2 * h.n + 1)}}
    L, w, _ = io.dgla_from_json(obj)
    ok = mc_check(L, w)
    return ok, {"kind": kind, "maurer_cartan": ok}


def cmd_rees(obj, args):
    _want(obj, "filtration")
    V, F, _ = io.load_filtration(obj)
    return True, {"jumps": rees_jumps(V, F), "dims": F.dims()}


def cmd_split_mhs(obj, args):
    _want(obj, "mixed-structure")
    M = io.mixed_from_json(obj)
    cert = s_split(M, M.kind)
    ok = verify_splitting(M, cert)
    return ok, {"verified": ok, "degree": cert.degree(), "weights": cert.weights,
                "basis": cert.B, "correction": cert.A}


def cmd_bundle_type(obj, args):
    _want(obj, "mixed-structure")
    return True, {"slopes": bundle_type(io.mixed_from_json(obj))}


def cmd_homotopy(obj, args):
    A = _algebra(obj)
    return True, {"n_max": args.n_max, "groups": homotopy_groups(A, args.n_max)}


def cmd_pi3(obj, args):
    A = _algebra(obj)
    formula = pi3_formula(A)
    bar = homotopy_groups(A, 3)[3]
    ok = formula["dim"] == bar["dim"]
    return ok, {"formula": formula, "bar": bar, "equal": ok}


def cmd_pi4(obj, args):
    P = _package(obj)
    st = pi4_structure(P)
    # packages are formal, so the bar homology of H(A) is the oracle
    bar = homotopy_groups(cohomology_ring(P.A)[0], 4)[4]["dim"]
    ok = st["dim"] == bar and all(st[k] == st["brute"][k] for k in ("C", "L", "K"))
    keep = ("C", "L", "K", "dim", "brute", "alpha_prime", "alpha_prime_nonzero", "presentation_K", "split")
    return ok, {**{k: st[k] for k in keep}, "bar_dim": bar, "consistent": ok}


def cmd_mc_gauge(obj, args):
    _want(obj, "dgla-mc")
    L, w, g = io.dgla_from_json(obj)
    before = mc_check(L, w)
    if not before:
        return False, {"maurer_cartan": False}
    moved = gauge_act(L, g, w, check=False)
    after = mc_check(L, moved)
    return after, {"maurer_cartan": True, "moved": dict(sorted(moved.items())), "moved_is_mc": after}


def cmd_kahler_validate(obj, args):
    P = _package(obj)
    r = validate_package(P)
    return r["ok"], {"kind": "kahler-package", **r}


def cmd_formality(obj, args):
    P = _package(obj)
    try:
        r = formality_zigzag(P, _points(args.points))
    except ValueError as e:
        raise InputError(str(e)) from e
    return r["ok"], r


def cmd_monodromy(obj, args):
    P = _package(obj)
    res = monodromy(P, args.n_max, args.convention)
    out = res.to_json()
    s = restrict_to_S(res, 3)
    out["restrict_to_S"] = {k: s[k] for k in ("dim", "lengths", "kernel", "kernel_dim", "split", "degree_bound")}
    return res.ok, out


def cmd_deligne(obj, args):
    _want(obj, "hodge-diamond")
    h = io.diamond_from_json(obj)
    rows = deligne_table(h)
    ok = all(a == b for _, _, a, b in rows)
    return ok, {"n": h.n, "rows": [{"m": m, "a": a, "sequence": s, "split": t} for m, a, s, t in rows]}


def cmd_archimedean(obj, args):
    _want(obj, "hodge-diamond")
    h = io.diamond_from_json(obj)
    if args.window is None:
        raise InputError("archimedean needs --window (a monomial degree bound)")
    series = {q: archimedean_hilbert(h, q, args.window) for q in range(2 * h.n + 1)}
    cone = rjc_cone_check(args.window)
    return bool(cone["ok"]), {"window": args.window, "series": series, "cone": cone}


COMMANDS: Dict[str, Callable] = {
    "validate": cmd_validate, "rees": cmd_rees, "split-mhs": cmd_split_mhs, "bundle-type": cmd_bundle_type,
    "homotopy": cmd_homotopy, "pi3": cmd_pi3, "pi4": cmd_pi4, "mc-gauge": cmd_mc_gauge,
    "kahler-validate": cmd_kahler_validate, "formality": cmd_formality, "monodromy": cmd_monodromy,
    "deligne": cmd_deligne, "archimedean": cmd_archimedean,
}


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mixhodge", description="Exact mixed Hodge and rational homotopy computations.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("input", nargs="?", help="JSON input file")
        s.add_argument("--fixture", help="use a named fixture instead of a file")
        s.add_argument("--out", help="write the report here instead of standard output")
        s.add_argument("--n-max", type=int, default=3, dest="n_max")
        s.add_argument("--window", type=int)
        s.add_argument("--points", help="SL2 points u,v,x,y separated by ';'")
        s.add_argument("--convention", choices=("koszul", "literal"), default="koszul")
    m = sub.add_parser("make-fixture")
    m.add_argument("name", help=NAMES)
    m.add_argument("--out")
    return p


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _options(args) -> dict:
    return {k: getattr(args, k) for k in ("n_max", "window", "points", "convention", "fixture")
            if getattr(args, k, None) is not None}


def run(argv: Optional[List[str]] = None) -> int:
    args = parser().parse_args(argv)
    if args.command == "make-fixture":
        try:
            _emit(io.dumps(make_fixture(args.name)), args.out)
        except KeyError as e:
            print(f"error: {e.args[0]}; known fixtures: {NAMES}", file=sys.stderr)
            return INPUT
        return PASS
    text = None
    try:
        obj, text = _load(args)
        ok, payload = COMMANDS[args.command](obj, args)
        status, code = ("pass", PASS) if ok else ("fail", FAIL)
        report = {"command": args.command, "status": status, "payload": jsonable(payload)}
    except (InputError, io.SchemaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT
    except (MonodromyError, *MATH_ERRORS) as e:
        code = FAIL
        report = {"command": args.command, "status": "fail", "payload": {"error": str(e)}}
    except (ValueError, KeyError, TypeError, IndexError) as e:
        if text is not None and isinstance(e, (KeyError, TypeError, IndexError)):
            print(f"error: malformed input ({type(e).__name__}: {e})", file=sys.stderr)
            return INPUT
        print(f"error: {e}", file=sys.stderr)
        return INPUT if isinstance(e, ValueError) else INTERNAL
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return INTERNAL
    report["provenance"] = io.provenance(text, _options(args))
    _emit(io.dumps(report), args.out)
    return code


def main() -> None:
    sys.exit(run())
