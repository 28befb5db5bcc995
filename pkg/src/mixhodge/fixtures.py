"""Named input files for every command."""
from __future__ import annotations

import random
from typing import Dict

from . import io
from .dcoh import HodgeDiamond
from .filt import Filtration
from .kahler.fixtures import package_by_name, formal_from_diamond
from .mhs import MixedStructure, cs_truncation, pure_types, random_mhs, split_filtration
from .rht.lie import random_element, random_instance
from .rht.rings import RINGS, _split_args, ring_by_name

DIAMONDS: Dict[str, tuple] = {
    "point": (0, {(0, 0): 1}),
    "p1": (1, {(0, 0): 1, (1, 1): 1}),
    "elliptic": (1, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}),
    "p2": (2, {(0, 0): 1, (1, 1): 1, (2, 2): 1}),
    "k3": (2, {(0, 0): 1, (2, 0): 1, (0, 2): 1, (1, 1): 20, (2, 2): 1}),
    "abelian-surface": (2, {(0, 0): 1, (1, 0): 2, (0, 1): 2, (2, 0): 1, (1, 1): 4, (0, 2): 1,
                            (2, 1): 2, (1, 2): 2, (2, 2): 1}),
}

NAMES = (
    "sphere2, proj-plane, k3 (rings); elliptic, acyclic-square, acyclic-square-pi4, torus-twisted, "
    "formal(<ring>), formal-diamond(<diamond>), tensor(<pkg>,<pkg>) (Kähler packages); "
    "diamond(<name>) with names " + ", ".join(DIAMONDS) + "; mhs(split), mhs(cs-truncation), "
    "mhs(random:<seed>); filtration(pure:<weight>:<seed>); dgla(random:<seed>)"
)


def _arg(name: str, head: str) -> str:
    return name[len(head) + 1:-1].strip()


def diamond(name: str) -> HodgeDiamond:
    if name not in DIAMONDS:
        raise KeyError(f"unknown diamond {name!r}")
    n, h = DIAMONDS[name]
    return HodgeDiamond.make(n, h)


def split_mhs() -> MixedStructure:
    """Q(0) + Q(-1) + a weight-1 pair, all split."""
    types = [(0, 0), (1, 0), (0, 1), (1, 1)]
    F = Filtration.make(4, split_filtration(types))
    W = {0: [[1, 0, 0, 0]], 1: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
         2: [[1 if i == j else 0 for j in range(4)] for i in range(4)]}
    return MixedStructure.make(4, W, F)


def make_fixture(name: str) -> dict:
    """JSON object for a named fixture; raises KeyError for unknown names."""
    name = name.strip()
    if name in RINGS and name != "elliptic":
        return io.algebra_to_json(ring_by_name(name))
    if name.startswith("diamond(") and name.endswith(")"):
        return io.diamond_to_json(diamond(_arg(name, "diamond")))
    if name.startswith("formal-diamond(") and name.endswith(")"):
        h = diamond(_arg(name, "formal-diamond"))
        return io.package_to_json(formal_from_diamond(h.n, dict(h.h)))
    if name.startswith("mhs(") and name.endswith(")"):
        arg = _arg(name, "mhs")
        if arg == "split":
            return io.mixed_to_json(split_mhs())
        if arg == "cs-truncation":
            return io.mixed_to_json(cs_truncation())
        if arg.startswith("random:"):
            return io.mixed_to_json(random_mhs(random.Random(int(arg[7:]))))
        raise KeyError(f"unknown MHS fixture {name!r}")
    if name.startswith("filtration(") and name.endswith(")"):
        parts = _arg(name, "filtration").split(":")
        if len(parts) != 3 or parts[0] != "pure":
            raise KeyError(f"unknown filtration fixture {name!r}")
        n, seed = int(parts[1]), int(parts[2])
        rng = random.Random(seed)
        types = pure_types(n, 2 if n % 2 else rng.choice([1, 2, 3]), rng)
        F = Filtration.make(len(types), split_filtration(types))
        return {"kind": "filtration", "dim": F.dim, "weight": n, "steps": io.filtration_to_json(F)}
    if name.startswith("dgla(") and name.endswith(")"):
        arg = _arg(name, "dgla")
        if not arg.startswith("random:"):
            raise KeyError(f"unknown DGLA fixture {name!r}")
        rng = random.Random(int(arg[7:]))
        L, w = random_instance(rng)
        return io.dgla_to_json(L, w, random_element(rng, L, 0, 0.5))
    if name.startswith("tensor(") and name.endswith(")"):
        a, b = _split_args(_arg(name, "tensor"))
        if a in RINGS and b in RINGS and "elliptic" not in (a, b):
            return io.algebra_to_json(ring_by_name(name))
    return io.package_to_json(package_by_name(name))
