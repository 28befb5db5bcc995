"""Rational homotopy engine."""
from typing import Dict, List, Sequence

from .algebra import AlgebraError, GCAlgebra, cohomology_dims, cohomology_ring, tensor_algebra
from .bar import (HarrisonComplex, HomotopyLie, bar_construction, colie_basis, colie_dims,
                  homotopy_groups, pi3_formula)
from .lie import NilpotentDGLA, bch, chevalley_eilenberg, dual_lie_algebra, gauge_act, mc_check, round_trip


def validate_algebra(A: GCAlgebra) -> Dict[str, object]:
    """Report on the graded-commutative algebra axioms and connectivity."""
    fails = A.validate(require_connected=True, d_preserves_types=A.bitypes is not None)
    return {"ok": not fails, "failures": fails, "simply_connected": not fails and A.is_simply_connected()}


def whitehead_bracket(A: GCAlgebra, m: int, xi: Sequence, n: int, eta: Sequence) -> List:
    """[xi, eta] in pi_{m+n-1} for classes given in the basis of homotopy_groups."""
    return HomotopyLie(HarrisonComplex(A, m + n)).bracket(m, xi, n, eta)
