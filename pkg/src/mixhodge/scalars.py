"""Exact scalars: rationals, Gaussian rationals, polynomials in x, and O(SL2).

O(SL2) = Q[u,v,x,y]/(uy - vx - 1) is stored in the normal form where no
monomial contains both u and y.  Monomials are exponent tuples (a, b, c, d)
for u^a v^b x^c y^d.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, Mapping, Tuple, Union

Mono = Tuple[int, int, int, int]
Number = Union[int, Fraction]


def Q(x) -> Fraction:
    """Parse an int, Fraction or "p/q" string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def q_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Gauss:
    """Gaussian rational re + i*im."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Q(re) if not isinstance(re, Fraction) else re
        self.im = Q(im) if not isinstance(im, Fraction) else im

    @staticmethod
    def of(z) -> "Gauss":
        if isinstance(z, Gauss):
            return z
        return Gauss(Q(z), Fraction(0))

    def conj(self) -> "Gauss":
        return Gauss(self.re, -self.im)

    def __add__(self, o):
        o = Gauss.of(o)
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = Gauss.of(o)
        return Gauss(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return Gauss.of(o) - self

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __mul__(self, o):
        if isinstance(o, Gauss):
            return Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
        o = Q(o)
        return Gauss(self.re * o, self.im * o)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = Gauss.of(o)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("Gaussian division by zero")
        return self * Gauss(o.re / n, -o.im / n)

    def __rtruediv__(self, o):
        return Gauss.of(o) / self

    def __pow__(self, k: int):
        r = Gauss(1)
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        if isinstance(o, Gauss):
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"Gauss({q_str(self.re)}, {q_str(self.im)})"

    def to_json(self):
        return [q_str(self.re), q_str(self.im)]

    @staticmethod
    def from_json(a) -> "Gauss":
        if isinstance(a, list):
            if len(a) != 2:
                raise ValueError("Gaussian scalar must be a 2-element array")
            return Gauss(Q(a[0]), Q(a[1]))
        return Gauss(Q(a), 0)


I = Gauss(0, 1)


# ---------------------------------------------------------------------------
# O(SL2)

_NAMES = "uvxy"
WEIGHTS = (-1, -1, 1, 1)


@lru_cache(maxsize=None)
def _normal_mono(m: Mono) -> Tuple[Tuple[Mono, int], ...]:
    """Rewrite u^a y^d with a, d > 0 using uy = vx + 1."""
    a, b, c, d = m
    k = min(a, d)
    if k == 0:
        return ((m, 1),)
    out = []
    # (vx + 1)^k = sum_j C(k, j) (vx)^j
    for j in range(k + 1):
        out.append(((a - k, b + j, c + j, d - k), comb(k, j)))
    return tuple(out)


@lru_cache(maxsize=None)
def _mono_mul(m1: Mono, m2: Mono) -> Tuple[Tuple[Mono, int], ...]:
    return _normal_mono(tuple(p + q for p, q in zip(m1, m2)))


def mono_weight(m: Mono) -> int:
    return -m[0] - m[1] + m[2] + m[3]


def mono_key(m: Mono):
    """Degree-lexicographic key in (u, v, x, y)."""
    return (sum(m), tuple(-e for e in m))


class SL2Elem:
    """Element of O(SL2) in uy-free normal form."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, Number] | None = None, *, _raw=False):
        if _raw:
            self.terms = terms
            return
        acc: Dict[Mono, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Q(c)
            if c == 0:
                continue
            for nm, k in _normal_mono(tuple(m)):
                acc[nm] = acc.get(nm, Fraction(0)) + k * c
        self.terms = {m: c for m, c in acc.items() if c != 0}

    @staticmethod
    def const(c) -> "SL2Elem":
        c = Q(c)
        return SL2Elem({(0, 0, 0, 0): c} if c else {}, _raw=True)

    @staticmethod
    def gen(name: str) -> "SL2Elem":
        m = [0, 0, 0, 0]
        m[_NAMES.index(name)] = 1
        return SL2Elem({tuple(m): Fraction(1)}, _raw=True)

    @staticmethod
    def of(z) -> "SL2Elem":
        return z if isinstance(z, SL2Elem) else SL2Elem.const(z)

    def is_zero(self) -> bool:
        return not self.terms

    __bool__ = lambda self: bool(self.terms)

    def __add__(self, o):
        o = SL2Elem.of(o)
        t = dict(self.terms)
        for m, c in o.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return SL2Elem(t, _raw=True)

    __radd__ = __add__

    def __neg__(self):
        return SL2Elem({m: -c for m, c in self.terms.items()}, _raw=True)

    def __sub__(self, o):
        return self + (-SL2Elem.of(o))

    def __rsub__(self, o):
        return SL2Elem.of(o) - self

    def scale(self, c) -> "SL2Elem":
        c = Q(c)
        if c == 0:
            return SL2Elem({}, _raw=True)
        return SL2Elem({m: v * c for m, v in self.terms.items()}, _raw=True)

    def __mul__(self, o):
        if not isinstance(o, SL2Elem):
            return self.scale(o)
        acc: Dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                c = c1 * c2
                for m, k in _mono_mul(m1, m2):
                    acc[m] = acc.get(m, 0) + k * c
        return SL2Elem({m: c for m, c in acc.items() if c}, _raw=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        r = SL2Elem.const(1)
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = SL2Elem.const(o)
        if not isinstance(o, SL2Elem):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]))

    def evaluate(self, u, v, x, y):
        tot = 0
        for (a, b, c, d), k in self.terms.items():
            tot = tot + k * (u ** a) * (v ** b) * (x ** c) * (y ** d)
        return tot

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(_NAMES, m) if e
            )
            if not mono:
                parts.append(q_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{q_str(c)}*{mono}")
        return " + ".join(parts)

    def to_json(self):
        return [[list(m), q_str(c)] for m, c in self.sorted_terms()]

    @staticmethod
    def from_json(a) -> "SL2Elem":
        return SL2Elem({tuple(int(e) for e in m): Q(c) for m, c in a})


U, V_, X, Y = (SL2Elem.gen(n) for n in _NAMES)
ONE = SL2Elem.const(1)
ZERO = SL2Elem.const(0)


def sl2_normalize(p: Mapping[Mono, Number]) -> SL2Elem:
    """Normal form of a polynomial in u, v, x, y given as a monomial map."""
    return SL2Elem(p)


def sl2_weight(m: SL2Elem) -> Dict[int, SL2Elem]:
    """Split m into G_m-weight components (u, v weight -1; x, y weight +1)."""
    out: Dict[int, Dict[Mono, Fraction]] = {}
    for mono, c in m.terms.items():
        out.setdefault(mono_weight(mono), {})[mono] = c
    return {w: SL2Elem(t, _raw=True) for w, t in sorted(out.items())}


@lru_cache(maxsize=None)
def _n_mono(m: Mono) -> Tuple[Tuple[Mono, int], ...]:
    a, b, c, d = m
    acc: Dict[Mono, int] = {}
    if c:
        for nm, k in _normal_mono((a + 1, b, c - 1, d)):
            acc[nm] = acc.get(nm, 0) + c * k
    if d:
        for nm, k in _normal_mono((a, b + 1, c, d - 1)):
            acc[nm] = acc.get(nm, 0) + d * k
    return tuple((nm, k) for nm, k in acc.items() if k)


def n_derive(m: SL2Elem) -> SL2Elem:
    """The derivation N with Nx = u, Ny = v, Nu = Nv = 0."""
    acc: Dict[Mono, Fraction] = {}
    for mono, c in m.terms.items():
        for nm, k in _n_mono(mono):
            acc[nm] = acc.get(nm, 0) + k * c
    return SL2Elem({nm: c for nm, c in acc.items() if c}, _raw=True)


def normal_monomials(max_degree: int) -> Iterable[Mono]:
    """All normal-form monomials of total degree <= max_degree, deglex order."""
    out = []
    for n in range(max_degree + 1):
        for a in range(n + 1):
            for b in range(n - a + 1):
                for c in range(n - a - b + 1):
                    d = n - a - b - c
                    if a and d:
                        continue
                    out.append((a, b, c, d))
    return sorted(out, key=mono_key)


# ---------------------------------------------------------------------------
# The ring S = Q[x] and its complexification


class SPoly:
    """Polynomial in x with Fraction or Gauss coefficients (low degree first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    @staticmethod
    def x() -> "SPoly":
        return SPoly([Fraction(0), Fraction(1)])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_real(self) -> bool:
        return all(not isinstance(c, Gauss) or c.im == 0 for c in self.coeffs)

    def __add__(self, o):
        o = o if isinstance(o, SPoly) else SPoly([o])
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + [0] * (n - len(self.coeffs))
        b = o.coeffs + [0] * (n - len(o.coeffs))
        return SPoly([p + q for p, q in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return SPoly([-c for c in self.coeffs])

    def __sub__(self, o):
        return self + (-(o if isinstance(o, SPoly) else SPoly([o])))

    def __mul__(self, o):
        if not isinstance(o, SPoly):
            return SPoly([c * o for c in self.coeffs])
        if not self.coeffs or not o.coeffs:
            return SPoly()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return SPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        r = SPoly([Fraction(1)])
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, o):
        o = o if isinstance(o, SPoly) else SPoly([o])
        return len(self.coeffs) == len(o.coeffs) and all(
            Gauss.of(a) == Gauss.of(b) for a, b in zip(self.coeffs, o.coeffs)
        )

    def __call__(self, t):
        r = 0
        for c in reversed(self.coeffs):
            r = r * t + c
        return r

    def taylor_at_i(self):
        """Coefficients c_k with p(x) = sum c_k (x - i)^k."""
        out = []
        for k in range(len(self.coeffs)):
            acc = Gauss(0)
            for j in range(k, len(self.coeffs)):
                acc = acc + Gauss.of(self.coeffs[j]) * comb(j, k) * (I ** (j - k))
            out.append(acc)
        return out

    def hodge_level(self) -> int | None:
        """Largest p with self in (x - i)^p C[x]; None for zero."""
        for k, c in enumerate(self.taylor_at_i()):
            if c:
                return k
        return None

    def __repr__(self):
        return f"SPoly({self.coeffs!r})"


X_MINUS_I = SPoly([Gauss(0, -1), Gauss(1)])
