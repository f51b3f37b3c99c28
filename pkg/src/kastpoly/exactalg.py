"""Scalar rings, division-free characteristic polynomials and a Hermitian eigensolver.

Exact scalars are :class:`GaussLaurent` values: Laurent polynomials in ``q`` with
Gaussian-integer coefficients, conjugation sending ``i -> -i`` and ``q -> 1/q``.
Float scalars are plain Python ``complex``.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

FLOAT_TOL = 1e-9


class RepresentabilityError(ValueError):
    """A rotation value has no exact representation in the Gaussian-integer backend."""


class GaussLaurent:
    """Finitely supported map from q-exponent to Gaussian integer ``(re, im)``."""

    __slots__ = ("_t",)

    def __init__(self, terms: Optional[Dict[int, Tuple[int, int]]] = None):
        t = {}
        if terms:
            for e, (a, b) in terms.items():
                if a or b:
                    t[int(e)] = (int(a), int(b))
        self._t = t

    @classmethod
    def _raw(cls, t: Dict[int, Tuple[int, int]]) -> "GaussLaurent":
        obj = cls.__new__(cls)
        obj._t = t
        return obj

    @classmethod
    def monomial(cls, exp: int = 0, re: int = 1, im: int = 0) -> "GaussLaurent":
        return cls({exp: (re, im)})

    @classmethod
    def coerce(cls, x: Any) -> "GaussLaurent":
        if isinstance(x, GaussLaurent):
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return cls._raw({0: (x, 0)} if x else {})
        if isinstance(x, Fraction) and x.denominator == 1:
            return cls.coerce(x.numerator)
        if isinstance(x, complex) and x.real.is_integer() and x.imag.is_integer():
            return cls({0: (int(x.real), int(x.imag))})
        raise TypeError(f"cannot coerce {x!r} to GaussLaurent")

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            o = GaussLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        if not o._t:
            return self
        if not self._t:
            return o
        t = dict(self._t)
        for e, (a, b) in o._t.items():
            if e in t:
                c, d = t[e]
                c, d = c + a, d + b
                if c or d:
                    t[e] = (c, d)
                else:
                    del t[e]
            else:
                t[e] = (a, b)
        return GaussLaurent._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return GaussLaurent._raw({e: (-a, -b) for e, (a, b) in self._t.items()})

    def __sub__(self, other):
        try:
            o = GaussLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        if not self._t or not o._t:
            return GaussLaurent._raw({})
        t: Dict[int, Tuple[int, int]] = {}
        for e1, (a, b) in self._t.items():
            for e2, (c, d) in o._t.items():
                e = e1 + e2
                re, im = a * c - b * d, a * d + b * c
                if e in t:
                    x, y = t[e]
                    t[e] = (x + re, y + im)
                else:
                    t[e] = (re, im)
        return GaussLaurent._raw({e: v for e, v in t.items() if v[0] or v[1]})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._t) == 1:
                ((e, (a, b)),) = self._t.items()
                # units only: 1/(i^j q^e) = conj(i^j) q^-e
                if a * a + b * b == 1:
                    return GaussLaurent._raw({-e: (a, -b)}) ** (-k)
            raise ZeroDivisionError("only unit monomials are invertible")
        out = GaussLaurent.coerce(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussLaurent":
        return GaussLaurent._raw({-e: (a, -b) for e, (a, b) in self._t.items()})

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        try:
            o = GaussLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        return self._t == o._t

    def __hash__(self):
        if set(self._t) <= {0} and (not self._t or self._t[0][1] == 0):
            return hash(self._t[0][0] if self._t else 0)
        return hash(frozenset(self._t.items()))

    def __bool__(self):
        return bool(self._t)

    # -- inspection -------------------------------------------------------
    def terms(self) -> List[Tuple[int, int, int]]:
        """Sorted ``(exp, re, im)`` triples."""
        return [(e, a, b) for e, (a, b) in sorted(self._t.items())]

    def is_constant(self) -> bool:
        return set(self._t) <= {0}

    def is_integer(self) -> bool:
        return self.is_constant() and (not self._t or self._t[0][1] == 0)

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self._t[0][0] if self._t else 0

    def at(self, q) -> Any:
        """Substitute q. Integer units keep the result exact; otherwise returns complex."""
        if q in (1, -1) and not isinstance(q, (float, complex)):
            out = GaussLaurent._raw({})
            for e, (a, b) in self._t.items():
                s = q**e if e >= 0 else q ** (-e)
                out = out + GaussLaurent._raw({0: (a * s, b * s)})
            return out
        return sum((complex(a, b) * q**e for e, (a, b) in self._t.items()), 0j)

    def to_complex(self) -> complex:
        if not self.is_constant():
            raise ValueError(f"{self} depends on q")
        a, b = self._t.get(0, (0, 0))
        return complex(a, b)

    def to_json(self):
        if self.is_integer():
            return self.to_int()
        return [{"exp": e, "re": a, "im": b} for e, a, b in self.terms()]

    def __repr__(self):
        return f"GaussLaurent({self})"

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for e, a, b in reversed(self.terms()):
            if b == 0:
                c = str(a)
            elif a == 0:
                c = f"{b}i" if b not in (1, -1) else ("i" if b == 1 else "-i")
            else:
                c = f"({a}{b:+d}i)"
            if e == 0:
                parts.append(c)
                continue
            mono = "q" if e == 1 else f"q^{e}"
            if c == "1":
                parts.append(mono)
            elif c == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


ONE = GaussLaurent.coerce(1)
ZERO = GaussLaurent.coerce(0)
Q = GaussLaurent.monomial(1)

_UNITS = {
    Fraction(0): (1, 0),
    Fraction(1, 4): (0, 1),
    Fraction(1, 2): (-1, 0),
    Fraction(3, 4): (0, -1),
}


def eta(value, backend: str = "exact", q: Optional[complex] = None):
    """exp(2 pi i rot) * q**qexp for a ``(rot, qexp)`` value.

    The exact backend only represents rotations with denominator 1, 2 or 4.
    The float backend needs ``q`` (a unit complex number) when qexp != 0.
    """
    rot, qexp = value[0], value[1]
    rot = Fraction(rot) % 1
    if backend == "exact":
        if rot not in _UNITS:
            raise RepresentabilityError(f"rotation {rot} needs denominator 1, 2 or 4 for the exact backend")
        re, im = _UNITS[rot]
        return GaussLaurent._raw({int(qexp): (re, im)})
    if backend == "float":
        z = cmath.exp(2j * cmath.pi * float(rot))
        if qexp:
            if q is None:
                raise ValueError("float backend needs q specialised to evaluate q-exponents")
            z *= complex(q) ** qexp
        return z
    raise ValueError(f"unknown backend {backend!r}")


def conj(x):
    return x.conjugate()


def _is_zero(c) -> bool:
    if isinstance(c, (float, complex)):
        return abs(c) <= 1e-12
    return c == 0


@dataclass(frozen=True)
class Poly:
    """Polynomial in ``var`` with coefficients highest degree first.

    ``coeffs[m]`` is the coefficient of ``t**(degree - m)``; for a monic
    singular polynomial this is the coefficient ``a_m``.
    """

    coeffs: Tuple[Any, ...]
    var: str = "t"

    def __post_init__(self):
        cs = tuple(self.coeffs)
        i = 0
        while i < len(cs) and _is_zero(cs[i]):
            i += 1
        object.__setattr__(self, "coeffs", cs[i:])

    @classmethod
    def from_ints(cls, coeffs: Iterable[int]) -> "Poly":
        return cls(tuple(GaussLaurent.coerce(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, m: int):
        """Coefficient of t**(degree - m)."""
        return self.coeffs[m]

    def low_first(self) -> List[Any]:
        return list(reversed(self.coeffs))

    @classmethod
    def _from_low(cls, low: Sequence[Any], var: str) -> "Poly":
        return cls(tuple(reversed(low)), var)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.low_first(), other.low_first()
        n = max(len(a), len(b))
        a += [0] * (n - len(a))
        b += [0] * (n - len(b))
        return Poly._from_low([x + y for x, y in zip(a, b)], self.var)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly((), self.var)
        a, b = self.low_first(), other.low_first()
        out: List[Any] = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if _is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly._from_low(out, self.var)

    def __pow__(self, k: int) -> "Poly":
        out = Poly((1,), self.var)
        for _ in range(k):
            out = out * self
        return out

    def divmod_monic(self, d: "Poly") -> Tuple["Poly", "Poly"]:
        """Exact division by a monic divisor over any commutative ring."""
        if d.is_zero() or d.coeffs[0] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        k = len(d.coeffs)
        quot = []
        while len(rem) >= k:
            c = rem[0]
            quot.append(c)
            for j in range(1, k):
                rem[j] = rem[j] - c * d.coeffs[j]
            rem.pop(0)
        return Poly(tuple(quot), self.var), Poly(tuple(rem), self.var)

    def map(self, fn) -> "Poly":
        return Poly(tuple(fn(c) for c in self.coeffs), self.var)

    def at_q(self, q) -> "Poly":
        """Specialise Laurent coefficients at q."""
        return self.map(lambda c: GaussLaurent.coerce(c).at(q))

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def to_json(self) -> Dict[str, Any]:
        return {"var": self.var, "coeffs": [_coeff_json(c) for c in self.coeffs]}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        d = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            p = d - i
            if _is_zero(c):
                continue
            s = str(c)
            if isinstance(c, GaussLaurent) and len(c.terms()) > 1:
                s = f"({s})"
            mono = "" if p == 0 else (self.var if p == 1 else f"{self.var}^{p}")
            if mono and s == "1":
                parts.append(mono)
            elif mono and s == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{s}*{mono}" if mono else s)
        return " + ".join(parts).replace("+ -", "- ")


def _coeff_json(c):
    if isinstance(c, GaussLaurent):
        return c.to_json()
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else float(c)
    c = complex(c)
    if abs(c.imag) <= FLOAT_TOL * max(1.0, abs(c.real)):
        return c.real
    return [{"exp": 0, "re": c.real, "im": c.imag}]


def poly_from_json(obj: Dict[str, Any]) -> Poly:
    cs = []
    for c in obj["coeffs"]:
        if isinstance(c, list):
            if all(isinstance(t["re"], int) and isinstance(t["im"], int) for t in c):
                cs.append(GaussLaurent({t["exp"]: (t["re"], t["im"]) for t in c}))
            else:
                cs.append(sum(complex(t["re"], t["im"]) for t in c))
        elif isinstance(c, int):
            cs.append(GaussLaurent.coerce(c))
        else:
            cs.append(float(c))
    return Poly(tuple(cs), obj.get("var", "t"))


# ---------------------------------------------------------------------------
# matrices


Matrix = Sequence[Sequence[Any]]


def _dot(row: Sequence[Any], col: Sequence[Any]):
    acc = 0
    for x, y in zip(row, col):
        if x and y:
            acc = acc + x * y
    return acc


def matmul(a: Matrix, b: Matrix) -> List[List[Any]]:
    cols = list(zip(*b)) if b else []
    inner = len(b)
    if inner == 0:
        return [[0] * 0 for _ in a]
    return [[_dot(r, c) for c in cols] for r in a]


def adjoint(a: Matrix, n_cols: Optional[int] = None) -> List[List[Any]]:
    if not a:
        return [[] for _ in range(n_cols or 0)]
    return [[conj(x) for x in col] for col in zip(*a)]


def gram(a: Matrix) -> List[List[Any]]:
    """A A^dagger; well defined even when A has no columns."""
    n = len(a)
    if n == 0:
        return []
    if len(a[0]) == 0:
        return [[0] * n for _ in range(n)]
    return matmul(a, adjoint(a))


def charpoly(mat: Matrix) -> Poly:
    """det(tI - mat) by the Berkowitz algorithm; division-free, any commutative ring."""
    n = len(mat)
    if n == 0:
        return Poly((1,))
    vect: List[Any] = [1, -mat[0][0]]
    for r in range(1, n):
        a_rr = mat[r][r]
        row = mat[r][:r]
        col = [mat[i][r] for i in range(r)]
        lead = [mat[i][:r] for i in range(r)]
        toeplitz: List[Any] = [1, -a_rr]
        v = col
        for k in range(r):
            toeplitz.append(-_dot(row, v))
            if k < r - 1:
                v = [_dot(lead[i], v) for i in range(r)]
        new = []
        for i in range(r + 2):
            acc = 0
            for j in range(max(0, i - len(toeplitz) + 1), min(i, r) + 1):
                x, y = toeplitz[i - j], vect[j]
                if x and y:
                    acc = acc + x * y
            new.append(acc)
        vect = new
    return Poly(tuple(vect))


def det(mat: Matrix):
    n = len(mat)
    if n == 0:
        return 1
    c = charpoly(mat).low_first()[0]
    return c if n % 2 == 0 else -c


def minor_sum(mat: Matrix, m: int):
    """Sum of det(B) * conj(det(B)) over all m x m submatrices B."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if m < 0 or m > min(rows, cols):
        if m == 0:
            return 1
        raise ValueError(f"m={m} out of range")
    if m == 0:
        return 1
    acc = 0
    for rs in itertools.combinations(range(rows), m):
        for cs in itertools.combinations(range(cols), m):
            d = det([[mat[i][j] for j in cs] for i in rs])
            if d:
                acc = acc + d * conj(d)
    return acc


def strip_zero_roots(p: Poly) -> Tuple[Poly, int]:
    """Divide out the largest power of t; returns (reduced, multiplicity)."""
    if p.is_zero():
        raise ValueError("zero polynomial has no finite zero-root multiplicity")
    cs = list(p.coeffs)
    if any(isinstance(c, (float, complex)) for c in cs):
        scale = max(abs(c) for c in cs)
        is_zero = lambda c: abs(c) < FLOAT_TOL * scale  # noqa: E731
    else:
        is_zero = lambda c: c == 0  # noqa: E731
    z = 0
    while cs and is_zero(cs[-1]):
        cs.pop()
        z += 1
    return Poly(tuple(cs), p.var), z


def expand_factored(factors: Iterable[Tuple[Poly, int]]) -> Poly:
    out = Poly.from_ints([1])
    for f, k in factors:
        out = out * f**k
    return out


def hermitian_eigenvalues(mat, tol: float = 1e-12, max_sweeps: int = 100) -> List[float]:
    """All eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations, ascending."""
    a = np.array(mat, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n and np.max(np.abs(a - a.conj().T)) > 1e-12:
        raise ValueError("matrix is not conjugate-symmetric")
    a = (a + a.conj().T) / 2

    mask = ~np.eye(n, dtype=bool)

    def off(x):
        return float(np.sqrt(np.sum(np.abs(x[mask]) ** 2)))

    for _ in range(max_sweeps):
        if off(a) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2 * mag)
                if abs(theta) > 1e150:
                    t = 1 / (2 * theta)
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1))
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                # V = D P: column p -> c e_p - s conj(phase) e_q, column q -> s e_p + c conj(phase) e_q
                v = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                a[:, [p, q]] = a[:, [p, q]] @ v
                a[[p, q], :] = v.conj().T @ a[[p, q], :]
                a[p, q] = a[q, p] = 0
    else:
        if off(a) >= tol:
            raise RuntimeError("Jacobi iteration did not converge")
    return sorted(float(x.real) for x in np.diag(a))
