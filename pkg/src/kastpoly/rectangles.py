"""Closed-form spectra of rectangle grids and the embedded reference tables."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Dict, Iterator, List, Optional, Tuple

import mpmath
import numpy as np

from .cohomology import Cocycle, Label, kasteleyn_class
from .exactalg import Poly, expand_factored, hermitian_eigenvalues, strip_zero_roots
from .graph import PlanarGraph, aztec_diamond, rectangle_grid
from .singular import VerificationReport, build_matrix, singular_polynomial


class RoundingError(ArithmeticError):
    """Closed-form coefficients did not round cleanly to integers."""


@dataclass(frozen=True)
class IndexSet:
    M: int
    N: int
    pairs: Tuple[Tuple[int, int], ...]

    @property
    def alpha(self) -> complex:
        return cmath.exp(1j * math.pi / (self.M + 1))

    @property
    def beta(self) -> complex:
        return cmath.exp(1j * math.pi / (self.N + 1))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.pairs)

    def __contains__(self, item) -> bool:
        return item in self.pairs


def _index_set(M: int, N: int, strict: bool) -> IndexSet:
    if M < 1 or N < 1:
        raise ValueError("M and N must be positive")
    pairs = []
    half_m = Fraction(M + 1, 2)
    half_n = Fraction(N + 1, 2)
    for k in range(1, M + 1):
        if k > half_m:
            break
        for l in range(1, N + 1):
            if k == half_m and (l >= half_n if strict else l > half_n):
                continue
            pairs.append((k, l))
    return IndexSet(M, N, tuple(pairs))


def x_plus(M: int, N: int) -> IndexSet:
    """Indices of the white eigenbasis: when k = (M+1)/2, l runs up to (N+1)/2 inclusive."""
    return _index_set(M, N, strict=False)


def x_minus(M: int, N: int) -> IndexSet:
    """Indices of the nonzero singular values: when k = (M+1)/2, l < (N+1)/2."""
    return _index_set(M, N, strict=True)


def sigma_squared(M: int, N: int, k: int, l: int) -> float:
    if not (1 <= k <= M and 1 <= l <= N):
        raise ValueError(f"index ({k}, {l}) outside 1..{M} x 1..{N}")
    return 4 * math.cos(k * math.pi / (M + 1)) ** 2 + 4 * math.cos(l * math.pi / (N + 1)) ** 2


def closed_form_poly(M: int, N: int, dps: Optional[int] = None) -> Poly:
    """Product of (t - sigma^2) over x_minus, rounded to integer coefficients.

    Evaluated with mpmath at ``dps`` decimal digits (default grows with M*N);
    double precision is not enough beyond roughly 6x6.
    """
    idx = x_minus(M, N)
    if dps is None:
        dps = 30 + M * N // 2
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(1)]
        for k, l in idx:
            r = 4 * mpmath.cos(k * mpmath.pi / (M + 1)) ** 2 + 4 * mpmath.cos(l * mpmath.pi / (N + 1)) ** 2
            nxt = coeffs + [mpmath.mpf(0)]
            for i in range(1, len(nxt)):
                nxt[i] -= r * coeffs[i - 1]
            coeffs = nxt
        ints = [int(mpmath.nint(c)) for c in coeffs]
        worst = max(abs(c - i) for c, i in zip(coeffs, ints))
    if worst > 1e-6:
        raise RoundingError(f"[{M},{N}] closed form off an integer by {float(worst):.3g} at {dps} digits")
    return Poly.from_ints(ints)


def kasteleyn_poly(g: PlanarGraph) -> Poly:
    return singular_polynomial(g, kasteleyn_class(g))


def general_rectangle_poly(M: int, N: int) -> Poly:
    """Exact singular polynomial of the M x N grid with zero roots removed."""
    return strip_zero_roots(kasteleyn_poly(rectangle_grid(M, N)))[0]


def general_aztec_poly(order: int) -> Poly:
    return strip_zero_roots(kasteleyn_poly(aztec_diamond(order)))[0]


# ---------------------------------------------------------------------------
# reference data


@dataclass(frozen=True)
class ReferenceEntry:
    key: str
    kind: str
    params: Tuple[int, ...]
    factors: Tuple[Tuple[Tuple[int, ...], int], ...]

    def expanded(self) -> Poly:
        return expand_factored((Poly.from_ints(cs), k) for cs, k in self.factors)

    @property
    def degree(self) -> int:
        return sum((len(cs) - 1) * k for cs, k in self.factors)


@lru_cache(maxsize=1)
def load_reference() -> Dict[str, ReferenceEntry]:
    text = resources.files("kastpoly").joinpath("tables/reference.json").read_text()
    raw = json.loads(text)["entries"]
    out = {}
    for key, e in raw.items():
        params = (e["M"], e["N"]) if e["kind"] == "rectangle" else (e["order"],)
        factors = tuple((tuple(cs), k) for cs, k in e["factors"])
        out[key] = ReferenceEntry(key, e["kind"], params, factors)
    return out


def _divides(p: Poly, d: Poly) -> bool:
    return p.divmod_monic(d)[1].is_zero()


def table_check(keys: Optional[List[str]] = None) -> List[VerificationReport]:
    """Compare every reference entry with the closed form and the general machinery."""
    reports = []
    ref = load_reference()
    for key in keys or list(ref):
        entry = ref[key]
        expected = entry.expanded()
        if entry.kind == "rectangle":
            M, N = entry.params
            closed = closed_form_poly(M, N)
            general = general_rectangle_poly(M, N)
            ok = expected == closed == general
            reports.append(
                VerificationReport(
                    "table", key, expected, [closed, general], ok, None, [f"degree {expected.degree}, floor(MN/2) = {M * N // 2}"]
                )
            )
        else:
            (d,) = entry.params
            general = general_aztec_poly(d)
            reports.append(VerificationReport("table", key, expected, [general], expected == general, None, [f"degree {expected.degree}"]))
    for k in (1, 2):
        key = f"aztec-{2 * k + 1}"
        if keys is not None and key not in keys:
            continue
        p = general_aztec_poly(2 * k + 1)
        factor = Poly.from_ints([1, -4]) ** (4 * k)
        reports.append(
            VerificationReport("t-4 divisibility", key, p, factor, _divides(p, factor), None, [f"(t-4)^{4 * k} divides the order-{2 * k + 1} polynomial"])
        )
    return reports


# ---------------------------------------------------------------------------
# numeric checks


def spectrum_check(M: int, N: int, tol: float = 1e-9) -> VerificationReport:
    """Nonzero eigenvalues of K K* against the closed-form sigma^2 multiset."""
    g = rectangle_grid(M, N)
    k = build_matrix(g, kasteleyn_class(g), "float").to_numpy()
    eig = hermitian_eigenvalues(k @ k.conj().T) if g.n else []
    numeric = sorted(x for x in eig if abs(x) > tol)
    closed = sorted(s for s in (sigma_squared(M, N, a, b) for a, b in x_minus(M, N)) if abs(s) > tol)
    ok = len(numeric) == len(closed) and all(abs(a - b) <= tol for a, b in zip(numeric, closed))
    return VerificationReport("spectrum", f"[{M},{N}]", numeric, closed, ok, None, [f"tolerance {tol}"])


def horizontal_vertical_class(g: PlanarGraph) -> Cocycle:
    """Label 1 on horizontal edges and i on vertical ones."""
    vals = {}
    for b, w in g.edges:
        horizontal = g.pos(b)[1] == g.pos(w)[1]
        vals[(b, w)] = Label(Fraction(0) if horizontal else Fraction(1, 4))
    return Cocycle(vals)


def _sine_vector(ids, g: PlanarGraph, alpha: complex, beta: complex, k: int, l: int) -> np.ndarray:
    out = []
    for vid in ids:
        kp, lp = int(g.pos(vid)[0]), int(g.pos(vid)[1])
        out.append((alpha ** (k * kp) - alpha ** (-k * kp)) * (beta ** (l * lp) - beta ** (-l * lp)))
    return np.array(out, dtype=complex)


def eigvec_check(M: int, N: int, tol: float = 1e-9) -> VerificationReport:
    """K b = ((a^k + a^-k) + i (b^l + b^-l)) w and |w| = |b| for every (k, l) in x_minus."""
    if M * N > 64:
        raise ValueError("eigvec_check is limited to M*N <= 64")
    g = rectangle_grid(M, N)
    K = build_matrix(g, horizontal_vertical_class(g), "float").to_numpy()
    idx = x_minus(M, N)
    alpha, beta = idx.alpha, idx.beta
    residuals, norm_gaps = [], []
    for k, l in idx:
        w = _sine_vector(g.whites, g, alpha, beta, k, l)
        b = _sine_vector(g.blacks, g, alpha, beta, k, l)
        lam = (alpha**k + alpha ** (-k)) + 1j * (beta**l + beta ** (-l))
        residuals.append(float(np.linalg.norm(K @ b - lam * w)))
        norm_gaps.append(abs(float(np.linalg.norm(w)) - float(np.linalg.norm(b))))
    ok = all(r < tol for r in residuals) and all(d < tol for d in norm_gaps)
    return VerificationReport(
        "eigvec", f"[{M},{N}]", max(residuals, default=0.0), max(norm_gaps, default=0.0), ok, None, [f"{len(idx)} index pairs, tolerance {tol}"]
    )
