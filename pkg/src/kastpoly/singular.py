"""Kasteleyn-type matrices, singular polynomials and enumeration cross-checks."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .cohomology import (
    Cocycle,
    Label,
    VertexPotential,
    area,
    evaluate,
    gauge_transform,
    kasteleyn_class,
    kasteleyn_q_class,
    random_class,
    relative_class,
    restrict,
    zero_class,
)
from .exactalg import (
    FLOAT_TOL,
    ZERO,
    GaussLaurent,
    Poly,
    charpoly,
    conj,
    det,
    eta,
    gram,
)
from .graph import PlanarGraph, balanced_subgraphs
from .matchings import delta, difference, matchings_of, permutation_parity, pipe_systems

Q_CONVENTION_NOTE = (
    "q-class convention: rotation part is the Kasteleyn class and the q-exponent is the winding "
    "around hole witnesses, so each ccw hole boundary carries (k(beta), +1); a zero rotation part "
    "would give 2 - q - 1/q on a single square and lose the matching count at q=1"
)


@dataclass(frozen=True)
class KasteleynMatrix:
    """Rows are white ids ascending, columns black ids ascending."""

    entries: Tuple[Tuple[Any, ...], ...]
    whites: Tuple[int, ...]
    blacks: Tuple[int, ...]
    backend: str = "exact"

    def rows(self) -> List[List[Any]]:
        return [list(r) for r in self.entries]

    def gram(self) -> List[List[Any]]:
        return gram(self.entries)

    def to_numpy(self):
        import numpy as np

        if self.backend == "exact":
            return np.array([[complex(GaussLaurent.coerce(x).to_complex()) for x in r] for r in self.entries], dtype=complex).reshape(
                len(self.whites), len(self.blacks)
            )
        return np.array(self.entries, dtype=complex).reshape(len(self.whites), len(self.blacks))


def build_matrix(g: PlanarGraph, c: Cocycle, backend: str = "exact", q: Optional[complex] = None) -> KasteleynMatrix:
    """Entry (i, j) is eta of c on the edge from black j to white i, zero if not adjacent."""
    zero = ZERO if backend == "exact" else 0j
    entries = []
    for w in g.whites:
        row = []
        for b in g.blacks:
            if (b, w) in g.edge_set:
                row.append(eta(c.value(b, w), backend, q))
            else:
                row.append(zero)
        entries.append(tuple(row))
    return KasteleynMatrix(tuple(entries), g.whites, g.blacks, backend)


def _normalise(p: Poly, backend: str) -> Poly:
    if backend == "exact":
        return Poly(tuple(GaussLaurent.coerce(x) for x in p.coeffs), p.var)
    return Poly(tuple(complex(x) for x in p.coeffs), p.var)


def singular_polynomial(g: PlanarGraph, c: Cocycle, backend: str = "exact", q: Optional[complex] = None) -> Poly:
    """det(t I - A A^dagger); degree equals the number of white vertices."""
    a = build_matrix(g, c, backend, q)
    return _normalise(charpoly(a.gram()), backend)


def _sign(m: int) -> int:
    return -1 if m % 2 else 1


def coeff_by_subgraphs(g: PlanarGraph, c: Cocycle, m: int, backend: str = "exact", q: Optional[complex] = None):
    """(-1)^m times the sum over balanced subgraphs H with 2m vertices of delta(c|H + k_H, H)."""
    acc = ZERO if backend == "exact" else 0.0
    for h in balanced_subgraphs(g, m):
        if not matchings_of(h):
            continue
        a = restrict(c, h) + kasteleyn_class(h.graph)
        acc = acc + delta(a, h, backend, q)
    return _sign(m) * acc


MODES = ("generalized", "kasteleyn", "q")


def coeff_by_pipes(
    g: PlanarGraph,
    m: int,
    mode: str = "generalized",
    c: Optional[Cocycle] = None,
    backend: str = "exact",
    q: Optional[complex] = None,
):
    """(-1)^m times a sum over pipe systems of size m.

    generalized: eta((c + k_support)(nu)); kasteleyn: eta(p(nu));
    q: eta(p(nu)) * q**area(nu).
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if mode == "generalized" and c is None:
        raise ValueError("generalized mode needs a cocycle")
    acc = ZERO if backend == "exact" else 0j
    support = None
    cls = None
    for nu in pipe_systems(g, m):
        if nu.support is not support:
            support = nu.support
            if mode == "generalized":
                cls = restrict(c, support) + kasteleyn_class(support.graph)
            else:
                cls = relative_class(g, support)
        chain = nu.chain()
        value = evaluate(cls, chain)
        if mode == "q":
            value = Label(value.rot, area(g, chain))
        acc = acc + eta(value, backend, q)
    return _sign(m) * acc


def _pad(values: List[Any], n: int, zero) -> List[Any]:
    return values + [zero] * (n + 1 - len(values))


def subgraph_polynomial(g: PlanarGraph, c: Cocycle, backend: str = "exact", q: Optional[complex] = None) -> Poly:
    zero = ZERO if backend == "exact" else 0.0
    top = min(g.n, g.n_prime)
    coeffs = [coeff_by_subgraphs(g, c, m, backend, q) for m in range(top + 1)]
    return Poly(tuple(_pad(coeffs, g.n, zero)))


def pipe_polynomial(
    g: PlanarGraph, mode: str = "generalized", c: Optional[Cocycle] = None, backend: str = "exact", q: Optional[complex] = None
) -> Poly:
    zero = ZERO if backend == "exact" else 0j
    top = min(g.n, g.n_prime)
    coeffs = [coeff_by_pipes(g, m, mode, c, backend, q) for m in range(top + 1)]
    return Poly(tuple(_pad(coeffs, g.n, zero)))


# ---------------------------------------------------------------------------
# verification harness


def jsonable(x: Any) -> Any:
    if isinstance(x, GaussLaurent):
        return x.to_json()
    if isinstance(x, Poly):
        return x.to_json()
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: jsonable(v) for k, v in x.items()}
    if isinstance(x, complex):
        return [x.real, x.imag] if abs(x.imag) > FLOAT_TOL else x.real
    return x


@dataclass
class VerificationReport:
    identity: str
    graph: str
    lhs: Any
    rhs: Any
    passed: bool
    seed: Optional[int] = None
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return {
            "identity": self.identity,
            "graph": self.graph,
            "lhs": jsonable(self.lhs),
            "rhs": jsonable(self.rhs),
            "pass": bool(self.passed),
            "seed": self.seed,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class VerifyLimits:
    max_vertices: int = 12
    max_m: int = 6
    n_random: int = 10


class BudgetExceeded(Exception):
    """Enumeration request larger than the configured limits."""

    def __init__(self, message: str, estimate: int):
        super().__init__(message)
        self.estimate = estimate


def enumeration_budget(g: PlanarGraph) -> int:
    """Number of balanced subgraphs an exhaustive coefficient check visits."""
    return sum(comb(g.n, m) * comb(g.n_prime, m) for m in range(min(g.n, g.n_prime) + 1))


THEOREMS = ("det", "coeffs", "pipes", "qpoly", "gauge", "parity")


def check_limits(g: PlanarGraph, limits: VerifyLimits) -> None:
    top = min(g.n, g.n_prime)
    if len(g.vertices) > limits.max_vertices or top > limits.max_m:
        est = enumeration_budget(g)
        raise BudgetExceeded(
            f"graph has {len(g.vertices)} vertices (limit {limits.max_vertices}) and m up to {top} "
            f"(limit {limits.max_m}); exhaustive check needs about {est} balanced subgraphs "
            f"(pass --max-vertices {len(g.vertices)} --max-m {top} to override)",
            est,
        )


def standard_classes(g: PlanarGraph, seed: int, n_random: int = 10) -> List[Tuple[str, Cocycle]]:
    """Kasteleyn class, zero class and seeded random denominator-4 classes."""
    rng = random.Random(seed)
    out = [("kasteleyn", kasteleyn_class(g)), ("zero", zero_class(g))]
    out += [(f"random{i}", random_class(g, rng, 4)) for i in range(n_random)]
    return out


def _coeff_list(p: Poly) -> List[Any]:
    return list(p.coeffs)


def verify_identities(
    g: PlanarGraph,
    which: str,
    limits: VerifyLimits = VerifyLimits(),
    seed: int = 0,
    description: str = "graph",
) -> VerificationReport:
    """Check one identity family on g by independent enumeration; see THEOREMS."""
    if which not in THEOREMS:
        raise ValueError(f"unknown identity {which!r}; choose from {THEOREMS}")
    if which != "gauge":
        check_limits(g, limits)
    k = kasteleyn_class(g)

    if which == "det":
        if g.n != g.n_prime:
            return VerificationReport("det", description, None, None, True, seed, ["not square (n != n'); nothing to check"])
        lhs, rhs, names = [], [], []
        for name, a in standard_classes(g, seed, limits.n_random):
            d = det(build_matrix(g, a).rows())
            lhs.append(GaussLaurent.coerce(d) * conj(GaussLaurent.coerce(d)))
            rhs.append(delta(a + k, g))
            names.append(name)
        count = len(matchings_of(g))
        det_k = GaussLaurent.coerce(det(build_matrix(g, k).rows()))
        ok = lhs == rhs and det_k * det_k.conjugate() == count * count
        return VerificationReport("det", description, lhs, rhs, ok, seed, [f"classes: {names}", f"matchings: {count}"])

    if which == "coeffs":
        lhs, rhs, names = [], [], []
        for name, a in standard_classes(g, seed, limits.n_random):
            lhs.append(_coeff_list(singular_polynomial(g, a)))
            rhs.append(_coeff_list(subgraph_polynomial(g, a)))
            names.append(name)
        return VerificationReport("coeffs", description, lhs, rhs, lhs == rhs, seed, [f"classes: {names}"])

    if which == "pipes":
        lhs, rhs, names = [], [], []
        for name, a in standard_classes(g, seed, limits.n_random):
            lhs.append(_coeff_list(subgraph_polynomial(g, a)))
            rhs.append(_coeff_list(pipe_polynomial(g, "generalized", a)))
            names.append(name)
        lhs.append(_coeff_list(subgraph_polynomial(g, k)))
        rhs.append(_coeff_list(pipe_polynomial(g, "kasteleyn")))
        names.append("kasteleyn/relative-class")
        return VerificationReport("pipes", description, lhs, rhs, lhs == rhs, seed, [f"classes: {names}"])

    if which == "qpoly":
        qp = singular_polynomial(g, kasteleyn_q_class(g))
        pipes = pipe_polynomial(g, "q")
        at1 = qp.at_q(1)
        pg = singular_polynomial(g, k)
        ok = qp == pipes and at1 == pg
        return VerificationReport("qpoly", description, [qp, at1], [pipes, pg], ok, seed, [Q_CONVENTION_NOTE])

    if which == "gauge":
        rng = random.Random(seed)
        lhs, rhs = [], []
        for a in (k, random_class(g, random.Random(seed + 1), 4)):
            base = singular_polynomial(g, a)
            for _ in range(limits.n_random):
                d = VertexPotential.random(g, rng, 4, qspan=2)
                lhs.append(base)
                rhs.append(singular_polynomial(g, gauge_transform(a, d)))
        return VerificationReport("gauge", description, lhs, rhs, lhs == rhs, seed, ["potentials: denominator 4, q-exponents in [-2, 2]"])

    # parity
    ms = matchings_of(g)
    lhs, rhs = [], []
    for m1 in ms:
        for m2 in ms:
            lhs.append(permutation_parity(m1, m2))
            rhs.append(-1 if evaluate(k, difference(m1, m2)).rot else 1)
    return VerificationReport("parity", description, lhs, rhs, lhs == rhs, seed, [f"{len(ms)} matchings, {len(lhs)} ordered pairs"])
