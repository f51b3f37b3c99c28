"""Perfect matchings, the delta sum, permutation parity and pipe systems."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .cohomology import Cocycle, evaluate
from .exactalg import ZERO as EXACT_ZERO
from .exactalg import eta
from .graph import BalancedSubgraph, PlanarGraph, balanced_subgraphs

Support = Union[PlanarGraph, BalancedSubgraph]


@dataclass(frozen=True)
class Matching:
    """Sorted ``(white, black)`` pairs."""

    pairs: Tuple[Tuple[int, int], ...]

    def chain(self) -> List[Tuple[int, int]]:
        """Edges directed black -> white."""
        return [(b, w) for w, b in self.pairs]

    def as_map(self) -> Dict[int, int]:
        return dict(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __str__(self):
        return ",".join(f"{w}-{b}" for w, b in self.pairs)


def difference(m2: Matching, m1: Matching) -> Dict[Tuple[int, int], int]:
    """The closed chain m2 - m1 (shared edges cancel)."""
    acc: Dict[Tuple[int, int], int] = {}
    for e in m2.chain():
        acc[e] = acc.get(e, 0) + 1
    for e in m1.chain():
        acc[e] = acc.get(e, 0) - 1
    return {e: k for e, k in acc.items() if k}


def _search(whites, blacks, edges) -> Iterator[Matching]:
    if len(whites) != len(blacks):
        return
    adj: Dict[int, List[int]] = {v: [] for v in whites + blacks}
    for b, w in edges:
        adj[b].append(w)
        adj[w].append(b)
    for v in adj:
        adj[v].sort()
    is_white = set(whites)
    free = set(adj)
    chosen: List[Tuple[int, int]] = []

    def rec():
        if not free:
            yield Matching(tuple(sorted(chosen)))
            return
        best, best_deg = None, None
        for v in sorted(free):
            d = sum(1 for u in adj[v] if u in free)
            if best_deg is None or d < best_deg:
                best, best_deg = v, d
                if d == 0:
                    return
        for u in [u for u in adj[best] if u in free]:
            free.discard(best)
            free.discard(u)
            chosen.append((best, u) if best in is_white else (u, best))
            yield from rec()
            chosen.pop()
            free.add(best)
            free.add(u)

    yield from rec()


def enumerate_matchings(h: Support) -> Iterator[Matching]:
    """Every perfect matching once, branching on a minimum-degree free vertex."""
    return _search(tuple(h.whites), tuple(h.blacks), tuple(h.edges))


@lru_cache(maxsize=65536)
def _cached(whites, blacks, edges) -> Tuple[Matching, ...]:
    return tuple(_search(whites, blacks, edges))


def matchings_of(h: Support) -> Tuple[Matching, ...]:
    """Memoised tuple of all matchings of h."""
    return _cached(tuple(h.whites), tuple(h.blacks), tuple(h.edges))


def delta(a: Cocycle, h: Support, backend: str = "exact", q: Optional[complex] = None):
    """Sum of eta(a(m1 - m2)) over ordered matching pairs, as |sum_m eta(a(m - m0))|^2."""
    ms = matchings_of(h)
    if not ms:
        return EXACT_ZERO if backend == "exact" else 0.0
    base = ms[0]
    s = sum((eta(evaluate(a, difference(m, base)), backend, q) for m in ms), 0)
    if backend == "exact":
        return s * s.conjugate()
    return abs(s) ** 2


def delta_pairs(a: Cocycle, h: Support, backend: str = "exact", q: Optional[complex] = None):
    """The defining double sum; quadratic in the matching count."""
    ms = matchings_of(h)
    acc = EXACT_ZERO if backend == "exact" else 0j
    for m1 in ms:
        for m2 in ms:
            acc = acc + eta(evaluate(a, difference(m1, m2)), backend, q)
    return acc


def parity_split(a: Cocycle, h: Support) -> Tuple[int, int]:
    """Sizes of the two a-parity classes of a Z/2 class, relative to the first matching."""
    ms = matchings_of(h)
    if not ms:
        return (0, 0)
    same = sum(1 for m in ms if evaluate(a, difference(m, ms[0])).rot == 0)
    return same, len(ms) - same


def permutation_parity(m1: Matching, m2: Matching) -> int:
    """Sign of the white-vertex permutation m1^-1 o m2."""
    f1, f2 = m1.as_map(), m2.as_map()
    if set(f1) != set(f2) or set(f1.values()) != set(f2.values()):
        raise ValueError("matchings have different supports")
    inv1 = {b: w for w, b in f1.items()}
    seen = set()
    sign = 1
    for start in f1:
        if start in seen:
            continue
        length = 0
        w = start
        while w not in seen:
            seen.add(w)
            w = inv1[f2[w]]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class PipeSystem:
    support: BalancedSubgraph
    first: Matching
    second: Matching

    @property
    def size(self) -> int:
        return self.support.m

    def chain(self) -> Dict[Tuple[int, int], int]:
        """second - first, edges directed black -> white."""
        return difference(self.second, self.first)


def pipe_systems(g: PlanarGraph, size: Optional[int] = None) -> Iterator[PipeSystem]:
    """Ordered pairs of matchings sharing a support; all sizes when ``size`` is None."""
    sizes = range(min(g.n, g.n_prime) + 1) if size is None else [size]
    for m in sizes:
        for h in balanced_subgraphs(g, m):
            ms = matchings_of(h)
            for m1 in ms:
                for m2 in ms:
                    yield PipeSystem(h, m1, m2)
