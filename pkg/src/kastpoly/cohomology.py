"""Edge cocycles with values in (Q/Z) + Z and the Kasteleyn class.

A value ``Label(rot, qexp)`` stands for ``exp(2 pi i rot) * q**qexp``. A
:class:`Cocycle` stores one value per edge, oriented from its black endpoint
to its white endpoint; the reversed edge carries the negated value.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from .geometry import crossing
from .graph import (
    BLACK,
    BalancedSubgraph,
    Edge,
    GraphInputError,
    PlanarGraph,
    chord_cycle,
    interior_vertex_count,
    parse_edge_options,
    spanning_forest,
)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Label:
    rot: Fraction = Fraction(0)
    qexp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "rot", Fraction(self.rot) % 1)
        object.__setattr__(self, "qexp", int(self.qexp))

    def __add__(self, other: "Label") -> "Label":
        return Label(self.rot + other.rot, self.qexp + other.qexp)

    def __neg__(self) -> "Label":
        return Label(-self.rot, -self.qexp)

    def __sub__(self, other: "Label") -> "Label":
        return Label(self.rot - other.rot, self.qexp - other.qexp)

    def __mul__(self, k: int) -> "Label":
        return Label(self.rot * k, self.qexp * k)

    __rmul__ = __mul__

    def __getitem__(self, i):
        return (self.rot, self.qexp)[i]

    def __iter__(self):
        return iter((self.rot, self.qexp))


ZERO = Label()

DirectedEdge = Tuple[int, int]
Chain = Union[Mapping[DirectedEdge, int], Iterable[DirectedEdge]]


class UnknownEdgeError(KeyError):
    pass


@dataclass(frozen=True)
class Cocycle:
    """Edge values keyed by ``(black, white)``."""

    values: Mapping[Edge, Label]

    def __hash__(self):
        return hash(frozenset(self.values.items()))

    @property
    def edges(self):
        return self.values.keys()

    def value(self, u: int, v: int) -> Label:
        """Value on the directed edge u -> v."""
        val = self.values.get((u, v))
        if val is not None:
            return val
        val = self.values.get((v, u))
        if val is not None:
            return -val
        raise UnknownEdgeError(f"no edge {u}-{v}")

    def __add__(self, other: "Cocycle") -> "Cocycle":
        if self.values.keys() != other.values.keys():
            raise ValueError("cocycles live on different edge sets")
        return Cocycle({e: v + other.values[e] for e, v in self.values.items()})

    def __neg__(self) -> "Cocycle":
        return Cocycle({e: -v for e, v in self.values.items()})

    def __sub__(self, other: "Cocycle") -> "Cocycle":
        return self + (-other)

    def without_q(self) -> "Cocycle":
        return Cocycle({e: Label(v.rot, 0) for e, v in self.values.items()})


def _items(chain: Chain):
    if isinstance(chain, Mapping):
        return chain.items()
    return ((e, 1) for e in chain)


def evaluate(c: Cocycle, chain: Chain) -> Label:
    """Multiplicity-weighted sum of c over a chain of directed edges."""
    rot = Fraction(0)
    qexp = 0
    for (u, v), k in _items(chain):
        val = c.value(u, v)
        rot += k * val.rot
        qexp += k * val.qexp
    return Label(rot, qexp)


def zero_class(g: Union[PlanarGraph, BalancedSubgraph]) -> Cocycle:
    return Cocycle({e: ZERO for e in g.edges})


def graph_labels(g: PlanarGraph) -> Cocycle:
    """Cocycle built from the optional ``rot=``/``q=`` labels of a graph file."""
    vals = {e: ZERO for e in g.edges}
    for e, r, q in g.labels:
        vals[e] = Label(r, q)
    return Cocycle(vals)


def random_class(g: Union[PlanarGraph, BalancedSubgraph], rng: random.Random, denominator: int = 4) -> Cocycle:
    """Independent uniform rotations k/denominator on every edge."""
    return Cocycle({e: Label(Fraction(rng.randrange(denominator), denominator)) for e in g.edges})


@lru_cache(maxsize=8192)
def kasteleyn_class(g: PlanarGraph) -> Cocycle:
    """Z/2 class with k(C) = m + l + 1 (mod 2) on every cycle of length 2l enclosing m vertices.

    Forest edges get 0; each chord gets the value that makes its fundamental
    cycle satisfy the rule. That cycle meets no other chord, so no solve is needed.
    """
    forest = spanning_forest(g)
    vals = {e: ZERO for e in g.edges}
    for chord in forest.chords:
        cyc = chord_cycle(forest, chord)
        m = interior_vertex_count(g, cyc)
        if (m + cyc.half_length + 1) % 2:
            vals[chord] = Label(HALF)
    return Cocycle(vals)


def _require_witnesses(g: PlanarGraph):
    if any(h.witness is None for h in g.holes):
        raise GraphInputError("witness", "q-features need a witness point for every hole")


def chain_area(g: PlanarGraph, chain: Chain) -> int:
    """Total winding of a closed chain around the hole witnesses (no closedness check)."""
    _require_witnesses(g)
    segs = [(g.pos(u), g.pos(v), k) for (u, v), k in _items(chain)]
    return sum(k * crossing(h.witness, a, b) for h in g.holes for a, b, k in segs)


def area(g: PlanarGraph, chain: Chain) -> int:
    """Signed count of holes surrounded by a closed chain, with multiplicity."""
    items = list(_items(chain))
    bd: Dict[int, int] = {}
    for (u, v), k in items:
        if (u, v) not in g.edge_set and (v, u) not in g.edge_set:
            raise UnknownEdgeError(f"no edge {u}-{v}")
        bd[u] = bd.get(u, 0) - k
        bd[v] = bd.get(v, 0) + k
    if any(bd.values()):
        raise ValueError("chain is not closed")
    return chain_area(g, dict(_merge(items)))


def _merge(items):
    acc: Dict[DirectedEdge, int] = {}
    for e, k in items:
        acc[e] = acc.get(e, 0) + k
    return acc.items()


@lru_cache(maxsize=256)
def kasteleyn_q_class(g: PlanarGraph) -> Cocycle:
    """Kasteleyn class with a q-exponent measuring winding around the holes.

    The rotation part is the ordinary Kasteleyn class and the q part evaluates
    to +1 on each counterclockwise hole boundary. With a zero rotation part
    the q=1 specialisation would no longer count matchings.
    """
    _require_witnesses(g)
    forest = spanning_forest(g)
    k = kasteleyn_class(g)
    vals = dict(k.values)
    for chord in forest.chords:
        cyc = chord_cycle(forest, chord)
        vals[chord] = Label(vals[chord].rot, chain_area(g, cyc.directed_edges()))
    return Cocycle(vals)


def restrict(c: Cocycle, h: Union[BalancedSubgraph, PlanarGraph]) -> Cocycle:
    """Keep the values on the edges of h."""
    return Cocycle({e: c.values[e] for e in h.edges})


def relative_class(g: PlanarGraph, h: BalancedSubgraph) -> Cocycle:
    """Restriction of g's Kasteleyn class minus the Kasteleyn class of h drawn on its own."""
    return restrict(kasteleyn_class(g), h) - kasteleyn_class(h.graph)


@dataclass(frozen=True)
class VertexPotential:
    values: Mapping[int, Label]

    @classmethod
    def random(cls, g: PlanarGraph, rng: random.Random, denominator: int = 4, qspan: int = 0) -> "VertexPotential":
        return cls(
            {
                v.id: Label(Fraction(rng.randrange(denominator), denominator), rng.randint(-qspan, qspan))
                for v in g.vertices
            }
        )

    def __neg__(self) -> "VertexPotential":
        return VertexPotential({k: -v for k, v in self.values.items()})


def gauge_transform(c: Cocycle, d: VertexPotential) -> Cocycle:
    """Add the coboundary of d: the edge u -> v gains d(v) - d(u)."""
    return Cocycle({(b, w): val + d.values[w] - d.values[b] for (b, w), val in c.values.items()})


def same_class(a: Cocycle, b: Cocycle, g: PlanarGraph) -> bool:
    """Equality in cohomology, decided on the fundamental-cycle basis."""
    forest = spanning_forest(g)
    return all(
        evaluate(a, chord_cycle(forest, e).directed_edges()) == evaluate(b, chord_cycle(forest, e).directed_edges())
        for e in forest.chords
    )


# ---------------------------------------------------------------------------
# serialization


def format_cocycle(c: Cocycle) -> str:
    lines = []
    for (b, w), v in sorted(c.values.items()):
        lines.append(f"l {b} {w} rot={v.rot.numerator}/{v.rot.denominator} q={v.qexp}")
    return "\n".join(lines) + "\n"


def parse_cocycle(text: str, g: PlanarGraph) -> Cocycle:
    """Read ``l`` lines (and labelled ``e`` lines of a graph file); other records are ignored.

    Unlisted edges get 0. Values are read as black -> white whatever the id order.
    """
    vals = {e: ZERO for e in g.edges}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] not in ("l", "e"):
            continue
        if len(toks) < 3:
            raise GraphInputError("syntax", "expected '<l|e> <id1> <id2> ...'", lineno)
        try:
            u, v = int(toks[1]), int(toks[2])
        except ValueError:
            raise GraphInputError("syntax", "bad vertex id", lineno) from None
        if u not in g.by_id or v not in g.by_id:
            raise GraphInputError("dangling", f"label on unknown edge {u}-{v}", lineno)
        e = (u, v) if g.color(u) == BLACK else (v, u)
        if e not in vals:
            raise GraphInputError("dangling", f"label on non-edge {u}-{v}", lineno)
        rot, qexp = parse_edge_options(toks[3:], lineno)
        vals[e] = Label(rot, qexp)
    return Cocycle(vals)
