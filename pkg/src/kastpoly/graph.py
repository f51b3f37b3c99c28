"""Planar bipartite graphs with exact straight-line drawings."""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .geometry import (
    Point,
    on_segment,
    orient,
    segments_cross,
    strictly_inside,
    winding_number,
)

WHITE = "w"
BLACK = "b"

Edge = Tuple[int, int]  # always (black id, white id)


class GraphInputError(ValueError):
    """Malformed or invalid graph input. ``code`` names the failure class."""

    CODES = ("syntax", "duplicate", "dangling", "bipartite", "crossing", "hole", "witness", "region")

    def __init__(self, code: str, message: str, line: Optional[int] = None):
        assert code in self.CODES, code
        self.code = code
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{code}: {where}{message}")


@dataclass(frozen=True)
class Vertex:
    id: int
    x: Fraction
    y: Fraction
    color: str

    @property
    def pos(self) -> Point:
        return (self.x, self.y)


@dataclass(frozen=True)
class Hole:
    boundary: Tuple[int, ...]
    witness: Optional[Point] = None


@dataclass(frozen=True)
class PlanarGraph:
    """Immutable drawn bipartite graph.

    ``edges`` are stored as sorted ``(black, white)`` pairs. ``labels`` holds
    optional per-edge ``(edge, rot, qexp)`` values read from a graph file,
    oriented from the black to the white endpoint.
    """

    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]
    holes: Tuple[Hole, ...] = ()
    labels: Tuple[Tuple[Edge, Fraction, int], ...] = ()

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.vertices, self.edges, self.holes, self.labels))

    @cached_property
    def by_id(self) -> Dict[int, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def whites(self) -> Tuple[int, ...]:
        return tuple(v.id for v in self.vertices if v.color == WHITE)

    @cached_property
    def blacks(self) -> Tuple[int, ...]:
        return tuple(v.id for v in self.vertices if v.color == BLACK)

    @property
    def n(self) -> int:
        return len(self.whites)

    @property
    def n_prime(self) -> int:
        return len(self.blacks)

    @cached_property
    def adjacency(self) -> Dict[int, Tuple[int, ...]]:
        adj: Dict[int, List[int]] = {v.id: [] for v in self.vertices}
        for b, w in self.edges:
            adj[b].append(w)
            adj[w].append(b)
        return {k: tuple(sorted(v)) for k, v in adj.items()}

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def pos(self, vid: int) -> Point:
        return self.by_id[vid].pos

    def color(self, vid: int) -> str:
        return self.by_id[vid].color

    def n_components(self) -> int:
        return len(spanning_forest(self).roots)


def make_graph(vertices, edges, holes=(), labels=(), check: bool = True) -> PlanarGraph:
    """Build a graph from ``(id, x, y, color)`` tuples and id pairs.

    Edges may be given in either endpoint order; they are normalized to
    ``(black, white)``. With ``check`` the full drawing validation runs.
    """
    verts = []
    seen = set()
    for vid, x, y, color in vertices:
        if vid in seen:
            raise GraphInputError("duplicate", f"vertex id {vid} repeated")
        if color not in (WHITE, BLACK):
            raise GraphInputError("syntax", f"bad color {color!r} for vertex {vid}")
        seen.add(vid)
        verts.append(Vertex(int(vid), Fraction(x), Fraction(y), color))
    verts.sort(key=lambda v: v.id)
    colors = {v.id: v.color for v in verts}

    def orient_edge(u, v):
        for a in (u, v):
            if a not in colors:
                raise GraphInputError("dangling", f"edge {u}-{v} references unknown vertex {a}")
        if colors[u] == colors[v]:
            raise GraphInputError("bipartite", f"edge {u}-{v} joins two {colors[u]} vertices")
        return (u, v) if colors[u] == BLACK else (v, u)

    norm = set()
    for u, v in edges:
        e = orient_edge(u, v)
        if e in norm:
            raise GraphInputError("duplicate", f"edge {u}-{v} repeated")
        norm.add(e)
    lab = tuple(sorted((orient_edge(*e), Fraction(r) % 1, int(q)) for e, r, q in labels))
    g = PlanarGraph(tuple(verts), tuple(sorted(norm)), tuple(holes), lab)
    if check:
        validate(g)
    return g


def validate(g: PlanarGraph) -> None:
    """Check the straight-line drawing and the declared holes."""
    pos = {v.id: v.pos for v in g.vertices}
    # coincident vertices
    at: Dict[Point, int] = {}
    for v in g.vertices:
        if v.pos in at:
            raise GraphInputError("crossing", f"vertices {at[v.pos]} and {v.id} coincide")
        at[v.pos] = v.id
    boxes = []
    for b, w in g.edges:
        p, q = pos[b], pos[w]
        boxes.append((min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1])))
    for i, j in itertools.combinations(range(len(g.edges)), 2):
        bi, bj = boxes[i], boxes[j]
        if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
            continue
        e, f = g.edges[i], g.edges[j]
        shared = set(e) & set(f)
        if not shared:
            if segments_cross(pos[e[0]], pos[e[1]], pos[f[0]], pos[f[1]]):
                raise GraphInputError("crossing", f"edges {e[0]}-{e[1]} and {f[0]}-{f[1]} intersect")
        else:
            (c,) = shared
            a = e[0] if e[1] == c else e[1]
            d = f[0] if f[1] == c else f[1]
            if orient(pos[c], pos[a], pos[d]) == 0 and (
                on_segment(pos[a], pos[c], pos[d]) or on_segment(pos[d], pos[c], pos[a])
            ):
                raise GraphInputError("crossing", f"edges {e[0]}-{e[1]} and {f[0]}-{f[1]} overlap")
    for v in g.vertices:
        for (b, w), box in zip(g.edges, boxes):
            if v.id in (b, w) or not (box[0] <= v.x <= box[1] and box[2] <= v.y <= box[3]):
                continue
            if on_segment(v.pos, pos[b], pos[w]):
                raise GraphInputError("crossing", f"vertex {v.id} lies on edge {b}-{w}")
    for h in g.holes:
        ring = h.boundary
        if len(ring) < 3:
            raise GraphInputError("hole", f"hole boundary {ring} too short")
        for u, v in zip(ring, ring[1:] + ring[:1]):
            if u not in pos or v not in pos:
                raise GraphInputError("dangling", f"hole boundary references unknown vertex")
            if (u, v) not in g.edge_set and (v, u) not in g.edge_set:
                raise GraphInputError("hole", f"hole boundary step {u}-{v} is not an edge")
        if h.witness is not None:
            poly = [pos[u] for u in ring]
            if not strictly_inside(h.witness, poly):
                raise GraphInputError("witness", f"witness {h.witness} not strictly inside hole {ring}")
            if winding_number(h.witness, poly) != 1:
                raise GraphInputError("hole", f"hole boundary {ring} is not counterclockwise")


# ---------------------------------------------------------------------------
# file format

_NUM = re.compile(r"^-?\d+(/\d+)?$")


def _num(tok: str, lineno: int) -> Fraction:
    if not _NUM.match(tok):
        raise GraphInputError("syntax", f"bad number {tok!r}", lineno)
    f = Fraction(tok)
    return f


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphInputError("syntax", f"bad integer {tok!r}", lineno) from None


def parse_edge_options(opts: Sequence[str], lineno: int) -> Tuple[Fraction, int]:
    rot, qexp = Fraction(0), 0
    for opt in opts:
        key, _, val = opt.partition("=")
        if key == "rot" and val:
            rot = _num(val, lineno) % 1
        elif key == "q" and val:
            qexp = _int(val, lineno)
        else:
            raise GraphInputError("syntax", f"unknown edge option {opt!r}", lineno)
    return rot, qexp


def parse_graph(text: str, check: bool = True) -> PlanarGraph:
    """Parse the line-oriented ``v``/``e``/``h`` graph format."""
    vertices, edges, labels, holes = [], [], [], []
    vline: Dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kind, args = toks[0], toks[1:]
        if kind == "v":
            if len(args) != 4 or args[3] not in (WHITE, BLACK):
                raise GraphInputError("syntax", "expected 'v <id> <x> <y> <w|b>'", lineno)
            vid = _int(args[0], lineno)
            if vid in vline:
                raise GraphInputError("duplicate", f"vertex id {vid} repeated", lineno)
            vline[vid] = lineno
            vertices.append((vid, _num(args[1], lineno), _num(args[2], lineno), args[3]))
        elif kind == "e":
            if len(args) < 2:
                raise GraphInputError("syntax", "expected 'e <id1> <id2> [rot=p/d] [q=k]'", lineno)
            u, v = _int(args[0], lineno), _int(args[1], lineno)
            rot, qexp = parse_edge_options(args[2:], lineno)
            edges.append(((u, v), lineno))
            if rot or qexp:
                labels.append(((u, v), rot, qexp))
        elif kind == "h":
            ids, wx, wy = [], None, None
            for tok in args:
                if tok.startswith("wx="):
                    wx = _num(tok[3:], lineno)
                elif tok.startswith("wy="):
                    wy = _num(tok[3:], lineno)
                else:
                    ids.append(_int(tok, lineno))
            if (wx is None) != (wy is None):
                raise GraphInputError("syntax", "witness needs both wx= and wy=", lineno)
            holes.append(Hole(tuple(ids), None if wx is None else (wx, wy)))
        else:
            raise GraphInputError("syntax", f"unknown record {kind!r}", lineno)
    # report edge errors against their source line
    colors = {v[0]: v[3] for v in vertices}
    seen = set()
    for (u, v), lineno in edges:
        for a in (u, v):
            if a not in colors:
                raise GraphInputError("dangling", f"edge {u}-{v} references unknown vertex {a}", lineno)
        if colors[u] == colors[v]:
            raise GraphInputError("bipartite", f"edge {u}-{v} joins two {colors[u]} vertices", lineno)
        key = frozenset((u, v))
        if key in seen:
            raise GraphInputError("duplicate", f"edge {u}-{v} repeated", lineno)
        seen.add(key)
    return make_graph(vertices, [e for e, _ in edges], holes, labels, check=check)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_graph(g: PlanarGraph) -> str:
    """Canonical serialization; ``parse_graph(format_graph(g)) == g``."""
    lab = {e: (r, q) for e, r, q in g.labels}
    out = []
    for v in g.vertices:
        out.append(f"v {v.id} {_fmt(v.x)} {_fmt(v.y)} {v.color}")
    for e in g.edges:
        line = f"e {e[0]} {e[1]}"
        if e in lab:
            r, q = lab[e]
            line += f" rot={r.numerator}/{r.denominator} q={q}"
        out.append(line)
    for h in g.holes:
        line = "h " + " ".join(map(str, h.boundary))
        if h.witness is not None:
            line += f" wx={_fmt(h.witness[0])} wy={_fmt(h.witness[1])}"
        out.append(line)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# builders


def _square_holes(cells: Dict[Tuple[int, int], int], origin: Fraction = Fraction(0)):
    """Unit squares whose four corners are all present, boundary ccw."""
    holes = []
    for (x, y) in sorted(cells, key=lambda p: (p[1], p[0])):
        corners = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
        if all(c in cells for c in corners):
            holes.append(
                Hole(tuple(cells[c] for c in corners), (Fraction(x) + Fraction(1, 2) + origin, Fraction(y) + Fraction(1, 2) + origin))
            )
    return holes


def _lattice_graph(cells: Dict[Tuple[int, int], int], colors: Dict[Tuple[int, int], str], shift: Fraction = Fraction(0)):
    vertices = [(vid, Fraction(x) + shift, Fraction(y) + shift, colors[(x, y)]) for (x, y), vid in cells.items()]
    edges = []
    for (x, y), vid in cells.items():
        for nb in ((x + 1, y), (x, y + 1)):
            if nb in cells:
                edges.append((vid, cells[nb]))
    return make_graph(vertices, edges, _square_holes(cells, shift), check=False)


def rectangle_grid(M: int, N: int) -> PlanarGraph:
    """Grid on the integer points (k, l), 1 <= k <= M, 1 <= l <= N; white iff k + l even."""
    if M < 1 or N < 1:
        raise ValueError("rectangle dimensions must be positive")
    cells = {(k, l): (l - 1) * M + k for l in range(1, N + 1) for k in range(1, M + 1)}
    colors = {p: WHITE if (p[0] + p[1]) % 2 == 0 else BLACK for p in cells}
    return _lattice_graph(cells, colors)


def aztec_diamond(order: int) -> PlanarGraph:
    """Cell-adjacency graph of the Aztec diamond: cells centred at half-integers with |x|+|y| <= order."""
    if order < 1:
        raise ValueError("order must be positive")
    # lower-left corners (i, j) of the cells; centre = corner + 1/2
    corners = [
        (i, j)
        for j in range(order - 1, -order - 1, -1)
        for i in range(-order, order)
        if abs(Fraction(2 * i + 1, 2)) + abs(Fraction(2 * j + 1, 2)) <= order
    ]
    cells = {c: vid for vid, c in enumerate(corners, 1)}
    colors = {c: WHITE if (c[0] + c[1]) % 2 == 0 else BLACK for c in cells}
    return _lattice_graph(cells, colors, Fraction(1, 2))


def from_ascii(region: str) -> PlanarGraph:
    """One vertex per '#' at (column, -row), coloured by (row + column) parity."""
    rows = region.split("\n")
    cells = {}
    vid = 0
    for r, row in enumerate(rows):
        for c, ch in enumerate(row.rstrip("\r")):
            if ch == "#":
                vid += 1
                cells[(c, -r)] = vid
            elif ch != ".":
                raise GraphInputError("region", f"unexpected character {ch!r}", r + 1)
    if not cells:
        raise GraphInputError("region", "region has no cells")
    colors = {p: WHITE if (p[0] - p[1]) % 2 == 0 else BLACK for p in cells}
    return _lattice_graph(cells, colors)


# ---------------------------------------------------------------------------
# cycles


@dataclass(frozen=True)
class Cycle:
    """Closed walk given by its vertex sequence; the last vertex joins the first."""

    vertices: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def half_length(self) -> int:
        return len(self.vertices) // 2

    def directed_edges(self) -> List[Tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def reversed(self) -> "Cycle":
        return Cycle(tuple(reversed(self.vertices)))


@dataclass(frozen=True)
class Forest:
    parent: Dict[int, Optional[int]]
    depth: Dict[int, int]
    roots: Tuple[int, ...]
    tree_edges: frozenset
    chords: Tuple[Edge, ...]


_forest_cache: Dict[PlanarGraph, Forest] = {}


def spanning_forest(g: PlanarGraph) -> Forest:
    """BFS forest from the smallest unvisited id; neighbours visited in id order."""
    hit = _forest_cache.get(g)
    if hit is not None:
        return hit
    parent: Dict[int, Optional[int]] = {}
    depth: Dict[int, int] = {}
    roots = []
    tree = set()
    for v in g.vertices:
        if v.id in parent:
            continue
        roots.append(v.id)
        parent[v.id] = None
        depth[v.id] = 0
        queue = deque([v.id])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in parent:
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    tree.add(frozenset((u, w)))
                    queue.append(w)
    chords = tuple(e for e in g.edges if frozenset(e) not in tree)
    forest = Forest(parent, depth, tuple(roots), frozenset(tree), chords)
    if len(_forest_cache) > 4096:
        _forest_cache.clear()
    _forest_cache[g] = forest
    return forest


def tree_path(forest: Forest, u: int, v: int) -> List[int]:
    """Vertices of the forest path from u to v (inclusive)."""
    up, down = [u], [v]
    a, b = u, v
    while forest.depth[a] > forest.depth[b]:
        a = forest.parent[a]
        up.append(a)
    while forest.depth[b] > forest.depth[a]:
        b = forest.parent[b]
        down.append(b)
    while a != b:
        a, b = forest.parent[a], forest.parent[b]
        if a is None or b is None:
            raise ValueError(f"{u} and {v} lie in different components")
        up.append(a)
        down.append(b)
    return up + down[-2::-1]


def chord_cycle(forest: Forest, chord: Edge) -> Cycle:
    """Fundamental cycle of a chord, traversing the chord from black to white."""
    b, w = chord
    return Cycle(tuple(tree_path(forest, w, b)))


def fundamental_cycles(g: PlanarGraph) -> List[Cycle]:
    """One cycle per non-forest edge; |E| - |V| + #components of them."""
    forest = spanning_forest(g)
    return [chord_cycle(forest, e) for e in forest.chords]


def interior_vertex_count(g: PlanarGraph, c: Cycle) -> int:
    """Number of vertices of g strictly inside the polygon traced by c."""
    vs = c.vertices
    if len(set(vs)) != len(vs) or len(vs) < 3:
        raise ValueError(f"cycle {vs} is not simple")
    poly = [g.pos(v) for v in vs]
    k = len(poly)
    for i in range(k):
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            if segments_cross(poly[i], poly[(i + 1) % k], poly[j], poly[(j + 1) % k]):
                raise ValueError(f"cycle {vs} is not a simple polygon")
    on = set(vs)
    return sum(1 for v in g.vertices if v.id not in on and strictly_inside(v.pos, poly))


# ---------------------------------------------------------------------------
# balanced subgraphs


@dataclass(frozen=True)
class BalancedSubgraph:
    """Induced subgraph on equally many white and black vertices of ``parent``."""

    parent: PlanarGraph = field(repr=False)
    whites: Tuple[int, ...]
    blacks: Tuple[int, ...]

    def __post_init__(self):
        if len(self.whites) != len(self.blacks):
            raise ValueError("balanced subgraph needs equal white and black counts")

    def __hash__(self) -> int:
        return hash((self.whites, self.blacks))

    @property
    def m(self) -> int:
        return len(self.whites)

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        ws = set(self.whites)
        bs = set(self.blacks)
        return tuple(e for e in self.parent.edges if e[0] in bs and e[1] in ws)

    @cached_property
    def graph(self) -> PlanarGraph:
        """The subgraph as a drawn graph of its own (coordinates inherited, no holes)."""
        keep = set(self.whites) | set(self.blacks)
        return PlanarGraph(tuple(v for v in self.parent.vertices if v.id in keep), self.edges)


def balanced_subgraphs(g: PlanarGraph, m: int) -> Iterator[BalancedSubgraph]:
    """Every choice of m white and m black vertices, in lexicographic order."""
    if m < 0 or m > min(g.n, g.n_prime):
        raise ValueError(f"m={m} out of range 0..{min(g.n, g.n_prime)}")
    for ws in itertools.combinations(g.whites, m):
        for bs in itertools.combinations(g.blacks, m):
            yield BalancedSubgraph(g, ws, bs)
