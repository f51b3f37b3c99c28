"""The standard set of small graphs used by the exhaustive identity checks."""

from __future__ import annotations

import random
from typing import List, Tuple

from .graph import PlanarGraph, aztec_diamond, from_ascii, rectangle_grid

RING = "###\n#.#\n###"


def random_subregion(seed: int, size: int = 4, low: int = 6, high: int = 12) -> str:
    """ASCII mask of a seeded random set of cells of the size x size block."""
    rng = random.Random(seed)
    cells = [(r, c) for r in range(size) for c in range(size)]
    keep = set(rng.sample(cells, rng.randint(low, high)))
    return "\n".join("".join("#" if (r, c) in keep else "." for c in range(size)) for r in range(size))


def fleet(max_cells: int = 12, n_random: int = 5) -> List[Tuple[str, PlanarGraph]]:
    """All rectangles with m*n <= max_cells, the order-1 Aztec diamond, the 8-cycle ring,
    and seeded random subregions of the 4x4 block."""
    out = []
    for m in range(1, max_cells + 1):
        for n in range(1, max_cells // m + 1):
            out.append((f"rect[{m},{n}]", rectangle_grid(m, n)))
    out.append(("aztec-1", aztec_diamond(1)))
    out.append(("ring8", from_ascii(RING)))
    for s in range(n_random):
        out.append((f"sub4x4-seed{s}", from_ascii(random_subregion(s))))
    return out
