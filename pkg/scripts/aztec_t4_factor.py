"""Multiplicity of the root t = 4 in the reduced Aztec diamond polynomials.

Odd orders 2k+1 show (t-4)^(4k); the script prints the multiplicity for each order.

    python3 scripts/aztec_t4_factor.py [--max-order 5]
"""

from __future__ import annotations

import argparse

from kastpoly.exactalg import Poly
from kastpoly.rectangles import general_aztec_poly


def multiplicity(p: Poly, root: int) -> int:
    d = Poly.from_ints([1, -root])
    k = 0
    while p.degree > 0:
        quo, rem = p.divmod_monic(d)
        if not rem.is_zero():
            break
        p, k = quo, k + 1
    return k


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-order", type=int, default=5)
    args = ap.parse_args()
    for order in range(1, args.max_order + 1):
        p = general_aztec_poly(order)
        print(f"order {order}: degree {p.degree:>3}, (t-4) multiplicity {multiplicity(p, 4)}")


if __name__ == "__main__":
    main()
