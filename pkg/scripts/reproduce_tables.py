"""Recompute every rectangle singular polynomial two ways and compare with the stored factors.

    python3 scripts/reproduce_tables.py [--max 8]
"""

from __future__ import annotations

import argparse
import time

from kastpoly.rectangles import closed_form_poly, general_rectangle_poly, load_reference


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max", type=int, default=8, help="largest side length")
    args = ap.parse_args()
    ref = load_reference()
    for M in range(1, args.max + 1):
        for N in range(1, M + 1):
            t0 = time.time()
            closed = closed_form_poly(M, N)
            general = general_rectangle_poly(M, N)
            key = f"[{M},{N}]"
            stored = ref[key].expanded() if key in ref else None
            status = "ok" if closed == general and stored in (None, closed) else "MISMATCH"
            tag = "table" if stored is not None else "-----"
            print(f"{key:>7} deg {closed.degree:>2}  {tag}  {status}  {time.time() - t0:5.2f}s  const={closed.coeffs[-1]}")


if __name__ == "__main__":
    main()
