"""Run every identity check on the standard graph fleet and print a table.

    python3 scripts/fleet_report.py [--seed 0] [--json out.json]
"""

from __future__ import annotations

import argparse
import json

from kastpoly.fleet import fleet
from kastpoly.singular import THEOREMS, VerifyLimits, verify_identities


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write all reports to this file")
    args = ap.parse_args()
    rows, dump = [], []
    for name, g in fleet():
        cells = []
        for which in THEOREMS:
            r = verify_identities(g, which, VerifyLimits(), seed=args.seed, description=name)
            cells.append("ok" if r.passed else "FAIL")
            dump.append(r.to_json())
        rows.append((name, len(g.vertices), cells))
    print(f"{'graph':<14}{'|V|':>4}  " + " ".join(f"{t:>6}" for t in THEOREMS))
    for name, nv, cells in rows:
        print(f"{name:<14}{nv:>4}  " + " ".join(f"{c:>6}" for c in cells))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(dump, fh)


if __name__ == "__main__":
    main()
