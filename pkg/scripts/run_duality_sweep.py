#!/usr/bin/env python3
"""Sweep a duality pair over the standard group catalogue and print the table.

Each cell shows the matched count N(gamma, left(n)) = N(gamma, right(n));
mismatches are flagged inline and make the script exit nonzero.
"""

import argparse
import sys

from dualcount.counting import Target, count_homs
from dualcount.errors import NotCoveredError
from dualcount.grouprep import GroupSpec

PAIRS = {
    "sp-so": ("Sp", "SO_odd"),
    "su-pu": ("SU", "PU"),
    "psp-spin": ("PSp", "Spin_odd"),
}

CATALOGUE = (
    [f"Z:{m}" for m in range(1, 13)]
    + [f"Dhat:{m}" for m in range(2, 7)]
    + ["That", "Ohat", "Ihat"]
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pair", choices=sorted(PAIRS), default="sp-so")
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--gamma", action="append",
                    help="restrict to specific groups (repeatable)")
    args = ap.parse_args()

    left, right = PAIRS[args.pair]
    labels = args.gamma or CATALOGUE
    header = ["gamma".ljust(8)] + [f"n={n}" for n in range(args.max_n + 1)]
    print("  ".join(h.rjust(6) for h in header))

    bad = 0
    for label in labels:
        g = GroupSpec.from_label(label)
        cells = []
        for n in range(args.max_n + 1):
            try:
                a = count_homs(g, Target(left, n))
                b = count_homs(g, Target(right, n))
            except NotCoveredError:
                cells.append("-")
                continue
            if a == b:
                cells.append(str(a))
            else:
                cells.append(f"{a}!={b}")
                bad += 1
        print("  ".join([label.ljust(8).rjust(6)] + [c.rjust(6) for c in cells]))

    if bad:
        print(f"{bad} mismatches", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
