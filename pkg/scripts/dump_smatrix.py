#!/usr/bin/env python3
"""Dump the modular S-matrix of an affine algebra at a level as JSON.

Also prints the numerical quality of the matrix (unitarity, symmetry) and
the charge-conjugation permutation to stderr, so the dumped data carries its
own certificate.
"""

import argparse
import json
import sys

from dualcount.affine import (charge_conjugation, s_matrix, smatrix_json,
                              symmetry_error, unitarity_error)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--type", required=True, help="e.g. A2, D4, E6")
    ap.add_argument("--level", type=int, required=True)
    ap.add_argument("--digits", type=int, default=12)
    ap.add_argument("--enable-e7", action="store_true",
                    help="allow the large E7 Weyl sums")
    ap.add_argument("--out", help="write JSON here instead of stdout")
    args = ap.parse_args()

    sm = s_matrix(args.type, args.level, enable_e7=args.enable_e7)
    payload = smatrix_json(sm, digits=args.digits)
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)

    perm, _, err = charge_conjugation(sm)
    print(f"size {sm.size}  unitarity {unitarity_error(sm):.2e}  "
          f"symmetry {symmetry_error(sm):.2e}  conjugation {err:.2e}",
          file=sys.stderr)
    print(f"conjugation permutation: {list(perm)}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
