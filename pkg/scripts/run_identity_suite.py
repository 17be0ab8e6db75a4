#!/usr/bin/env python3
"""Prove the catalogued counting identities and time each proof.

Runs the fixed instantiations, the three parameter-free identities and, with
--random N, N extra random draws per parametrized family.
"""

import argparse
import random
import sys
import time

from dualcount.series import prove_identity, random_identity_params

FIXED = (
    ("KF1", "1;1;3;1,1,1"),
    ("KF1", "2;1,2;2;1,2"),
    ("KF1", "4;1,3,2,2;2;2,4"),
    ("KF2", "2;1;3,2;1,2,2;1,1"),
    ("KF2", "4;1,2;1,1;2;1"),
    ("KF3", "1;2,2,0,0;2,2;1,1;;"),
    ("KF4", "1,2;1;2"),
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--random", type=int, default=0, metavar="N")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--order", type=int, default=200,
                    help="series depth for the identity with no rational form")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    runs = list(FIXED) + [("PropX", None), ("PropA", None), ("PropY", None)]
    for fam in ("KF1", "KF2", "KF3", "KF4"):
        runs += [(fam, random_identity_params(fam, rng))
                 for _ in range(args.random)]

    failed = 0
    for identity, params in runs:
        start = time.monotonic()
        if identity == "PropY":
            report = prove_identity(identity, params, method="series",
                                    order=args.order)
        else:
            report = prove_identity(identity, params)
        elapsed = time.monotonic() - start
        mark = "ok" if report["verdict"] == "proven" else "FAILED"
        failed += report["verdict"] != "proven"
        print(f"{mark:6s} {identity:5s} {report['method']:7s} "
              f"deg/ord {report['degree_or_order']:4d} {elapsed:6.2f}s  "
              f"{report['params']}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
