"""Prove every catalog theorem and print a timing table.

Usage: python scripts/prove_catalog.py [--parallel] [--timeout SEC] [--json OUT]
"""

from __future__ import annotations

import argparse
import json
import time

from planeprover import theorems


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--parallel", action="store_true")
    ap.add_argument("--timeout", type=float, default=300.0)
    ap.add_argument("--json", metavar="OUT", help="also write results to this file")
    args = ap.parse_args()

    t0 = time.perf_counter()
    results = theorems.prove_all(parallel=args.parallel, timeout=args.timeout)
    total = time.perf_counter() - t0
    width = max(len(r.id) for r in results)
    for r in results:
        print(f"{r.id:<{width}}  {r.verdict:<11}  {r.millis:>7} ms  deg {r.degree:>3}  terms {r.nterms:>5}")
    print(f"total wall time {total:.2f} s")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([r.to_json() for r in results], fh, indent=2)
    ok = all(r.verdict in ("proved", "certificate") for r in results)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
