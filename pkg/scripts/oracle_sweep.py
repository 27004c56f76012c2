"""Cross-check symbolic verdicts against the numeric oracle over many seeds.

Runs the catalog (expected true) and the mutant set (expected false).
"""

from __future__ import annotations

import argparse

from planeprover import theorems


def sweep(records, seeds: int, want: bool) -> list[str]:
    bad = []
    for rec in records:
        hits = [theorems.evaluate_numeric(rec.oracle_builder(), s).holds for s in range(seeds)]
        mark = "ok" if all(h == want for h in hits) else "MISMATCH"
        print(f"  {rec.id:<36} {sum(hits)}/{seeds} true  {mark}")
        if mark != "ok":
            bad.append(rec.id)
    return bad


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=5)
    args = ap.parse_args()
    print("catalog")
    bad = sweep(theorems.catalog(), args.seeds, True)
    print("mutants")
    bad += sweep(theorems.mutants(), args.seeds, False)
    print("all consistent" if not bad else f"mismatches: {', '.join(bad)}")
    return 0 if not bad else 1


if __name__ == "__main__":
    raise SystemExit(main())
