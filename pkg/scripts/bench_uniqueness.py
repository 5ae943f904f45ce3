#!/usr/bin/env python3
"""Time the exhaustive uniqueness enumeration across codebook sizes.

Example:
    python scripts/bench_uniqueness.py --workers 1,8
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from collisioncode import build_codebook, verify_uniqueness


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1,3,5,7,9,11,13,15")
    ap.add_argument("--workers", default="1")
    args = ap.parse_args()
    sizes = [int(tok) for tok in args.sizes.split(",")]
    workers = [int(tok) for tok in args.workers.split(",")]
    print(f"{'n':>3} {'subsets':>8} {'chips':>8} "
          + " ".join(f"{'w=' + str(w):>10}" for w in workers))
    for n in sizes:
        cb = build_codebook(n)
        times = []
        for w in workers:
            report = verify_uniqueness(cb, workers=w)
            assert not report.collisions, f"collision at n={n}"
            times.append(report.elapsed)
        print(f"{cb.n_rows:>3} {2 ** cb.n_rows - 1:>8} {cb.v_length:>8} "
              + " ".join(f"{t * 1000:>9.1f}ms" for t in times))


if __name__ == "__main__":
    main()
