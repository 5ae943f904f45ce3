#!/usr/bin/env python3
"""Sweep the ACK-channel noise level and measure decode reliability.

For each sigma, random non-empty station subsets are superposed with
Gaussian noise, thresholded, and decoded exactly; a trial succeeds when
the decoded subset equals the transmitted one. The ideal channel has
margin 0.5 on every chip, so reliability collapses once sigma approaches
that margin.

Example:
    python scripts/noise_sweep.py --n 7 --sigmas 0.05,0.1,0.2,0.3,0.5 \
        --trials 2000 --seed 1
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from collisioncode import (build_codebook, decode_exact, superpose_noisy,
                           threshold_noisy)


def sweep(n: int, sigmas: list[float], trials: int, seed: int) -> list[dict]:
    cb = build_codebook(n)
    master = np.random.default_rng(seed)
    results = []
    for sigma in sigmas:
        exact = 0
        nomatch = 0
        for _ in range(trials):
            mask = int(master.integers(1, 2 ** n))
            subset = frozenset(i + 1 for i in range(n) if mask >> i & 1)
            noise_seed = int(master.integers(0, 2 ** 63))
            bits = threshold_noisy(superpose_noisy(cb, subset, sigma, noise_seed))
            outcome = decode_exact(cb, bits)
            if outcome.kind == "identified" and outcome.stations == subset:
                exact += 1
            elif outcome.kind == "nomatch":
                nomatch += 1
        results.append({
            "sigma": sigma,
            "trials": trials,
            "exact_rate": exact / trials,
            "nomatch_rate": nomatch / trials,
            "wrong_rate": (trials - exact - nomatch) / trials,
        })
    return results


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--sigmas", default="0.05,0.1,0.2,0.3,0.4,0.5")
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--json", action="store_true", help="emit JSON only")
    args = ap.parse_args()
    sigmas = [float(tok) for tok in args.sigmas.split(",")]
    results = sweep(args.n, sigmas, args.trials, args.seed)
    if args.json:
        print(json.dumps({"n": args.n, "seed": args.seed, "results": results}))
        return
    print(f"n={args.n} trials={args.trials} seed={args.seed}")
    print(f"{'sigma':>7} {'exact':>8} {'nomatch':>8} {'wrong':>8}")
    for row in results:
        print(f"{row['sigma']:>7.3f} {row['exact_rate']:>8.4f} "
              f"{row['nomatch_rate']:>8.4f} {row['wrong_rate']:>8.4f}")


if __name__ == "__main__":
    main()
