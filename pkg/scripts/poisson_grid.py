"""Monte Carlo moments of X + r*lam against Bel_{n,r}(lam) over the default grid.

    python scripts/poisson_grid.py --samples 1000000 --seed 42
"""

import argparse
from dataclasses import replace

from extstirling.config import POISSON_GRID
from extstirling.poisson import moment_grid_check


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=POISSON_GRID.samples)
    ap.add_argument("--seed", type=int, default=POISSON_GRID.seed)
    ap.add_argument("--n-max", type=int, default=POISSON_GRID.n_max)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    grid = replace(POISSON_GRID, samples=args.samples, seed=args.seed, n_max=args.n_max)

    print(f"{'lam':>5}{'r':>6}{'n':>3}{'exact':>14}{'mean':>14}{'stderr':>12}{'z':>8}  ok")
    failures = 0
    for lam in grid.lambdas:
        for r in grid.rs:
            for rep in moment_grid_check(grid.n_max, lam, r, grid.samples, grid.seed, grid.threshold, args.workers):
                failures += not rep.passed
                print(
                    f"{lam:>5g}{r:>6g}{rep.n:>3}{rep.exact_value:>14.6g}{rep.empirical_mean:>14.6g}"
                    f"{rep.std_error:>12.4g}{rep.z_score:>8.2f}  {'yes' if rep.passed else 'NO'}"
                )
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
