"""Run every identity sweep on the default probe grids and print a summary table.

    python scripts/identity_sweep.py --n-max 16
"""

import argparse
import time

from extstirling.cli import IDENTITIES, run_verification


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=12)
    args = ap.parse_args()

    print(f"{'identity':<20}{'checked':>10}{'failures':>10}{'seconds':>10}")
    all_ok = True
    for identity in IDENTITIES:
        t0 = time.perf_counter()
        rep = run_verification(identity, args.n_max)
        dt = time.perf_counter() - t0
        all_ok &= rep.passed
        print(f"{identity:<20}{rep.checked:>10}{len(rep.failures):>10}{dt:>10.2f}")
    raise SystemExit(0 if all_ok else 1)


if __name__ == "__main__":
    main()
