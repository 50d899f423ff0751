"""Endpoint-average base potential on 2 and 3 uniform intervals, n = 1, 2."""
import argparse
import time

import mpmath

from fdmethod import ProblemConfig, residual_norm, run_fd
from fdmethod.reference_data import AVERAGE_BASE, KNOWN_EXACT, RANKS


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--digits", type=int, default=120)
    ap.add_argument("--rank", type=int, default=20)
    args = ap.parse_args()
    for (N, n), published in AVERAGE_BASE.items():
        t0 = time.time()
        res = run_fd(ProblemConfig(N=N, n=n, m=args.rank, digits=args.digits))
        exact = res.ctx.real(KNOWN_EXACT[n])
        print(f"N={N} n={n}  working digits {res.ctx.decimal_digits}  {time.time() - t0:.1f} s")
        print(f"{'m':>3} {'delta':>10} {'published':>10} {'omega':>10} {'published':>10}")
        for (d_pub, o_pub), m in zip(published, RANKS):
            if m > args.rank:
                break
            d = abs(res.lambda_truncated[m] - exact)
            print(f"{m:>3} {mpmath.nstr(d, 3):>10} {d_pub:>10.3g} {mpmath.nstr(residual_norm(res, m), 3):>10} {o_pub:>10.3g}")
        print()


if __name__ == "__main__":
    main()
