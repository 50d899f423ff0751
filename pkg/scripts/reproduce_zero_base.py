"""Zero base potential on one interval, n = 1..4, ranks 0..10 and 20.

Prints our error and residual norm next to the published values.
"""
import argparse

import mpmath

from fdmethod import ProblemConfig, residual_norm, run_fd
from fdmethod.reference_data import KNOWN_EXACT, RANKS, ZERO_BASE


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--digits", type=int, default=60)
    args = ap.parse_args()
    for n in range(1, 5):
        res = run_fd(ProblemConfig(N=1, n=n, m=20, digits=args.digits, policy="zero"))
        exact = res.ctx.real(KNOWN_EXACT[n])
        print(f"n={n}  r_n={mpmath.nstr(res.theorem1.r_n, 4)}  convergent={res.theorem1.convergent}")
        print(f"{'m':>3} {'delta':>10} {'published':>10} {'omega':>10} {'published':>10}")
        for (d_pub, o_pub), m in zip(ZERO_BASE[n], RANKS):
            d = abs(res.lambda_truncated[m] - exact)
            print(f"{m:>3} {mpmath.nstr(d, 3):>10} {d_pub:>10.3g} {mpmath.nstr(residual_norm(res, m), 3):>10} {o_pub:>10.3g}")
        print()


if __name__ == "__main__":
    main()
