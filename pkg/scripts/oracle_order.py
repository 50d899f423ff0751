"""Observed convergence order of the piecewise-constant base solve and its extrapolation.

For a linear potential the endpoint average equals the midpoint value and the
leading h^2 term vanishes, so the observed order is 4; curved potentials show 2.
"""
import argparse

import mpmath

from fdmethod import PolynomialPotential, PrecisionContext
from fdmethod.verify import richardson_oracle


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--coeffs", default="-60,120")
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--digits", type=int, default=40)
    args = ap.parse_args()
    ctx = PrecisionContext(args.digits, 10)
    q = PolynomialPotential.from_values(args.coeffs.split(","), ctx)
    run = richardson_oracle(q, (0, 1), args.n, ctx)
    print(f"extrapolated: {mpmath.nstr(run.value, args.digits - 10)}  (estimate {mpmath.nstr(run.error_estimate, 3)})")
    errs = [abs(r - run.value) for r in run.raw]
    for k, N in enumerate(run.cells):
        order = mpmath.log(errs[k - 1] / errs[k], 2) if k and errs[k] else None
        print(f"N={N:>6}  error {mpmath.nstr(errs[k], 3):>10}  order {mpmath.nstr(order, 4) if order else '-'}")


if __name__ == "__main__":
    main()
