"""Tabulate the triple integral phi_L against its closed form over a dense degree range."""

import argparse
import csv
import sys

import numpy as np

from trilegendre import identities as idt


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=float, default=-0.9)
    ap.add_argument("--hi", type=float, default=2.5)
    ap.add_argument("--n", type=int, default=70)
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["nu", "phi_L", "phi_R", "abs_err", "levels"])
    worst = 0.0
    for nu in np.linspace(args.lo, args.hi, args.n):
        r = idt.triple_integral(idt.TripleIntegralSpec(float(nu), "PPM"))
        closed = idt.phi_R(float(nu))
        err = abs(r.value - closed) / max(1.0, abs(closed))
        worst = max(worst, err)
        w.writerow([f"{nu:.6g}", f"{r.value:.16g}", f"{closed:.16g}", f"{err:.3e}", r.levels])
    print(f"# worst scaled error {worst:.3e}", file=sys.stderr)


if __name__ == "__main__":
    main()
