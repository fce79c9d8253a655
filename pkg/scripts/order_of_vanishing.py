"""Fit the order of vanishing of phi_L near odd integer degrees."""

import argparse

import numpy as np

from trilegendre import identities as idt


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[1, 3])
    args = ap.parse_args()

    eps = np.array([1e-1, 3e-2, 1e-2, 3e-3, 1e-3])
    for n in args.n:
        print(f"n = {n}")
        for e in eps:
            v = idt.phi_L(n + e)
            # the closed form carries cos^3, hence eps^3
            print(f"  eps={e:<8g} phi_L={v: .6e}  phi_L/eps^3={v / e**3: .6f}")
        print(f"  fitted slope over 1e-1..1e-2: {idt.triple_zero_order(n):.4f}")
        print(f"  fitted slope over 1e-1..1e-3: {idt.triple_zero_order(n, eps):.4f}")


if __name__ == "__main__":
    main()
