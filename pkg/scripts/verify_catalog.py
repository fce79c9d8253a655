"""Run every elliptic-integral case and every transform pair, grouped by chain."""

from collections import defaultdict

from trilegendre import hilbert as hb
from trilegendre import identities as idt


def main():
    chains = defaultdict(list)
    for case in idt.corollary_catalog():
        chains[case.chain].append(idt.run_case(case))
    failed = 0
    for chain, reports in chains.items():
        print(f"{chain}: value {reports[0].rhs_value:.15g}")
        for r in reports:
            failed += not r.passed
            print(f"  {'ok  ' if r.passed else 'FAIL'} {r.case_id:<34} rel_err={r.rel_err:.2e}")
    print("transform pairs")
    for r in hb.verify_catalog():
        failed += not r.passed
        print(f"  {'ok  ' if r.passed else 'FAIL'} {r.case_id:<34} worst={r.rel_err:.2e} at x={r.detail.get('x_worst')}")
    print(f"{failed} failures")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
