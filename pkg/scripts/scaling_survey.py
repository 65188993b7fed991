"""Fit gamma_m ~ <n>^(-alpha) for every sweepable state at several thresholds.

Also reports the single-copy Fock-like states and the repeated-measurement
SSW and small-peak examples, with gamma_m * N_T for each.

    python3 scripts/scaling_survey.py [--thresholds 0.3 0.5 0.7] [--csv out.csv]
"""

import argparse
import csv
import math
import sys

from zzbound import states as S
from zzbound.detectability import (
    heisenberg_floor_check,
    min_detectable,
    repeated_measurement_detect,
    scaling_exponent,
)

SWEEPS = {
    "coherent": [1e2, 1e3, 1e4, 1e5, 1e6],
    "scv": [10, 1e2, 1e3, 1e4, 1e5],
    "entangled_coherent": [10, 1e2, 1e3, 1e4, 1e5],
    "coherent_squeezed": [10, 1e2, 1e3, 1e4, 1e5],
    "tmsv": [10, 1e2, 1e3, 1e4, 1e5],
    "mixed_fock": [10, 1e2, 1e3, 1e4, 1e5],
}


def survey(thresholds):
    rows = []
    for variant, sweep in SWEEPS.items():
        for thr in thresholds:
            fit = scaling_exponent(lambda n, v=variant: S.family_from_nbar(v, n), sweep, threshold=thr)
            floor = min(g * n for n, g in fit.points)
            rows.append([variant, thr, fit.exponent, fit.r2, floor])
    return rows


def single_points():
    out = []
    for name in ("noon_like", "dual_fock_like"):
        res = min_detectable(S.make_state(name))
        out.append((name, res))
    lam = 10_000
    ssw = S.make_state("ssw", **{"lambda": lam})
    out.append(("ssw x L", repeated_measurement_detect(ssw, lam, threshold=math.exp(-3 / math.pi) + 0.01)))
    peak = S.make_state("small_peak", nu=0.01, alpha=100.0)
    out.append(("small_peak x 1e4", repeated_measurement_detect(peak, 10_000)))
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(description="scaling-exponent survey")
    parser.add_argument("--thresholds", type=float, nargs="+", default=[0.3, 0.5, 0.7])
    parser.add_argument("--csv", help="also write the fit table here")
    args = parser.parse_args(argv)

    rows = survey(args.thresholds)
    print(f"{'state':<20}{'thr':>6}{'alpha':>9}{'r2':>10}{'min g*n':>10}")
    for variant, thr, alpha, r2, floor in rows:
        print(f"{variant:<20}{thr:>6.2f}{alpha:>9.4f}{r2:>10.6f}{floor:>10.4f}")
    print()
    for label, res in single_points():
        if res.detectable:
            check = heisenberg_floor_check(res)
            print(f"{label:<20} gamma_m={res.gamma_m:.6g}  N_T={res.total_photons:.6g}  gamma_m*N_T={check.product:.4f}")
        else:
            print(f"{label:<20} not detectable in window {res.window}")

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["state", "threshold", "alpha", "r2", "min_gamma_m_times_nbar"])
            writer.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
