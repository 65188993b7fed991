"""Bound across the prior-information regimes for the generic models and a few states.

Prints dY_LB * <n> against z0 = W <n> / 2, which should move from the prior
line x0 z0/sqrt(3) to a Heisenberg-scaled constant.

    python3 scripts/regime_table.py [--nbar 20]
"""

import argparse
import math
import sys

import numpy as np

from zzbound.bounds import zz_bound_from_distance, zz_bound_quadrature, zz_closed_cosine, zz_closed_linear
from zzbound.fidelity import state_model
from zzbound.prior import UniformWindowPrior
from zzbound.states import family_from_nbar, state_distance


def main(argv=None):
    parser = argparse.ArgumentParser(description="bound vs regime parameter")
    parser.add_argument("--nbar", type=float, default=20.0)
    parser.add_argument("--points", type=int, default=9)
    args = parser.parse_args(argv)

    nbar = args.nbar
    states = {v: family_from_nbar(v, nbar) for v in ("coherent", "scv", "tmsv")}
    mixed = family_from_nbar("mixed_fock", nbar)
    cols = ["z0", "linear", "cosine(dH=<n>)"] + list(states) + ["mixed_fock"]
    print("".join(f"{c:>16}" for c in cols))
    for z0 in np.geomspace(1e-2, 1e2, args.points):
        w = 2.0 * z0 / nbar
        if w > 2 * math.pi:
            break
        prior = UniformWindowPrior(0.0, w)
        row = [z0, zz_closed_linear(1 / nbar, w).value * nbar, zz_closed_cosine(nbar, w).value * nbar]
        row += [zz_bound_quadrature(prior, state_model(s)).value * nbar for s in states.values()]
        row.append(zz_bound_from_distance(prior, lambda g: state_distance(mixed, g), scale=1 / nbar).value * nbar)
        print("".join(f"{v:>16.6g}" for v in row))
    return 0


if __name__ == "__main__":
    sys.exit(main())
