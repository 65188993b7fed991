"""Write the figure CSVs (and gnuplot scripts) into one directory.

    python3 scripts/reproduce_figures.py --outdir results
"""

import argparse
import sys
from pathlib import Path

from zzbound.cli import main as cli_main


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", default="results")
    parser.add_argument("--no-plot-script", action="store_true")
    args = parser.parse_args(argv)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    jobs = {
        "fig2a": ["fig2a"],
        "fig2b": ["fig2b"],
        "fig4": ["fig4"],
        "compare_cr": ["compare-cr"],
    }
    for name, cmd in jobs.items():
        target = outdir / f"{name}.csv"
        extra = [] if args.no_plot_script else ["--plot-script"]
        code = cli_main(cmd + ["--out", str(target)] + extra)
        if code:
            return code
        print(f"wrote {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
