"""Scaled local-limit errors for the reference fixtures, one CSV per fixture.

Example:
    python scripts/run_llt.py --out results/ --K 1
"""

import argparse
import logging
from pathlib import Path

from convpow.fixtures import FIXTURES
from convpow.llt import llt_error_curve
from convpow.spectrum import analyze

LADDERS = {
    "quartic_1d": [100, 300, 600, 1000],
    "complex_heat_1d": [100, 300, 600, 1000],
    "anisotropic_2d": [250, 500, 1000, 2000],
    "two_point_2d": [250, 500, 1000, 2000],
    "mixed_sum_2d": [250, 500, 1000, 2000],
}

log = logging.getLogger("run_llt")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="results")
    ap.add_argument("--K", type=float, default=1.0, help="half-width of the box K = [-K, K]^d")
    ap.add_argument("--only", nargs="*", choices=sorted(LADDERS), help="subset of fixtures")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in args.only or LADDERS:
        rep = llt_error_curve(analyze(FIXTURES[name]()), args.K, LADDERS[name])
        path = out / f"llt_{name}_K{args.K:g}.csv"
        path.write_text(rep.to_csv())
        log.info("%s: scaled errors %s (%.1f s)", name, [round(v, 4) for v in rep.scaled_errors], sum(rep.seconds))


if __name__ == "__main__":
    main()
