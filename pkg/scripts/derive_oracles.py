"""Compute the independent reference values used by the tests and freeze them.

Each value comes from a route that does not touch the code it later checks:
Cartesian grids instead of polar charts, two unrelated 1-D quadratures, etc.
Run once; the output file is committed under fixtures/.
"""

import argparse
import json
from math import gamma
from pathlib import Path

import numpy as np
from scipy import integrate

from convpow.fixtures import write_fixture_files


def anisotropic_q(eta, gam):
    return (4 * eta**2 - eta * gam**2 + gam**4) / 96


def sublevel_area_grid(n=4096):
    """Area of {Q < 1} by a midpoint grid on a box that contains it."""
    hx, hy = 12.0 / n, 9.0 / n
    eta = -6 + hx * (np.arange(n) + 0.5)
    gam = -4.5 + hy * (np.arange(n) + 0.5)
    count = 0
    for i in range(0, n, 256):
        E, G = np.meshgrid(eta[i : i + 256], gam, indexing="ij")
        inside = anisotropic_q(E, G) < 1
        count += int(inside.sum())
        # the box must be strictly larger than the set
        assert not inside[:, [0, -1]].any()
    assert (anisotropic_q(eta[[0, -1]][:, None], gam[None, :]) >= 1).all()
    return count * hx * hy


def quartic_positive_two_routes(beta=1 / 12):
    """H_{4,beta}(0) = (1/pi) int_0^inf exp(-beta u^4) du: closed form and quad."""
    closed = beta ** -0.25 * gamma(1.25) / np.pi
    quad = integrate.quad(lambda u: np.exp(-beta * u**4), 0, np.inf, epsabs=1e-14, epsrel=1e-12)[0] / np.pi
    return closed, quad


def quartic_positive_at(x, beta=1 / 12):
    re = integrate.quad(lambda u: np.exp(-beta * u**4), 0, 40, weight="cos", wvar=x, epsabs=1e-15)[0]
    return re / np.pi


def mixed_positive_grid(points, n=801, L=4.5):
    """(2 pi)^-2 int exp(-P(xi) - i x.xi) for P = (1/2 + 3i/8)(eta^4 + gam^4) on a dense grid."""
    c = 0.5 + 0.375j
    xi, h = np.linspace(-L, L, n, retstep=True)
    E, G = np.meshgrid(xi, xi, indexing="ij")
    base = np.exp(-c * (E**4 + G**4))
    out = []
    for x in points:
        v = (base * np.exp(-1j * (x[0] * E + x[1] * G))).sum() * h * h / (2 * np.pi) ** 2
        out.append([float(v.real), float(v.imag)])
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "fixtures"))
    args = ap.parse_args()
    out = Path(args.out)
    write_fixture_files(out)
    closed, quad = quartic_positive_two_routes()
    pts = [[0.0, 0.0], [0.7, -0.4], [1.5, 1.0], [-2.0, 0.5]]
    derived = {
        "anisotropic_sublevel_area_grid4096": sublevel_area_grid(),
        "quartic_positive_origin_closed": closed,
        "quartic_positive_origin_quad": quad,
        "quartic_positive_at": {str(x): quartic_positive_at(x) for x in (0.5, 1.0, 2.5)},
        "mixed_positive_grid": {"points": pts, "values": mixed_positive_grid(pts)},
    }
    (out / "derived_values.json").write_text(json.dumps(derived, indent=1, sort_keys=True) + "\n")
    print(json.dumps(derived, indent=1, sort_keys=True))


if __name__ == "__main__":
    main()
