"""Reference lattice functions used by the tests, scripts and CLI examples.

Every function here except the building block ``quartic_factor_1d`` has
sup |phi_hat| = 1.  Values are dyadic, so the coefficients are exact in
double precision.
"""

from __future__ import annotations

import json
from pathlib import Path

from .lattice import LatticeFunction, tensor

__all__ = [
    "quartic_1d",
    "complex_heat_1d",
    "anisotropic_2d",
    "two_point_2d",
    "mixed_sum_2d",
    "quartic_factor_1d",
    "lazy_walk_1d",
    "simple_walk_1d",
    "complex_heat_tensor_2d",
    "FIXTURES",
    "write_fixture_files",
]


def _sym1(table: dict[int, complex]) -> dict[tuple[int], complex]:
    out = {}
    for x, v in table.items():
        out[(x,)] = v
        out[(-x,)] = v
    return out


def quartic_1d() -> LatticeFunction:
    """Real symmetric function whose only maximizer is of positive type with m = 4."""
    return LatticeFunction.from_entries(1, _sym1({0: 1 / 2, 1: 1 / 3, 2: -1 / 12}))


def complex_heat_1d() -> LatticeFunction:
    """Complex function with an imaginary-type maximizer at 0 (Q = xi^2 / 8)."""
    return LatticeFunction.from_entries(1, _sym1({0: (3 - 1j) / 4, 1: (4 + 3j) / 24, 2: -1 / 24}))


def anisotropic_2d() -> LatticeFunction:
    """Imaginary-type maximizer at 0 with weights 2m = (2, 4) and mu = 3/4."""
    c = {
        (0, 0): 602 - 112j,
        (1, 0): 72 + 32j,
        (-1, 0): 56 + 32j,
        (0, 1): 56 + 32j,
        (0, -1): 56 + 32j,
        (2, 0): -16,
        (-2, 0): -16,
        (0, 2): -28 - 8j,
        (0, -2): -28 - 8j,
        (0, 3): 8,
        (0, -3): 8,
        (0, 4): -1,
        (0, -4): -1,
        (1, 1): -4,
        (1, -1): -4,
        (-1, 1): 4,
        (-1, -1): 4,
    }
    return LatticeFunction.from_entries(2, {k: v / 768 for k, v in c.items()})


def two_point_2d() -> LatticeFunction:
    """Maximizers at (0,0) (imaginary, mu = 2/3) and (pi,pi) (positive, mu = 1)."""
    acc: dict[tuple[int, int], complex] = {}

    def add(k, v):
        acc[k] = acc.get(k, 0) + v

    p1 = {(1, 0): 15 + 15j, (0, 1): 16 + 16j, (3, 0): 1 + 1j}
    for (x, y), v in p1.items():
        for k in {(x, y), (-x, -y)}:
            add(k, v / 2**7)
    p2 = {(0, 0): 682, (2, 0): 152, (4, 0): -28, (6, 0): 8, (8, 0): -1, (0, 2): 60, (0, 4): -24, (0, 6): 4}
    for (x, y), v in p2.items():
        for k in {(x, y), (-x, -y)}:
            add(k, -1j * v / 2**11)
    p3 = {(0, 0): 1387004, (2, 0): -106722, (4, 0): 3960, (6, 0): -1045, (8, 0): 138, (10, 0): -9, (0, 2): -65536}
    for (x, y), v in p3.items():
        for k in {(x, y), (-x, -y)}:
            add(k, v / 2**21)
    return LatticeFunction.from_entries(2, acc)


def quartic_factor_1d() -> LatticeFunction:
    """Building block psi of mixed_sum_2d; not normalized (psi_hat(0) = (1 + psi(0)) / 2)."""
    v = {
        0: 1292 * (2 + 1j),
        1: 552 - 540j,
        2: -(177 - 499j / 2),
        3: -(28 - 10j),
        4: 42 - 59j,
        5: -(12 - 18j),
        6: 1 - 1.5j,
    }
    return LatticeFunction.from_entries(1, _sym1({k: x / 4096 for k, x in v.items()}))


def mixed_sum_2d() -> LatticeFunction:
    """phi(x, y) = psi(x) delta(y) + delta(x) psi(y) - psi(0) delta; two dominant points of both types."""
    psi = quartic_factor_1d().entries
    acc: dict[tuple[int, int], complex] = {}
    for (k,), v in psi.items():
        acc[(k, 0)] = acc.get((k, 0), 0) + v
        acc[(0, k)] = acc.get((0, k), 0) + v
    acc[(0, 0)] -= psi[(0,)]
    return LatticeFunction.from_entries(2, acc)


def lazy_walk_1d() -> LatticeFunction:
    return LatticeFunction.from_entries(1, {(0,): 0.5, (1,): 0.25, (-1,): 0.25})


def simple_walk_1d() -> LatticeFunction:
    return LatticeFunction.from_entries(1, {(1,): 0.5, (-1,): 0.5})


def complex_heat_tensor_2d() -> LatticeFunction:
    f = complex_heat_1d()
    return tensor(f, f)


FIXTURES = {
    "quartic_1d": quartic_1d,
    "complex_heat_1d": complex_heat_1d,
    "anisotropic_2d": anisotropic_2d,
    "two_point_2d": two_point_2d,
    "mixed_sum_2d": mixed_sum_2d,
    "quartic_factor_1d": quartic_factor_1d,
    "lazy_walk_1d": lazy_walk_1d,
    "simple_walk_1d": simple_walk_1d,
    "complex_heat_tensor_2d": complex_heat_tensor_2d,
}


def write_fixture_files(directory: str | Path) -> list[Path]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, fn in FIXTURES.items():
        p = d / f"{name}.json"
        p.write_text(json.dumps(fn().to_json_obj(), indent=1) + "\n")
        paths.append(p)
    return paths
