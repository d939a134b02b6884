"""Isoperimetric brackets, unit-ball volumes, zeta values, and the
Minkowski-Hlawka packing-radius bound.

Everything is evaluated in logarithmic form so the table stays finite
for dimensions in the hundreds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import gammaln

from .lattice import Lattice, shortest_vector


@dataclass(frozen=True)
class BoundsRow:
    dim: int
    omega_n: float       # volume of the unit n-ball
    zeta_n: float
    lower: float         # n * omega_n^(1/n)
    upper: float         # 2 / (2 zeta(n))^(1/n) * lower
    mh_packing_radius: float
    asymptote: float     # sqrt(2 pi e n)


def log_unit_ball_volume(n: int) -> float:
    return 0.5 * n * math.log(math.pi) - gammaln(0.5 * n + 1.0)


def unit_ball_volume(n: int) -> float:
    """omega_n = pi^(n/2) / Gamma(n/2 + 1)."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return math.exp(log_unit_ball_volume(n))


def zeta(n: int) -> float:
    """zeta(n) for n >= 2: truncated series plus Euler-Maclaurin tail.

    With K = 1000 the neglected correction is below 1e-16 even at n = 2,
    where a purely term-by-term sum would need ~1e15 terms.
    """
    if n < 2:
        raise ValueError("series requires n >= 2")
    s = float(n)
    big_k = 1000
    total = sum(k ** -s for k in range(1, big_k))
    tail = (
        big_k ** (1.0 - s) / (s - 1.0)
        + 0.5 * big_k ** -s
        + s * big_k ** (-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * big_k ** (-s - 3.0) / 720.0
    )
    return total + tail


def bounds_row(n: int) -> BoundsRow:
    if n < 2:
        raise ValueError("bounds are defined for n >= 2")
    log_omega = log_unit_ball_volume(n)
    z = zeta(n)
    lower = n * math.exp(log_omega / n)
    upper = 2.0 / (2.0 * z) ** (1.0 / n) * lower
    mh = math.exp(
        math.log(z) / n - log_omega / n - (1.0 - 1.0 / n) * math.log(2.0)
    )
    return BoundsRow(
        dim=n,
        omega_n=math.exp(log_omega),
        zeta_n=z,
        lower=lower,
        upper=upper,
        mh_packing_radius=mh,
        asymptote=math.sqrt(2.0 * math.pi * math.e * n),
    )


def mh_lattice_check(lattice: Lattice) -> bool:
    """Does the lattice (rescaled to covolume 1) attain the nonconstructive
    Minkowski-Hlawka packing-radius bound?"""
    unit = lattice.with_covolume(1.0)
    rho = shortest_vector(unit).packing_radius
    return rho >= bounds_row(lattice.dim).mh_packing_radius - 1e-12
