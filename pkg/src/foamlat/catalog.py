"""Named reference lattices with closed-form regression values.

Bases are written symbolically (integers and square roots) and rendered
to double at load time.  Reference perimeters are for the cell rescaled
to covolume 1 and are always recomputed geometrically in the tests; the
catalog never short-circuits the geometry.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import UnknownLattice
from .lattice import Lattice, make_lattice

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dim: int
    basis: np.ndarray | None
    reference_perimeter_at_unit_covolume: float | None
    reference_facet_count: int | None
    notes: str

    def lattice(self) -> Lattice:
        if self.basis is None:
            raise UnknownLattice(f"{self.name} is metadata-only (no basis)")
        return make_lattice(self.basis)


def _zn(n: int) -> CatalogEntry:
    return CatalogEntry(
        name=f"Zn({n})",
        dim=n,
        basis=np.eye(n),
        reference_perimeter_at_unit_covolume=2.0 * n,
        reference_facet_count=2 * n,
        notes="cubic lattice; cell is the unit cube",
    )


def _hexagonal() -> CatalogEntry:
    # Regular hexagon of area 1 has edge a with (3 sqrt(3)/2) a^2 = 1,
    # perimeter 6a = 6 sqrt(2) 3^(-3/4).
    return CatalogEntry(
        name="hexagonal",
        dim=2,
        basis=np.array([[1.0, 0.0], [0.5, SQRT3 / 2.0]]),
        reference_perimeter_at_unit_covolume=6.0 * SQRT2 * 3.0 ** -0.75,
        reference_facet_count=6,
        notes="optimal 2D cell (regular hexagon)",
    )


def _bcc() -> CatalogEntry:
    # Truncated octahedron: S = (6 + 12 sqrt(3)) a^2, V = 8 sqrt(2) a^3.
    ref = (6.0 + 12.0 * SQRT3) * (8.0 * SQRT2) ** (-2.0 / 3.0)
    return CatalogEntry(
        name="BCC",
        dim=3,
        basis=np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.5, 0.5, 0.5]]),
        reference_perimeter_at_unit_covolume=ref,
        reference_facet_count=14,
        notes="body-centered cubic; cell is the truncated octahedron",
    )


def _fcc() -> CatalogEntry:
    # Rhombic dodecahedron: S = 8 sqrt(2) a^2, V = (16 sqrt(3)/9) a^3.
    a = (9.0 / (16.0 * SQRT3)) ** (1.0 / 3.0)
    return CatalogEntry(
        name="FCC",
        dim=3,
        basis=np.array([[1.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0]]),
        reference_perimeter_at_unit_covolume=8.0 * SQRT2 * a * a,
        reference_facet_count=12,
        notes="face-centered cubic; cell is the rhombic dodecahedron",
    )


def _d4() -> CatalogEntry:
    # All 24 facets at distance lambda/2 = sqrt(2)/2 at covolume 2;
    # n V = Per * h gives Per = 8 sqrt(2), rescaled by 2^(-1/4) cubed.
    return CatalogEntry(
        name="D4",
        dim=4,
        basis=np.array([
            [1.0, 1.0, 0.0, 0.0],
            [1.0, -1.0, 0.0, 0.0],
            [0.0, 1.0, -1.0, 0.0],
            [0.0, 0.0, 1.0, -1.0],
        ]),
        reference_perimeter_at_unit_covolume=8.0 * 2.0 ** -0.25,
        reference_facet_count=24,
        notes="checkerboard lattice; cell is the regular 24-cell",
    )


def _a_basis(n: int) -> np.ndarray:
    # Full-rank realization from the Cholesky factor of the A_n Gram
    # matrix (2 on the diagonal, -1 on adjacent off-diagonals).
    gram = 2.0 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)
    return np.linalg.cholesky(gram)


def _an(n: int) -> CatalogEntry:
    return CatalogEntry(
        name=f"A({n})",
        dim=n,
        basis=_a_basis(n),
        reference_perimeter_at_unit_covolume=None,
        reference_facet_count=None,
        notes=f"root lattice A_{n} (full-rank coordinates)",
    )


def _d_basis(n: int) -> np.ndarray:
    rows = [np.zeros(n) for _ in range(n)]
    for i in range(n - 1):
        rows[i][i] = 1.0
        rows[i][i + 1] = -1.0
    rows[n - 1][n - 2] = 1.0
    rows[n - 1][n - 1] = 1.0
    return np.array(rows)


def _dn(n: int) -> CatalogEntry:
    return CatalogEntry(
        name=f"D({n})",
        dim=n,
        basis=_d_basis(n),
        reference_perimeter_at_unit_covolume=None,
        reference_facet_count=None,
        notes=f"checkerboard lattice D_{n}",
    )


def _e8() -> CatalogEntry:
    basis = np.zeros((8, 8))
    basis[0, 0] = 2.0
    for i in range(1, 7):
        basis[i, i - 1] = -1.0
        basis[i, i] = 1.0
    basis[7, :] = 0.5
    return CatalogEntry(
        name="E8",
        dim=8,
        basis=basis,
        reference_perimeter_at_unit_covolume=None,
        reference_facet_count=None,
        notes="E_8 lattice; cell construction is a stretch goal at n=8",
    )


def _leech_meta() -> CatalogEntry:
    return CatalogEntry(
        name="Leech-meta",
        dim=24,
        basis=None,
        reference_perimeter_at_unit_covolume=None,
        reference_facet_count=None,
        notes="Leech lattice metadata only; dim 24 exceeds the geometry cap",
    )


def get(name: str) -> CatalogEntry:
    fixed = {
        "hexagonal": _hexagonal,
        "BCC": _bcc,
        "FCC": _fcc,
        "D4": _d4,
        "E8": _e8,
        "Leech-meta": _leech_meta,
    }
    if name in fixed:
        return fixed[name]()
    match = re.fullmatch(r"(Zn|A|D)\((\d+)\)", name)
    if match:
        family, n = match.group(1), int(match.group(2))
        if 2 <= n <= 8:
            return {"Zn": _zn, "A": _an, "D": _dn}[family](n)
    raise UnknownLattice(f"no catalog entry named {name!r}")


def list_entries() -> list[CatalogEntry]:
    names = [
        "Zn(2)", "Zn(3)", "Zn(4)", "hexagonal", "BCC", "FCC",
        "A(2)", "A(3)", "D4", "D(5)", "E8", "Leech-meta",
    ]
    return [get(name) for name in names]


def entries_for_dim(n: int) -> list[CatalogEntry]:
    """Catalog lattices of dimension n that carry a basis (optimizer seeds)."""
    seeds = []
    for entry in list_entries():
        if entry.dim == n and entry.basis is not None:
            seeds.append(entry)
    return seeds
