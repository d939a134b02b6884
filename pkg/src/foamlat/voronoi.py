"""Voronoi cell of a lattice as an explicit convex polytope.

Relevant vectors come from the coset criterion (a nonzero v supports a
facet iff +/-v are the unique shortest elements of their class mod 2G);
vertices come from a half-space intersection, facet measures from
convex hulls in hyperplane coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, HalfspaceIntersection, QhullError, cKDTree

from .errors import GeometryDegenerate
from .lattice import (
    Lattice,
    canonical_sign,
    covering_radius_bound,
    enumerate_with_coeffs,
)


@dataclass(frozen=True)
class Facet:
    normal: np.ndarray          # unit outward normal v/|v|
    relevant_vector: np.ndarray
    distance: float             # |v|/2
    measure: float              # (n-1)-volume
    ridges: tuple               # indices of adjacent facets
    vertex_ids: tuple           # indices into the cell vertex list


@dataclass(frozen=True)
class VoronoiCell:
    lattice: Lattice
    facets: tuple
    vertices: np.ndarray
    volume: float
    covering_radius: float

    def facet_count(self) -> int:
        return len(self.facets)

    def surface_measures(self) -> np.ndarray:
        return np.array([f.measure for f in self.facets])

    def to_json_dict(self) -> dict:
        return {
            "vertices": self.vertices.tolist(),
            "facets": [
                {
                    "normal": f.normal.tolist(),
                    "distance": f.distance,
                    "measure": f.measure,
                    "vertex_ids": list(f.vertex_ids),
                }
                for f in self.facets
            ],
            "volume": self.volume,
        }


def relevant_vectors(lattice: Lattice, budget: int | None = None) -> np.ndarray:
    """Full +/- set of lattice vectors supporting facets of the cell."""
    rhat = covering_radius_bound(lattice)
    radius = 2.0 * rhat * (1.0 + 1e-9)
    coeffs, vectors = enumerate_with_coeffs(lattice, radius, budget)
    norms2 = np.einsum("ij,ij->i", vectors, vectors)
    lam2 = float(np.min(norms2))
    tol2 = 1e-9 * lam2

    classes: dict[tuple, list[int]] = {}
    for idx, row in enumerate(coeffs % 2):
        key = tuple(int(x) for x in row)
        if any(key):
            classes.setdefault(key, []).append(idx)

    keep = []
    for members in classes.values():
        m2 = norms2[members]
        order = np.argsort(m2)
        best = m2[order[0]]
        # Unique shortest element (up to sign) -> relevant pair.
        if len(order) == 1 or m2[order[1]] > best + tol2:
            keep.append(members[order[0]])

    reps = vectors[sorted(keep)]
    full = np.vstack([reps, -reps])
    order = np.lexsort(tuple(full[:, j] for j in range(full.shape[1] - 1, -1, -1))
                       + (np.einsum("ij,ij->i", full, full),))
    return full[order]


def _merge_vertices(points: np.ndarray, tol: float) -> np.ndarray:
    """Cluster points closer than tol; representatives are cluster means."""
    tree = cKDTree(points)
    pairs = tree.query_pairs(tol, output_type="ndarray")
    parent = np.arange(len(points))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = np.array([find(i) for i in range(len(points))])
    merged = []
    for r in sorted(set(roots)):
        merged.append(points[roots == r].mean(axis=0))
    out = np.array(merged)
    order = np.lexsort(tuple(out[:, j] for j in range(out.shape[1] - 1, -1, -1)))
    return out[order]


def _facet_measure(coords: np.ndarray, k: int) -> float:
    """k-volume of the convex hull of points given in k coordinates."""
    if len(coords) < k + 1:
        return 0.0
    if k == 1:
        return float(coords.max() - coords.min())
    try:
        return float(ConvexHull(coords).volume)
    except QhullError:
        return 0.0


def build_cell(lattice: Lattice, budget: int | None = None) -> VoronoiCell:
    n = lattice.dim
    rel = relevant_vectors(lattice, budget)
    norms2 = np.einsum("ij,ij->i", rel, rel)
    lam = math.sqrt(float(np.min(norms2)))
    rhat = covering_radius_bound(lattice)

    halfspaces = np.hstack([rel, -(norms2 / 2.0)[:, None]])
    try:
        intersection = HalfspaceIntersection(halfspaces, np.zeros(n))
    except QhullError as exc:
        raise GeometryDegenerate(f"half-space intersection failed: {exc}") from exc

    vertices = _merge_vertices(intersection.intersections, 1e-9 * lam)
    vmax = float(np.max(np.linalg.norm(vertices, axis=1)))
    if not np.all(np.isfinite(vertices)) or vmax > 10.0 * rhat:
        raise GeometryDegenerate("unbounded cell: enumeration radius too small")

    eps_facet = 1e-12 * lam ** (n - 1)
    facet_data = []
    for v, v2 in zip(rel, norms2):
        h = math.sqrt(v2) / 2.0
        on_plane = np.abs(vertices @ v - v2 / 2.0) <= 1e-8 * v2
        ids = np.nonzero(on_plane)[0]
        if len(ids) < n:
            continue
        pts = vertices[ids]
        # Orthonormal hyperplane coordinates from the null space of v.
        q = np.linalg.svd(v[None, :])[2][1:]
        coords = (pts - pts.mean(axis=0)) @ q.T
        measure = _facet_measure(coords, n - 1)
        if measure <= eps_facet:
            continue
        facet_data.append((v, h, measure, tuple(int(i) for i in ids)))

    vertex_sets = [frozenset(d[3]) for d in facet_data]
    facets = []
    for i, (v, h, measure, ids) in enumerate(facet_data):
        ridges = tuple(
            j for j in range(len(facet_data))
            if j != i and len(vertex_sets[i] & vertex_sets[j]) >= n - 1
        )
        facets.append(Facet(
            normal=v / (2.0 * h),
            relevant_vector=v,
            distance=h,
            measure=measure,
            ridges=ridges,
            vertex_ids=ids,
        ))

    try:
        volume = float(ConvexHull(vertices).volume)
    except QhullError as exc:
        raise GeometryDegenerate(f"vertex hull failed: {exc}") from exc

    return VoronoiCell(
        lattice=lattice,
        facets=tuple(facets),
        vertices=vertices,
        volume=volume,
        covering_radius=vmax,
    )


def covering_radius(cell: VoronoiCell) -> float:
    """Exact covering radius of the lattice: max vertex norm of the cell."""
    return cell.covering_radius


def contains(cell: VoronoiCell, x) -> bool:
    x = np.asarray(x, dtype=float)
    for f in cell.facets:
        v = f.relevant_vector
        v2 = float(v @ v)
        if x @ v > v2 / 2.0 + 1e-12 * max(1.0, v2):
            return False
    return True


def _ordered_polygon(points: np.ndarray, normal=None) -> np.ndarray:
    """Indices ordering coplanar points by angle around their centroid."""
    center = points.mean(axis=0)
    if points.shape[1] == 2:
        u = points - center
        ang = np.arctan2(u[:, 1], u[:, 0])
        return np.argsort(ang)
    q = np.linalg.svd(np.asarray(normal)[None, :])[2][1:]
    u = (points - center) @ q.T
    ang = np.arctan2(u[:, 1], u[:, 0])
    return np.argsort(ang)


def to_svg(cell: VoronoiCell, scale: float = 100.0) -> str:
    """SVG polygon for a 2D cell, centered at the origin."""
    if cell.lattice.dim != 2:
        raise ValueError("SVG export is 2D only")
    verts = cell.vertices
    order = _ordered_polygon(verts)
    pts = verts[order] * scale
    r = float(np.max(np.abs(pts))) + 10.0
    coords = " ".join(f"{x:.3f},{-y:.3f}" for x, y in pts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{-r:.1f} {-r:.1f} {2 * r:.1f} {2 * r:.1f}">\n'
        f'  <polygon points="{coords}" fill="none" stroke="black" '
        f'stroke-width="1"/>\n</svg>\n'
    )


def to_off(cell: VoronoiCell) -> str:
    """ASCII OFF file for a 3D cell."""
    if cell.lattice.dim != 3:
        raise ValueError("OFF export is 3D only")
    verts = cell.vertices
    lines = ["OFF", f"{len(verts)} {len(cell.facets)} 0"]
    for v in verts:
        lines.append(" ".join(f"{x:.9g}" for x in v))
    for f in cell.facets:
        ids = np.array(f.vertex_ids)
        order = _ordered_polygon(verts[ids], f.normal)
        cycle = ids[order]
        lines.append(str(len(cycle)) + " " + " ".join(str(int(i)) for i in cycle))
    return "\n".join(lines) + "\n"


__all__ = [
    "Facet",
    "VoronoiCell",
    "relevant_vectors",
    "build_cell",
    "covering_radius",
    "contains",
    "to_svg",
    "to_off",
    "canonical_sign",
]
