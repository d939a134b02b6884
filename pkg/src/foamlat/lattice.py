"""Lattices in R^n: construction, invariants, LLL reduction, enumeration.

A lattice is stored by an n x n basis matrix whose rows generate the
group.  All operations are pure; Lattice values are immutable.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from ._kernel import enumerate_half
from .errors import DimensionUnsupported, SingularBasis

MIN_DIM = 2
MAX_DIM = 8
LLL_DELTA = 0.99


def default_budget() -> int:
    """Enumeration candidate cap; FOAMLAT_BUDGET overrides."""
    return int(os.environ.get("FOAMLAT_BUDGET", 10**7))


@dataclass(frozen=True)
class Lattice:
    dim: int
    basis: np.ndarray  # rows are generators
    gram: np.ndarray
    covolume: float

    def scaled(self, factor: float) -> "Lattice":
        return make_lattice(self.basis * factor)

    def with_covolume(self, m: float) -> "Lattice":
        """Rescale so that |det| = m."""
        return self.scaled((m / self.covolume) ** (1.0 / self.dim))

    def to_json_dict(self) -> dict:
        return {"dim": self.dim, "basis": self.basis.tolist()}


@dataclass(frozen=True)
class LatticeInvariants:
    lambda_min: float
    packing_radius: float
    # Upper bound on the covering radius from the reduced basis; the
    # exact value is the max vertex norm of the Voronoi cell.
    covering_radius: float
    shortest_vectors: np.ndarray = field(repr=False)


def make_lattice(basis) -> Lattice:
    basis = np.array(basis, dtype=float)
    if basis.ndim != 2 or basis.shape[0] != basis.shape[1]:
        raise SingularBasis("basis must be a square matrix")
    n = basis.shape[0]
    if n < MIN_DIM or n > MAX_DIM:
        raise DimensionUnsupported(f"dimension {n} outside supported range "
                                   f"{MIN_DIM}..{MAX_DIM}")
    det = float(np.linalg.det(basis))
    max_row = float(np.max(np.linalg.norm(basis, axis=1)))
    eps_singular = 1e-10 * max_row**n
    if abs(det) <= eps_singular:
        raise SingularBasis(f"|det| = {abs(det):.3e} below singularity "
                            f"threshold {eps_singular:.3e}")
    basis.setflags(write=False)
    gram = basis @ basis.T
    gram.setflags(write=False)
    return Lattice(dim=n, basis=basis, gram=gram, covolume=abs(det))


def lattice_from_json_dict(obj: dict) -> Lattice:
    basis = np.array(obj["basis"], dtype=float)
    if "dim" in obj and int(obj["dim"]) != basis.shape[0]:
        raise SingularBasis("declared dim does not match basis shape")
    return make_lattice(basis)


def _gso_norms_sq(basis: np.ndarray) -> np.ndarray:
    """Squared norms of the Gram-Schmidt vectors of the rows."""
    n = basis.shape[0]
    bs = basis.astype(float).copy()
    out = np.empty(n)
    for i in range(n):
        for j in range(i):
            bs[i] -= (np.dot(bs[i], bs[j]) / out[j]) * bs[j]
        out[i] = np.dot(bs[i], bs[i])
    return out


def _lll(basis: np.ndarray, delta: float = LLL_DELTA) -> np.ndarray:
    """LLL reduction of a real basis (rows); returns a new matrix."""
    b = basis.astype(float).copy()
    n = b.shape[0]
    bs = np.zeros_like(b)
    mu = np.zeros((n, n))
    c = np.zeros(n)

    def recompute():
        for i in range(n):
            bs[i] = b[i]
            for j in range(i):
                mu[i, j] = np.dot(b[i], bs[j]) / c[j]
                bs[i] -= mu[i, j] * bs[j]
            c[i] = np.dot(bs[i], bs[i])

    recompute()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q != 0:
                b[k] -= q * b[j]
                mu[k, :j] -= q * mu[j, :j]
                mu[k, j] -= q
        if c[k] >= (delta - mu[k, k - 1] ** 2) * c[k - 1]:
            k += 1
        else:
            b[[k - 1, k]] = b[[k, k - 1]]
            recompute()
            k = max(k - 1, 1)
    return b


def reduce_basis(lattice: Lattice) -> Lattice:
    """Same lattice, LLL-reduced basis (delta = 0.99)."""
    return make_lattice(_lll(lattice.basis))


def covering_radius_bound(lattice: Lattice) -> float:
    """Upper bound r_G <= (1/2) sqrt(sum |b*_i|^2) on the reduced basis."""
    reduced = _lll(lattice.basis)
    return 0.5 * math.sqrt(float(np.sum(_gso_norms_sq(reduced))))


def canonical_sign(vectors: np.ndarray) -> np.ndarray:
    """Flip each row so its first non-negligible coordinate is positive."""
    out = vectors.copy()
    for row in out:
        scale = np.max(np.abs(row))
        if scale == 0.0:
            continue
        for x in row:
            if abs(x) > 1e-9 * scale:
                if x < 0:
                    row *= -1.0
                break
    return out


def _sorted_by_norm(coeffs: np.ndarray, vectors: np.ndarray):
    norms = np.einsum("ij,ij->i", vectors, vectors)
    order = np.lexsort(tuple(vectors[:, j] for j in range(vectors.shape[1] - 1, -1, -1))
                       + (norms,))
    return coeffs[order], vectors[order], norms[order]


def enumerate_with_coeffs(lattice: Lattice, radius: float,
                          budget: int | None = None):
    """All nonzero lattice vectors with |v| <= radius, one per +/- pair.

    Returns (coeffs, vectors): integer coefficients with respect to the
    internally reduced basis and the corresponding points, sorted by
    norm then lexicographically, with the canonical sign convention
    applied to the vectors (coeffs flipped along with them).
    """
    if budget is None:
        budget = default_budget()
    reduced = _lll(lattice.basis)
    gram = reduced @ reduced.T
    chol = np.linalg.cholesky(gram)
    radius2 = radius * radius * (1.0 + 1e-12)
    coeffs = enumerate_half(chol, radius2, budget)
    vectors = coeffs.astype(float) @ reduced
    # Canonical sign is defined on the vector coordinates.
    flipped = canonical_sign(vectors)
    signs = np.where(np.einsum("ij,ij->i", flipped, vectors) >= 0, 1, -1) \
        if len(vectors) else np.ones(0, dtype=int)
    coeffs = coeffs * signs[:, None]
    coeffs2, vectors2, _ = _sorted_by_norm(coeffs, flipped)
    return coeffs2, vectors2


def enumerate_points(lattice: Lattice, radius: float,
                     budget: int | None = None) -> np.ndarray:
    """Canonical representatives of nonzero lattice points in the ball."""
    _, vectors = enumerate_with_coeffs(lattice, radius, budget)
    return vectors


def random_lattice(n: int, rng: np.random.Generator,
                   covolume: float = 1.0) -> Lattice:
    """Random full-rank lattice: Gaussian basis, rescaled covolume."""
    while True:
        basis = rng.standard_normal((n, n))
        try:
            return make_lattice(basis).with_covolume(covolume)
        except SingularBasis:
            continue


def shortest_vector(lattice: Lattice) -> LatticeInvariants:
    """Exact minimum distance via ellipsoid enumeration after reduction."""
    reduced = _lll(lattice.basis)
    radius = float(np.min(np.linalg.norm(reduced, axis=1)))
    _, vectors = enumerate_with_coeffs(lattice, radius)
    norms = np.linalg.norm(vectors, axis=1)
    lam = float(np.min(norms))
    keep = norms <= lam + 1e-10 * max(1.0, lam)
    shortest = vectors[keep]
    rhat = 0.5 * math.sqrt(float(np.sum(_gso_norms_sq(reduced))))
    return LatticeInvariants(
        lambda_min=lam,
        packing_radius=lam / 2.0,
        covering_radius=rhat,
        shortest_vectors=shortest,
    )
