"""Norms (anisotropies) and the surface energy of polytopal cells.

On a polytope the anisotropic perimeter is the facet sum
sum_i phi(nu_i) * measure_i; with the euclidean norm this is the
classical perimeter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidNormSpec
from .voronoi import VoronoiCell


@dataclass(frozen=True)
class NormSpec:
    kind: str  # euclidean | weighted_euclidean | p_norm | polyhedral
    p: float | None = None
    weights: np.ndarray | None = field(default=None, repr=False)
    directions: np.ndarray | None = field(default=None, repr=False)
    coefficients: np.ndarray | None = field(default=None, repr=False)
    # Whether phi^2 is uniformly convex and C^2; recorded, not verified.
    smooth: bool = True

    def to_json_dict(self) -> dict:
        if self.kind == "euclidean":
            return {"kind": "euclidean"}
        if self.kind == "p_norm":
            return {"kind": "p", "p": self.p}
        if self.kind == "weighted_euclidean":
            return {"kind": "weighted", "w": self.weights.tolist()}
        return {
            "kind": "polyhedral",
            "dirs": self.directions.tolist(),
            "weights": self.coefficients.tolist(),
        }


def euclidean() -> NormSpec:
    return NormSpec(kind="euclidean")


def p_norm(p: float) -> NormSpec:
    if p < 1.0:
        raise InvalidNormSpec(f"p = {p} is below 1")
    return NormSpec(kind="p_norm", p=float(p), smooth=1.0 < p < np.inf)


def weighted_euclidean(weights) -> NormSpec:
    w = np.array(weights, dtype=float)
    if np.any(w <= 0.0):
        raise InvalidNormSpec("weights must be positive")
    w.setflags(write=False)
    return NormSpec(kind="weighted_euclidean", weights=w)


def polyhedral(directions, coefficients) -> NormSpec:
    dirs = np.array(directions, dtype=float)
    coef = np.array(coefficients, dtype=float)
    if dirs.ndim != 2 or len(coef) != len(dirs):
        raise InvalidNormSpec("need one coefficient per direction")
    if np.any(coef <= 0.0):
        raise InvalidNormSpec("coefficients must be positive")
    if np.linalg.matrix_rank(dirs) < dirs.shape[1]:
        raise InvalidNormSpec("directions must span the space")
    dirs.setflags(write=False)
    coef.setflags(write=False)
    return NormSpec(kind="polyhedral", directions=dirs, coefficients=coef,
                    smooth=False)


def norm_from_json_dict(obj: dict) -> NormSpec:
    kind = obj.get("kind")
    if kind == "euclidean":
        return euclidean()
    if kind == "p":
        return p_norm(float(obj["p"]))
    if kind == "weighted":
        return weighted_euclidean(obj["w"])
    if kind == "polyhedral":
        return polyhedral(obj["dirs"], obj["weights"])
    raise InvalidNormSpec(f"unknown norm kind {kind!r}")


def eval_norm(spec: NormSpec, x) -> float:
    x = np.asarray(x, dtype=float)
    if spec.kind == "euclidean":
        return float(np.linalg.norm(x))
    if spec.kind == "weighted_euclidean":
        return float(np.sqrt(np.sum(spec.weights * x * x)))
    if spec.kind == "p_norm":
        amax = float(np.max(np.abs(x)))
        if amax == 0.0:
            return 0.0
        if np.isinf(spec.p):
            return amax
        # Pre-normalize by the max to avoid overflow for large p.
        return amax * float(np.sum((np.abs(x) / amax) ** spec.p)
                            ** (1.0 / spec.p))
    return float(np.sum(spec.coefficients * np.abs(spec.directions @ x)))


def perimeter(cell: VoronoiCell, spec: NormSpec) -> float:
    """Anisotropic perimeter sum_i phi(nu_i) * measure_i of the cell."""
    weights = np.array([eval_norm(spec, f.normal) for f in cell.facets])
    measures = cell.surface_measures()
    return float(np.sum(weights * measures))
