"""Derivative-free minimization of the cell perimeter over lattices of
fixed covolume.

The objective is piecewise smooth with kinks where the relevant-vector
set changes, so the search is Nelder-Mead with random restarts; facet
counts along the trajectory expose those combinatorial transitions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import catalog
from .errors import (
    DimensionUnsupported,
    EnumerationBudgetExceeded,
    GeometryDegenerate,
    SingularBasis,
)
from .lattice import Lattice, make_lattice, reduce_basis
from .norms import NormSpec, perimeter
from .voronoi import build_cell

ROUTINE_DIM_LIMIT = 5


@dataclass(frozen=True)
class ParamSpace:
    mode: str               # gram_cholesky | full_basis
    dim: int
    target_covolume: float = 1.0

    def __post_init__(self):
        if self.mode not in ("gram_cholesky", "full_basis"):
            raise ValueError(f"unknown parameterization {self.mode!r}")

    def n_params(self) -> int:
        n = self.dim
        return n * (n + 1) // 2 if self.mode == "gram_cholesky" else n * n

    def encode(self, lattice: Lattice) -> np.ndarray:
        if self.mode == "gram_cholesky":
            chol = np.linalg.cholesky(lattice.gram)
            return chol[np.tril_indices(self.dim)].copy()
        return lattice.basis.ravel().copy()

    def decode(self, params: np.ndarray) -> Lattice:
        n = self.dim
        if self.mode == "gram_cholesky":
            basis = np.zeros((n, n))
            basis[np.tril_indices(n)] = params
        else:
            basis = np.asarray(params, dtype=float).reshape(n, n)
        return make_lattice(basis).with_covolume(self.target_covolume)


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 20
    max_iter: int = 300
    seed: int = 0
    init_step: float = 0.25
    fval_tol: float = 1e-10
    diam_tol: float = 1e-9
    allow_stretch_dims: bool = False


@dataclass(frozen=True)
class OptimizationRun:
    config: OptimizerConfig
    norm: NormSpec
    best_lattice: Lattice
    best_value: float
    trajectory: list = field(repr=False)
    facet_history: list = field(repr=False)
    status: str  # converged | budget_exhausted
    initial_value: float | None = None

    @property
    def improved(self) -> bool:
        if self.initial_value is None:
            return False
        return self.initial_value - self.best_value > 1e-7

    def to_json_dict(self) -> dict:
        return {
            "best_value": self.best_value,
            "best_lattice": self.best_lattice.to_json_dict(),
            "status": self.status,
            "norm": self.norm.to_json_dict(),
            "trajectory": list(self.trajectory),
            "facet_history": list(self.facet_history),
            "initial_value": self.initial_value,
            "seed": self.config.seed,
            "restarts": self.config.restarts,
        }


def _evaluate(params, space: ParamSpace, spec: NormSpec):
    """(perimeter, facet count); (inf, 0) when the decode is infeasible."""
    try:
        lattice = space.decode(params)
        cell = build_cell(lattice)
    except (SingularBasis, EnumerationBudgetExceeded, GeometryDegenerate):
        return math.inf, 0
    return perimeter(cell, spec), cell.facet_count()


def objective(params, space: ParamSpace, spec: NormSpec) -> float:
    """Per_phi of the decoded covolume-normalized lattice; +inf sentinel
    for infeasible parameter vectors."""
    return _evaluate(params, space, spec)[0]


def nelder_mead(f, x0, step, max_iter, fval_tol=1e-10, diam_tol=1e-9,
                on_iteration=None):
    """Simplex search with reflection 1, expansion 2, contraction 1/2,
    shrink 1/2.  Converged when the value spread drops below fval_tol or
    the simplex diameter below diam_tol."""
    x0 = np.asarray(x0, dtype=float)
    n = len(x0)
    simplex = [x0.copy()]
    for i in range(n):
        x = x0.copy()
        x[i] += step
        simplex.append(x)
    values = [f(x) for x in simplex]
    converged = False

    for _ in range(max_iter):
        order = np.argsort(values, kind="stable")
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        if on_iteration is not None:
            on_iteration()

        finite = [v for v in values if math.isfinite(v)]
        if len(finite) == len(values):
            spread = values[-1] - values[0]
            diam = max(np.linalg.norm(simplex[i] - simplex[0])
                       for i in range(1, n + 1))
            if spread < fval_tol or diam < diam_tol:
                converged = True
                break

        centroid = np.mean(simplex[:-1], axis=0)
        worst = simplex[-1]
        reflected = centroid + (centroid - worst)
        f_r = f(reflected)
        if f_r < values[0]:
            expanded = centroid + 2.0 * (centroid - worst)
            f_e = f(expanded)
            if f_e < f_r:
                simplex[-1], values[-1] = expanded, f_e
            else:
                simplex[-1], values[-1] = reflected, f_r
        elif f_r < values[-2]:
            simplex[-1], values[-1] = reflected, f_r
        else:
            if f_r < values[-1]:
                contracted = centroid + 0.5 * (reflected - centroid)
            else:
                contracted = centroid + 0.5 * (worst - centroid)
            f_c = f(contracted)
            if f_c < min(f_r, values[-1]):
                simplex[-1], values[-1] = contracted, f_c
            else:
                for i in range(1, n + 1):
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
                    values[i] = f(simplex[i])

    order = np.argsort(values, kind="stable")
    best = order[0]
    return simplex[best], values[best], converged


def _reduced_gram_key(lattice: Lattice):
    reduced = reduce_basis(lattice)
    return tuple(np.round(reduced.gram.ravel(), 12))


def _initial_lattices(space: ParamSpace, config: OptimizerConfig):
    n = space.dim
    m = space.target_covolume
    starts = [make_lattice(np.eye(n)).with_covolume(m)]
    for entry in catalog.entries_for_dim(n):
        starts.append(entry.lattice().with_covolume(m))
    rng = np.random.default_rng(config.seed)
    for _ in range(config.restarts):
        a = rng.standard_normal((n, n))
        low = np.tril(a)
        np.fill_diagonal(low, np.abs(np.diagonal(a)) + 0.5)
        starts.append(make_lattice(low).with_covolume(m))
    return starts


def _check_dim(space: ParamSpace, config: OptimizerConfig):
    if space.dim > ROUTINE_DIM_LIMIT and not config.allow_stretch_dims:
        raise DimensionUnsupported(
            f"dimension {space.dim} needs allow_stretch_dims=True"
        )


def minimize(space: ParamSpace, spec: NormSpec,
             config: OptimizerConfig | None = None) -> OptimizationRun:
    """Search for the minimal-perimeter lattice at fixed covolume."""
    if config is None:
        config = OptimizerConfig()
    _check_dim(space, config)

    state = {"best_value": math.inf, "best_params": None, "best_facets": 0,
             "best_converged": False}
    trajectory: list[float] = []
    facet_history: list[int] = []

    def tracked(params):
        value, facets = _evaluate(params, space, spec)
        if value < state["best_value"]:
            state["best_value"] = value
            state["best_params"] = np.array(params, dtype=float)
            state["best_facets"] = facets
        return value

    def record():
        trajectory.append(state["best_value"])
        facet_history.append(state["best_facets"])

    ties = []
    for start in _initial_lattices(space, config):
        x0 = space.encode(start)
        x, value, converged = nelder_mead(
            tracked, x0, config.init_step, config.max_iter,
            config.fval_tol, config.diam_tol, on_iteration=record,
        )
        if value <= state["best_value"] + 1e-12:
            ties.append((value, x, converged))

    # Tie-break at equal value: lexicographically smallest reduced Gram.
    best_value = state["best_value"]
    candidates = [(v, x, c) for v, x, c in ties if v <= best_value + 1e-12]
    if not candidates:
        candidates = [(best_value, state["best_params"], False)]
    scored = []
    for v, x, c in candidates:
        try:
            lat = space.decode(x)
        except SingularBasis:
            continue
        scored.append((_reduced_gram_key(lat), v, x, c))
    scored.sort(key=lambda t: t[0])
    _, value, params, converged = scored[0]

    best_lattice = space.decode(params)
    return OptimizationRun(
        config=config,
        norm=spec,
        best_lattice=best_lattice,
        best_value=value,
        trajectory=trajectory,
        facet_history=facet_history,
        status="converged" if converged else "budget_exhausted",
    )


def polish(lattice: Lattice, spec: NormSpec,
           config: OptimizerConfig | None = None) -> OptimizationRun:
    """Tight local search around a candidate; a run with no improvement
    beyond 1e-7 is a local-minimality witness at this resolution."""
    if config is None:
        config = OptimizerConfig(restarts=0, init_step=1e-3)
    mode = "gram_cholesky" if spec.kind == "euclidean" else "full_basis"
    space = ParamSpace(mode=mode, dim=lattice.dim,
                       target_covolume=lattice.covolume)
    _check_dim(space, config)

    state = {"best_value": math.inf, "best_params": None, "best_facets": 0}
    trajectory: list[float] = []
    facet_history: list[int] = []

    def tracked(params):
        value, facets = _evaluate(params, space, spec)
        if value < state["best_value"]:
            state["best_value"] = value
            state["best_params"] = np.array(params, dtype=float)
            state["best_facets"] = facets
        return value

    def record():
        trajectory.append(state["best_value"])
        facet_history.append(state["best_facets"])

    x0 = space.encode(lattice)
    initial_value = tracked(x0)
    _, value, converged = nelder_mead(
        tracked, x0, config.init_step, config.max_iter,
        config.fval_tol, config.diam_tol, on_iteration=record,
    )
    return OptimizationRun(
        config=config,
        norm=spec,
        best_lattice=space.decode(state["best_params"]),
        best_value=state["best_value"],
        trajectory=trajectory,
        facet_history=facet_history,
        status="converged" if converged else "budget_exhausted",
        initial_value=initial_value,
    )
