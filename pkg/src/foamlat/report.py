"""Analysis reports and the bulk invariant suite behind the CLI."""

from __future__ import annotations

import time

import numpy as np

from . import bounds as bounds_mod
from .lattice import Lattice, random_lattice, shortest_vector
from .norms import NormSpec, euclidean, perimeter
from .voronoi import build_cell


def _check(name: str, lhs: float, rhs: float, op: str = "<=") -> dict:
    passed = lhs <= rhs + 1e-12 * max(1.0, abs(rhs))
    return {
        "name": name,
        "lhs": lhs,
        "rhs": rhs,
        "relation": op,
        "pass": bool(passed),
        "slack": rhs - lhs,
    }


def analyze_lattice(lattice: Lattice, norm_specs: dict[str, NormSpec]) -> dict:
    """Full invariant report for one lattice (AnalysisReport as a dict)."""
    t0 = time.perf_counter()
    n = lattice.dim
    m = lattice.covolume
    inv = shortest_vector(lattice)
    cell = build_cell(lattice)
    per_euclid = perimeter(cell, euclidean())
    perimeters = {name: perimeter(cell, spec)
                  for name, spec in norm_specs.items()}

    # Lower bracket is stated at covolume 1; compare the rescaled value.
    per_unit = per_euclid / m ** ((n - 1) / n)
    row = bounds_mod.bounds_row(n)
    checks = [
        _check("lambda_lower", 2.0 * m / per_euclid, inv.lambda_min),
        _check("perimeter_upper", per_euclid, n * m / inv.packing_radius),
        _check("ball_lower_bound", row.lower, per_unit),
    ]
    report = {
        "lattice": lattice.to_json_dict(),
        "invariants": {
            "lambda": inv.lambda_min,
            "packing_radius": inv.packing_radius,
            "covering_radius": cell.covering_radius,
            "covolume": m,
        },
        "cell": {
            "facet_count": cell.facet_count(),
            "volume": cell.volume,
            "perimeter": perimeters,
        },
        "checks": checks,
        "all_checks_pass": all(c["pass"] for c in checks),
        "timing_seconds": time.perf_counter() - t0,
    }
    return report


def run_invariant_suite(dims, samples: int, seed: int) -> dict:
    """Invariant sweep over seeded random lattices.

    Output is fully deterministic given (dims, samples, seed) so repeated
    runs can be compared byte for byte; no timing field on purpose.
    """
    rng = np.random.default_rng(seed)
    results = []
    for n in dims:
        failures = []
        for i in range(samples):
            lattice = random_lattice(n, rng)
            inv = shortest_vector(lattice)
            cell = build_cell(lattice)
            per = perimeter(cell, euclidean())
            m = lattice.covolume

            def bad(label, ok):
                if not ok:
                    failures.append({"sample": i, "check": label})

            bad("volume_equals_covolume",
                abs(cell.volume - m) <= 1e-8 * m)
            bad("facet_cap",
                cell.facet_count() <= 2 * (2**n - 1))
            bad("divergence_identity",
                abs(n * cell.volume
                    - sum(f.measure * f.distance for f in cell.facets))
                <= 1e-8 * n * cell.volume)
            bad("lambda_vs_min_facet_distance",
                abs(inv.lambda_min
                    - 2.0 * min(f.distance for f in cell.facets))
                <= 1e-9 * inv.lambda_min)
            bad("perimeter_lower",
                m / inv.packing_radius <= per * (1 + 1e-12))
            bad("perimeter_upper",
                per <= n * m / inv.packing_radius * (1 + 1e-12))
            bad("covering_ge_packing",
                cell.covering_radius >= inv.packing_radius * (1 - 1e-12))
        results.append({
            "dim": n,
            "samples": samples,
            "failures": failures,
            "pass": not failures,
        })
    return {
        "seed": seed,
        "dims": list(dims),
        "results": results,
        "all_pass": all(r["pass"] for r in results),
    }
