"""Command-line interface: analyze, voronoi, optimize, bounds, catalog, check."""

from __future__ import annotations

import json
import math
import sys

import click

from . import bounds as bounds_mod
from . import catalog as catalog_mod
from .errors import (
    DimensionUnsupported,
    EnumerationBudgetExceeded,
    FoamlatError,
    GeometryDegenerate,
    InvalidNormSpec,
    SingularBasis,
    UnknownLattice,
)
from .lattice import lattice_from_json_dict
from .norms import (
    euclidean,
    norm_from_json_dict,
    p_norm,
    perimeter,
    weighted_euclidean,
)
from .optimize import OptimizerConfig, ParamSpace, minimize, polish
from .report import analyze_lattice, run_invariant_suite
from .voronoi import build_cell, to_off, to_svg

GEOMETRY_ERRORS = (SingularBasis, DimensionUnsupported, GeometryDegenerate,
                   EnumerationBudgetExceeded)


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _round_floats(obj):
    """Round every float to 9 significant digits for stable output."""
    if isinstance(obj, float):
        return float(_fmt(obj)) if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _emit_json(obj, out_path=None):
    text = json.dumps(_round_floats(obj), indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def parse_norm(text: str):
    try:
        if text == "euclidean":
            return euclidean()
        if text == "l1":
            return p_norm(1.0)
        if text == "linf":
            return p_norm(math.inf)
        if text.startswith("p:"):
            return p_norm(float(text[2:]))
        if text.startswith("weighted:"):
            return weighted_euclidean([float(w) for w in text[9:].split(",")])
        if text.startswith("{"):
            return norm_from_json_dict(json.loads(text))
    except (ValueError, KeyError, InvalidNormSpec) as exc:
        raise click.BadParameter(f"bad norm {text!r}: {exc}")
    raise click.BadParameter(f"unknown norm {text!r}")


def _load_lattice(path: str):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"error: cannot parse {path}: {exc}", err=True)
        sys.exit(2)
    try:
        return lattice_from_json_dict(obj)
    except (KeyError, TypeError, ValueError) as exc:
        click.echo(f"error: malformed lattice JSON: {exc}", err=True)
        sys.exit(2)
    except GEOMETRY_ERRORS as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(3)


def _resolve_init(text: str):
    if text.startswith("catalog:"):
        try:
            return catalog_mod.get(text[len("catalog:"):]).lattice()
        except UnknownLattice as exc:
            raise click.BadParameter(str(exc))
    raise click.BadParameter(f"unsupported --init {text!r}; use catalog:NAME")


@click.group()
def main():
    """Voronoi cells of lattices, perimeters, and lattice optimization."""


@main.command()
@click.argument("lattice_file", type=click.Path())
@click.option("--norm", "norms", multiple=True, default=("euclidean",),
              help="Norm spec; repeatable (euclidean, l1, linf, p:P, "
                   "weighted:W1,W2,..., or inline JSON).")
def analyze(lattice_file, norms):
    """Full invariant report for one lattice (JSON on stdout)."""
    lattice = _load_lattice(lattice_file)
    specs = {name: parse_norm(name) for name in norms}
    try:
        report = analyze_lattice(lattice, specs)
    except GEOMETRY_ERRORS as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(3)
    _emit_json(report)
    sys.exit(0 if report["all_checks_pass"] else 1)


@main.command()
@click.argument("lattice_file", type=click.Path())
@click.option("--export", "fmt", type=click.Choice(["svg", "off", "json"]),
              default="json")
@click.option("--out", "out_path", type=click.Path(), default=None)
def voronoi(lattice_file, fmt, out_path):
    """Build the Voronoi cell and export it."""
    lattice = _load_lattice(lattice_file)
    try:
        cell = build_cell(lattice)
        if fmt == "svg":
            text = to_svg(cell)
        elif fmt == "off":
            text = to_off(cell)
        else:
            text = json.dumps(_round_floats(cell.to_json_dict()), indent=2) + "\n"
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except GEOMETRY_ERRORS as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(3)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@main.command()
@click.option("--dim", type=int, required=True)
@click.option("--m", "covolume", type=float, default=1.0, show_default=True)
@click.option("--norm", default="euclidean", show_default=True)
@click.option("--restarts", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-iter", type=int, default=300, show_default=True)
@click.option("--mode", type=click.Choice(["auto", "gram_cholesky",
                                           "full_basis"]), default="auto")
@click.option("--init", "init_name", default=None,
              help="catalog:NAME starting point; with --restarts 0 runs a "
                   "polish-only local search from it.")
@click.option("--stretch", is_flag=True,
              help="Allow dimensions 6..8 (explicit budget override).")
@click.option("--out", "out_path", type=click.Path(), default="run.json",
              show_default=True)
def optimize(dim, covolume, norm, restarts, seed, max_iter, mode, init_name,
             stretch, out_path):
    """Minimize the cell perimeter over lattices of fixed covolume."""
    if dim < 2 or dim > 8:
        raise click.BadParameter("--dim must be in 2..8")
    spec = parse_norm(norm)
    if mode == "auto":
        mode = "gram_cholesky" if spec.kind == "euclidean" else "full_basis"
    config = OptimizerConfig(restarts=restarts, max_iter=max_iter, seed=seed,
                             allow_stretch_dims=stretch)
    try:
        if init_name is not None and restarts == 0:
            start = _resolve_init(init_name).with_covolume(covolume)
            run = polish(start, spec,
                         OptimizerConfig(restarts=0, init_step=1e-3,
                                         max_iter=max_iter, seed=seed,
                                         allow_stretch_dims=stretch))
        else:
            space = ParamSpace(mode=mode, dim=dim, target_covolume=covolume)
            run = minimize(space, spec, config)
    except DimensionUnsupported as exc:
        raise click.BadParameter(str(exc))
    _emit_json(run.to_json_dict(), out_path)
    click.echo(f"best_value {_fmt(run.best_value)} status {run.status} "
               f"-> {out_path}")
    sys.exit(0 if run.status == "converged" else 1)


@main.command()
@click.option("--from", "from_n", type=int, required=True)
@click.option("--to", "to_n", type=int, required=True)
@click.option("--witness", default=None, help="catalog:NAME witness column.")
def bounds(from_n, to_n, witness):
    """CSV table of the isoperimetric brackets for a dimension range."""
    if from_n < 2 or to_n < from_n:
        raise click.BadParameter("need 2 <= from <= to")
    witness_entry = None
    if witness is not None:
        if not witness.startswith("catalog:"):
            raise click.BadParameter("--witness takes catalog:NAME")
        try:
            witness_entry = catalog_mod.get(witness[len("catalog:"):])
        except UnknownLattice as exc:
            raise click.BadParameter(str(exc))

    header = "n,omega_n,zeta_n,lower,upper,mh_radius,asymptote"
    if witness_entry is not None:
        header += ",witness,in_bracket"
    lines = [header]
    for n in range(from_n, to_n + 1):
        row = bounds_mod.bounds_row(n)
        cells = [str(n)] + [_fmt(x) for x in (
            row.omega_n, row.zeta_n, row.lower, row.upper,
            row.mh_packing_radius, row.asymptote)]
        if witness_entry is not None:
            if witness_entry.dim == n and witness_entry.basis is not None:
                lat = witness_entry.lattice().with_covolume(1.0)
                per = perimeter(build_cell(lat), euclidean())
                in_bracket = row.lower <= per <= row.upper
                cells += [_fmt(per), str(in_bracket).lower()]
            else:
                cells += ["", ""]
        lines.append(",".join(cells))
    click.echo("\n".join(lines))


@main.command()
@click.option("--name", default=None)
@click.option("--export", "fmt", type=click.Choice(["svg", "off", "json"]),
              default=None)
@click.option("--out", "out_path", type=click.Path(), default=None)
def catalog(name, fmt, out_path):
    """List catalog lattices, or show/export one by name."""
    if name is None:
        listing = [{
            "name": e.name, "dim": e.dim,
            "reference_perimeter": e.reference_perimeter_at_unit_covolume,
            "reference_facet_count": e.reference_facet_count,
            "notes": e.notes,
        } for e in catalog_mod.list_entries()]
        _emit_json(listing, out_path)
        return
    try:
        entry = catalog_mod.get(name)
    except UnknownLattice as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    if fmt is None:
        _emit_json({
            "name": entry.name,
            "dim": entry.dim,
            "basis": None if entry.basis is None else entry.basis.tolist(),
            "reference_perimeter": entry.reference_perimeter_at_unit_covolume,
            "reference_facet_count": entry.reference_facet_count,
            "notes": entry.notes,
        }, out_path)
        return
    try:
        cell = build_cell(entry.lattice().with_covolume(1.0))
        if fmt == "svg":
            text = to_svg(cell)
        elif fmt == "off":
            text = to_off(cell)
        else:
            text = json.dumps(_round_floats(cell.to_json_dict()),
                              indent=2) + "\n"
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except FoamlatError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(3)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@main.command()
@click.option("--dims", default="2,3,4", show_default=True)
@click.option("--samples", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def check(dims, samples, seed):
    """Run the invariant suite on seeded random lattices."""
    try:
        dim_list = [int(d) for d in dims.split(",")]
    except ValueError:
        raise click.BadParameter("--dims takes a comma list of integers")
    if any(d < 2 or d > 8 for d in dim_list):
        raise click.BadParameter("dims must be in 2..8")
    result = run_invariant_suite(dim_list, samples, seed)
    _emit_json(result)
    sys.exit(0 if result["all_pass"] else 1)


if __name__ == "__main__":
    main()
