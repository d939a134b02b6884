"""foamlat: Voronoi cells of lattices, anisotropic perimeters, and
numerical search for perimeter-minimal lattice tilings."""

from ._kernel import HAVE_COMPILED
from .bounds import BoundsRow, bounds_row, mh_lattice_check, unit_ball_volume, zeta
from .catalog import CatalogEntry, get as catalog_get, list_entries
from .errors import (
    DimensionUnsupported,
    EnumerationBudgetExceeded,
    FoamlatError,
    GeometryDegenerate,
    InvalidNormSpec,
    SingularBasis,
    UnknownLattice,
)
from .lattice import (
    Lattice,
    LatticeInvariants,
    enumerate_points,
    lattice_from_json_dict,
    make_lattice,
    random_lattice,
    reduce_basis,
    shortest_vector,
)
from .norms import (
    NormSpec,
    euclidean,
    eval_norm,
    norm_from_json_dict,
    p_norm,
    perimeter,
    polyhedral,
    weighted_euclidean,
)
from .optimize import (
    OptimizationRun,
    OptimizerConfig,
    ParamSpace,
    minimize,
    objective,
    polish,
)
from .voronoi import (
    Facet,
    VoronoiCell,
    build_cell,
    contains,
    covering_radius,
    relevant_vectors,
    to_off,
    to_svg,
)

__version__ = "0.1.0"
