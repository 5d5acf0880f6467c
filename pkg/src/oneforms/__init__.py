"""Barcode configurations of simplicial one-cocycles of any degree of
irrationality: exact subspace calculus over prime fields on windowed
free-abelian covers, with configuration metrics, stability experiments,
duality checks, and a point-cloud front end."""

from .barcodes import (
    ChainModel,
    BarcodeReport,
    Configuration,
    CoverAnalysis,
    chain_model,
    analyze,
    lambda_config,
    stabilize,
)
from .complexes import (
    Cocycle,
    SimplicialComplex,
    betti,
    boundary_matrix,
    check_cocycle,
    coboundary,
    d_flat,
    integrate_tree,
)
from .cover import (
    CriticalOrbits,
    PeriodLattice,
    WindowSpec,
    WindowedCover,
    build_cover,
    compute_lattice,
    critical_orbits,
    verify_weak_tameness,
)
from .dataio import (
    dump_complex_cocycle,
    dump_metric_data,
    load_complex_cocycle,
    load_metric_data,
    write_json,
    write_rows_csv,
)
from .errors import (
    CocycleError,
    ContainmentError,
    DegreeError,
    DimensionMismatchError,
    GeometrizeError,
    InputFormatError,
    OneformsError,
    PrecisionError,
    UnsafeThresholdError,
    WindowTooSmallError,
)
from .fieldlinalg import (
    PrimeField,
    SparseMatrix,
    Subspace,
    image_basis,
    kernel_basis,
    quotient_dim,
    rank,
    subspace_intersection,
    subspace_sum,
    zero_subspace,
)
from .fixtures import FIXTURES, build_fixture
from .geometrize import (
    MetricData,
    epsilon_max,
    geometrize_pipeline,
    induced_cocycle,
    rips_complex,
)
from .metrics import (
    MatchingProblem,
    d_sup,
    matching_distance,
    stability_experiment,
)
from .values import PeriodBasis, RealValue, parse_rational

__version__ = "0.1.0"

__all__ = [
    "ChainModel", "BarcodeReport", "Configuration", "CoverAnalysis",
    "chain_model", "analyze", "lambda_config", "stabilize",
    "Cocycle", "SimplicialComplex", "betti", "boundary_matrix",
    "check_cocycle", "coboundary", "d_flat", "integrate_tree",
    "CriticalOrbits", "PeriodLattice", "WindowSpec", "WindowedCover",
    "build_cover", "compute_lattice", "critical_orbits",
    "verify_weak_tameness",
    "dump_complex_cocycle", "dump_metric_data", "load_complex_cocycle",
    "load_metric_data", "write_json", "write_rows_csv",
    "CocycleError", "ContainmentError", "DegreeError",
    "DimensionMismatchError", "GeometrizeError", "InputFormatError",
    "OneformsError", "PrecisionError", "UnsafeThresholdError",
    "WindowTooSmallError",
    "PrimeField", "SparseMatrix", "Subspace", "image_basis", "kernel_basis",
    "quotient_dim", "rank", "subspace_intersection", "subspace_sum",
    "zero_subspace",
    "FIXTURES", "build_fixture",
    "MetricData", "epsilon_max", "geometrize_pipeline", "induced_cocycle",
    "rips_complex",
    "MatchingProblem", "d_sup", "matching_distance", "stability_experiment",
    "PeriodBasis", "RealValue", "parse_rational",
    "__version__",
]
