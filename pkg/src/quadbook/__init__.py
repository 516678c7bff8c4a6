"""Exact homology and open book structures for generic intersections of quadrics."""

from .configuration import (
    Configuration,
    ConfigurationError,
    InvalidConfigurationError,
    NormalFormError,
    OpenBookError,
    OracleMismatchError,
    ParseError,
    QuadbookError,
    SizeCapError,
    ValidationReport,
    as_rational,
    complexify,
    coordinate_classes,
    delete_coordinate,
    duplicate_coordinate,
    make_configuration,
    validate,
)
from .feasibility import (
    LinearSystem,
    face_nonempty,
    feasible,
    origin_in_convex_hull,
    polytope_system,
)
from .complexes import (
    GradedGroup,
    SimplicialComplex,
    dual_complex,
    full_subcomplex,
    invariant_chain,
    reduced_homology,
    smith_normal_form,
)
from .splitting import (
    DEFAULT_SUBSET_CAP,
    SplittingLedger,
    euler_cellcount,
    homology_Z,
    homology_ZC,
    homology_Zplus,
    pair_homology,
    splitting_ledger,
)
from .classify import (
    CyclicPartition,
    Hypotheses,
    ManifoldDescription,
    SphereProduct,
    canonical_cycle,
    classify_complex,
    classify_real,
    d_values,
    double_partition,
    expected_homology,
    normal_form,
    normal_form_labelled,
    partition_configuration,
    rotate_parts,
)
from .openbook import (
    CheckResult,
    DiskTimesSphere,
    ExteriorSpace,
    OpenBookStructure,
    PageDescription,
    PuncturedProduct,
    SphereSphereDisk,
    SphereTimesDisk,
    boundary_consistency,
    exterior_homology,
    open_book_complex,
    open_book_real,
    page_homology,
    page_topology,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
