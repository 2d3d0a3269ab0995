"""Exact symmetric cube decompositions, orthotopic crystallographic groups and
cellular Markov partitions of torus Lattes maps."""
from .complex import (
    CellComplex,
    CellularMapTable,
    VerificationReport,
    glue_refinements,
    minimal_containing_cell,
    pullback,
    restrict,
    skeleton,
    verify_cell_decomposition,
    verify_cellular_map,
    verify_cellular_markov,
    verify_refinement,
)
from .crystal import (
    OrthotopicGroup,
    adjacency_transformation,
    canonicalize_point,
    make_orthotopic_group,
    orbit_intersection_check,
    torus_group,
    verify_normal_fundamental_domain,
)
from .exact import AffineMap, AffineSignedIsometry
from .lattes import (
    LattesMapRecord,
    build_lattes_cell_map,
    build_quotient_complexes,
    degree_count,
    subdivision_matrix,
    verify_conjugation,
    verify_markov,
)
from .polytope import (
    ConvexCell,
    apply_map,
    canonicalize,
    cell_boundary_facets,
    cone,
    intersect,
    relative_interior_point,
    volume,
)
from .symmetric import (
    Orthotope,
    boundary_K,
    build_K,
    build_K_orthotope,
    build_K_subdivided,
    build_Ko,
    cube_structure,
    cubic_stretching,
    halfspace,
    is_fundamental,
    orthotope_structure,
    subcube,
)
from .symmetry import (
    SymmetryGroup,
    check_family_invariance,
    check_stabilizer_property,
    enumerate_cube_symmetries,
    enumerate_orthotope_symmetries,
)

apply_isometry = apply_map

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "AffineSignedIsometry",
    "CellComplex",
    "CellularMapTable",
    "VerificationReport",
    "glue_refinements",
    "minimal_containing_cell",
    "pullback",
    "restrict",
    "skeleton",
    "verify_cell_decomposition",
    "verify_cellular_map",
    "verify_cellular_markov",
    "verify_refinement",
    "OrthotopicGroup",
    "adjacency_transformation",
    "canonicalize_point",
    "make_orthotopic_group",
    "orbit_intersection_check",
    "torus_group",
    "verify_normal_fundamental_domain",
    "LattesMapRecord",
    "build_lattes_cell_map",
    "build_quotient_complexes",
    "degree_count",
    "subdivision_matrix",
    "verify_conjugation",
    "verify_markov",
    "ConvexCell",
    "apply_map",
    "canonicalize",
    "cell_boundary_facets",
    "cone",
    "intersect",
    "relative_interior_point",
    "volume",
    "Orthotope",
    "boundary_K",
    "build_K",
    "build_K_orthotope",
    "build_K_subdivided",
    "build_Ko",
    "cube_structure",
    "cubic_stretching",
    "halfspace",
    "is_fundamental",
    "orthotope_structure",
    "subcube",
    "SymmetryGroup",
    "check_family_invariance",
    "check_stabilizer_property",
    "enumerate_cube_symmetries",
    "enumerate_orthotope_symmetries",
    "apply_isometry",
    "__version__",
]
