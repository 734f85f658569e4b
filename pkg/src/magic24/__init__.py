"""Exact construction and enumeration of magic labelings of the 24-cell."""

from .construct import (
    SCHEMES,
    MagicLabeling,
    WeightScheme,
    compose,
    construct_all,
    enumerate_triples,
    superimpose,
)
from .incidence import (
    IncidenceStructure,
    LabelingReport,
    antipode_map,
    build_24cell,
    build_cube,
    build_tesseract,
    magic_sum,
    triangles,
    verify_labeling,
)
from .labelings import (
    complement,
    enumerate_parity_binary,
    parity_solutions_gf2,
    permute_trits,
    ternary_16cell,
)
from .solver import SearchConfig, SearchOutcome, orbit_report, solve
from .symmetry import (
    SymmetryGroup,
    automorphisms,
    canonical_form,
    count_orbits,
    group_closure,
    symmetry_24cell,
)

__version__ = "0.1.0"

__all__ = [
    "SearchConfig",
    "SearchOutcome",
    "orbit_report",
    "solve",
    "SCHEMES",
    "MagicLabeling",
    "WeightScheme",
    "compose",
    "construct_all",
    "enumerate_triples",
    "superimpose",
    "IncidenceStructure",
    "LabelingReport",
    "antipode_map",
    "build_24cell",
    "build_cube",
    "build_tesseract",
    "magic_sum",
    "triangles",
    "verify_labeling",
    "complement",
    "enumerate_parity_binary",
    "parity_solutions_gf2",
    "permute_trits",
    "ternary_16cell",
    "SymmetryGroup",
    "automorphisms",
    "canonical_form",
    "count_orbits",
    "group_closure",
    "symmetry_24cell",
]
