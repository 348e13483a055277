"""Exact cohomology of line bundles on toric varieties and their immaculate loci."""

from ._backend import NAME as BACKEND
from .cohomology import (
    GradedCohomology,
    cohomology,
    degree_search_box,
    is_immaculate,
    line_of_immaculates_test,
    pullback_class,
)
from .errors import ImmaculateError
from .exceptional import SequenceQuery, find_exceptional_sequences, orbit_classes
from .families import (
    NAMED,
    PicThreeData,
    PicTwoData,
    SplittingData,
    build_pic2,
    build_pic3,
    build_splitting,
    pic2_immaculate,
    pic3_immaculate_closed_form,
    splitting_immaculate_general,
)
from .fan import Fan, ToricDivisor, canonical_class, nef_decompose
from .homology import Field
from .locus import (
    LocusDescription,
    cube_analysis,
    immaculate_locus,
    is_really_immaculate,
    maculate_region,
    tempting_subsets,
)
from .polyhedra import Polyhedron

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "NAMED",
    "Fan",
    "Field",
    "GradedCohomology",
    "ImmaculateError",
    "LocusDescription",
    "PicThreeData",
    "PicTwoData",
    "Polyhedron",
    "SequenceQuery",
    "SplittingData",
    "ToricDivisor",
    "build_pic2",
    "build_pic3",
    "build_splitting",
    "canonical_class",
    "cohomology",
    "cube_analysis",
    "degree_search_box",
    "find_exceptional_sequences",
    "immaculate_locus",
    "is_immaculate",
    "is_really_immaculate",
    "line_of_immaculates_test",
    "maculate_region",
    "nef_decompose",
    "orbit_classes",
    "pic2_immaculate",
    "pic3_immaculate_closed_form",
    "pullback_class",
    "splitting_immaculate_general",
    "tempting_subsets",
]
