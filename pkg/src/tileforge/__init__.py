"""tileforge: exact-arithmetic analysis of lattice self-affine tiles.

A tile here is the attractor T of M*T = T + D for an expanding integer
matrix M and a digit set D that is a complete residue system modulo M.
Everything that decides a property (neighbor sets, boundary graphs,
piece intersections, chain audits) runs in integer or rational
arithmetic; floating point appears only in exported point clouds.
"""

from tileforge.analysis import AbcTriple, TileAnalysis, analysis_for, predicts_14
from tileforge.cli import main
from tileforge.family import (
    ExpectedStructures,
    SweepRecord,
    disagreements,
    expected_contact_set,
    expected_graph,
    expected_structures,
    family_triples,
    sweep,
    sweep_csv,
)
from tileforge.geometry_io import (
    GraphDocument,
    PointCloud,
    approximate_boundary_piece,
    approximate_tile,
    attractor_radius,
    export,
    graph_document,
    merge_clouds,
    parse_dot,
    render,
    to_dot,
)
from tileforge.graphs import (
    BoundaryGraph,
    ContactSet,
    LabeledEdge,
    NeighborSet,
    build_graph,
    contact_set,
    minkowski_sum,
    neighbor_set,
    reduce,
)
from tileforge.lattice import (
    IntMatrix,
    RadixExpansion,
    companion_form,
    is_complete_residue_system,
    is_expanding,
    radix_expand,
)
from tileforge.power import (
    DigitWord,
    PowerGraph,
    SubtileRef,
    power_graph,
    subdivide,
    vertex_set,
    walk_point,
    word_admissible_from,
)
from tileforge.topology import (
    BingReport,
    ChainReport,
    ComplexCensus,
    FourFold,
    HataGraph,
    Piece,
    audit_report,
    bing_audit,
    boundary_loop_audit,
    census,
    classify,
    four_fold_placement,
    hata_graph,
    successor_hata,
)

__version__ = "0.1.0"

__all__ = [
    "AbcTriple",
    "BingReport",
    "BoundaryGraph",
    "ChainReport",
    "ComplexCensus",
    "ContactSet",
    "DigitWord",
    "ExpectedStructures",
    "FourFold",
    "GraphDocument",
    "HataGraph",
    "IntMatrix",
    "LabeledEdge",
    "NeighborSet",
    "Piece",
    "PointCloud",
    "PowerGraph",
    "RadixExpansion",
    "SubtileRef",
    "SweepRecord",
    "TileAnalysis",
    "analysis_for",
    "approximate_boundary_piece",
    "approximate_tile",
    "attractor_radius",
    "audit_report",
    "bing_audit",
    "boundary_loop_audit",
    "build_graph",
    "census",
    "classify",
    "companion_form",
    "contact_set",
    "disagreements",
    "expected_contact_set",
    "expected_graph",
    "expected_structures",
    "export",
    "family_triples",
    "four_fold_placement",
    "graph_document",
    "hata_graph",
    "is_complete_residue_system",
    "is_expanding",
    "main",
    "merge_clouds",
    "minkowski_sum",
    "neighbor_set",
    "parse_dot",
    "power_graph",
    "predicts_14",
    "radix_expand",
    "reduce",
    "render",
    "subdivide",
    "successor_hata",
    "sweep",
    "sweep_csv",
    "to_dot",
    "vertex_set",
    "walk_point",
    "word_admissible_from",
]
