from .flows import (
    HISTORICAL,
    PREDICTION,
    FlowEdge,
    FlowSet,
    build_flows,
    field_similarity,
)
from .icicle import IcicleNode, PatentIcicle, build_icicle
from .layout import (
    LayoutError,
    LayoutSolution,
    centered_offsets,
    layout_objective,
    patent_positions,
    solve_layout,
    target_order,
)
from .matrix import (
    DEFAULT_BIN_EDGES,
    GLYPH_METRICS,
    UNASSIGNED,
    Bin,
    Cell,
    MatrixError,
    PaperMatrix,
    build_matrix,
    parse_bins,
    primary_field,
    row_of,
)
from .payload import build_payload
from .timeline import FieldTimeline, field_timeline

__all__ = [
    "DEFAULT_BIN_EDGES",
    "GLYPH_METRICS",
    "HISTORICAL",
    "PREDICTION",
    "UNASSIGNED",
    "Bin",
    "Cell",
    "FieldTimeline",
    "FlowEdge",
    "FlowSet",
    "IcicleNode",
    "LayoutError",
    "LayoutSolution",
    "MatrixError",
    "PaperMatrix",
    "PatentIcicle",
    "build_flows",
    "build_icicle",
    "build_matrix",
    "build_payload",
    "centered_offsets",
    "field_similarity",
    "field_timeline",
    "layout_objective",
    "parse_bins",
    "patent_positions",
    "primary_field",
    "row_of",
    "solve_layout",
    "target_order",
]
