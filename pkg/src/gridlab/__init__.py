"""gridlab: unit grid intersection graphs with exact rational geometry.

Representations (axis-aligned segments with rational coordinates),
extraction and verification of their intersection graphs, canonicalization
into a bounded grid, exact recognition by exhaustive search, satisfiability
reduction instance generation with clause-gadget case analysis and
representation synthesis, tree families with boundary lower bounds, plain
text file formats, and SVG rendering.
"""

from .geometry import (
    Graph,
    Orientation,
    Representation,
    Segment,
    VerificationReport,
    bipartition,
    extract_graph,
    girth,
    hseg,
    intersects,
    max_degree,
    verify,
    vseg,
)
from .canonical import canonicalize, check_canonical, perturb_to_general_position
from .recognizer import (
    Accept,
    BudgetExceeded,
    Reject,
    SearchOptions,
    TrivialAccept,
    min_boundary,
    recognize_gig,
    recognize_ugig,
)
from .sat import SatInstance, figure3_formula, make_instance
from .reduction import (
    GFGraph,
    OrderingTriple,
    build_gf,
    clause_ordering_feasible,
    validate_instance,
)
from .synth import (
    RoutingFailure,
    UnsatisfiableAssignment,
    clause_template,
    synth_representation,
    template_id,
)
from .trees import empirical_bound, gen_tree, verify_nesting
from .formats import (
    ParseError,
    emit_graph,
    emit_instance,
    emit_rep,
    parse_graph,
    parse_instance,
    parse_rep,
)
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [
    "Accept",
    "BudgetExceeded",
    "GFGraph",
    "Graph",
    "OrderingTriple",
    "Orientation",
    "ParseError",
    "Reject",
    "Representation",
    "RoutingFailure",
    "SatInstance",
    "SearchOptions",
    "Segment",
    "TrivialAccept",
    "UnsatisfiableAssignment",
    "VerificationReport",
    "bipartition",
    "build_gf",
    "canonicalize",
    "check_canonical",
    "clause_ordering_feasible",
    "clause_template",
    "emit_graph",
    "emit_instance",
    "emit_rep",
    "empirical_bound",
    "extract_graph",
    "figure3_formula",
    "gen_tree",
    "girth",
    "hseg",
    "intersects",
    "make_instance",
    "max_degree",
    "min_boundary",
    "parse_graph",
    "parse_instance",
    "parse_rep",
    "perturb_to_general_position",
    "recognize_gig",
    "recognize_ugig",
    "render_svg",
    "synth_representation",
    "template_id",
    "validate_instance",
    "verify",
    "verify_nesting",
    "vseg",
]
