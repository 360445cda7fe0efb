"""Square-free words relative to string rewriting systems."""

__version__ = "0.1.0"

from .closures import (  # noqa: E402
    ClosureAnalysis,
    Outcome,
    ReductionReason,
    TauSystem,
    analyze,
    build_tau,
    closure,
    similar,
    tau_for,
)
from .decide import Decision, Verdict, decide_sf_rel, decide_via_structure, thue_generate  # noqa: E402
from .formats import format_system, parse_system  # noqa: E402
from .lindecomp import LinearDecomposition, is_lin, lin_enumerate, lin_order, verify  # noqa: E402
from .maxlin import canonical_factorization, compute_tw, maximal_occurrences  # noqa: E402
from .systems import RewriteSystem, Tag, classify, enumerate_class, equal_mod, neighbors, rewrites  # noqa: E402
from .words import Alphabet, Occurrence, find_square, is_square_free  # noqa: E402

__all__ = [
    "Alphabet", "ClosureAnalysis", "Decision", "LinearDecomposition", "Occurrence", "Outcome",
    "ReductionReason", "RewriteSystem", "Tag", "TauSystem", "Verdict", "analyze", "build_tau",
    "canonical_factorization", "classify", "closure", "compute_tw", "decide_sf_rel",
    "decide_via_structure", "enumerate_class", "equal_mod", "find_square", "format_system",
    "is_lin", "is_square_free", "lin_enumerate", "lin_order", "maximal_occurrences", "neighbors",
    "parse_system", "rewrites", "similar", "tau_for", "thue_generate", "verify",
]
