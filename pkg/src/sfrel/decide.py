"""Deciding square-freeness relative to a rewriting system.

The decision is a breadth-first walk of the class of the input word: the
first word containing a square gives a negative answer together with the
shortest derivation reaching it; reaching a fixpoint with every word
square-free gives a positive answer.  For systems with at most two blocks
every square-free-relative word has a finite class, so with enough budget
the walk always ends; running out of budget is reported as a resource
diagnostic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .closures import DEFAULT_CLOSURE_BUDGET, Outcome, Reduction, analyze, build_tau
from .errors import InvariantViolation
from .systems import Exploration, RewriteSystem, Step, Tag, classify
from .words import Alphabet, Square, Word, find_square

DEFAULT_BUDGET = 1_000_000

RESOURCE_LIMIT = "resource-limit: budget exhausted before the class was settled"
UNDECIDED_GENERAL = "undecided: budget exhausted on a system with three or more blocks"


class Verdict(enum.Enum):
    IN_SF = "InSF"
    NOT_IN_SF = "NotInSF"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Derivation:
    """``words[0] <-> words[1] <-> ... <-> words[-1]`` and a square in the last word."""

    words: tuple[Word, ...]
    steps: tuple[Step, ...]
    square: Square


@dataclass(frozen=True)
class Stats:
    explored: int
    expansions: int
    completed: bool
    depth: int


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    witness: Optional[Derivation]
    stats: Stats
    members: tuple[Word, ...] = ()  # the whole class, for InSF
    diagnostic: Optional[str] = None


def decide_sf_rel(w: Word, system: RewriteSystem, budget: int = DEFAULT_BUDGET) -> Decision:
    system.alphabet.check(w)
    ex = Exploration([w], system, budget)
    level = ex.level
    while True:
        for x in level:
            sq = find_square(x)
            if sq is not None:
                path = ex.path_to(x)
                witness = Derivation(tuple(y for y, _ in path),
                                     tuple(step for _, step in path[1:]), sq)
                return Decision(Verdict.NOT_IN_SF, witness, _stats(ex, False))
        if ex.done:
            break
        level = ex.advance()
    if ex.complete:
        return Decision(Verdict.IN_SF, None, _stats(ex, True), tuple(ex.members()))
    diag = RESOURCE_LIMIT if classify(system).decidable else UNDECIDED_GENERAL
    return Decision(Verdict.INDETERMINATE, None, _stats(ex, False), diagnostic=diag)


def _stats(ex, completed):
    return Stats(len(ex.parent), ex.expansions, completed, ex.depth)


def decide_reduced(w: Word, reduction: Reduction, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Decide membership through the one-block reduction of a non-proper two-block system."""
    ex = Exploration([w], reduction.system, budget)
    level = ex.level
    forbidden = reduction.forbidden
    while True:
        for x in level:
            if find_square(x) is not None or any(f in x for f in forbidden):
                return Verdict.NOT_IN_SF
        if ex.done:
            break
        level = ex.advance()
    return Verdict.IN_SF if ex.complete else Verdict.INDETERMINATE


@dataclass(frozen=True)
class StructuralReport:
    factorization: object  # maxlin.CanonicalFactorization
    tw: frozenset
    class_size: int
    class_in_tw: bool
    outside: tuple[Word, ...]  # class members missing from T_w (empty when contained)

    @property
    def tw_size(self) -> int:
        return len(self.tw)


@dataclass(frozen=True)
class StructuralDecision:
    decision: Decision
    outcome: Optional[Outcome]
    report: Optional[StructuralReport]
    unavailable: Optional[str] = None


def decide_via_structure(w: Word, system: RewriteSystem, budget: int = DEFAULT_BUDGET,
                         closure_budget: int = DEFAULT_CLOSURE_BUDGET) -> StructuralDecision:
    """Run the breadth-first decision and cross-check a positive answer against T_w.

    The verdict is always the one from :func:`decide_sf_rel`.  The report
    is present only for square-free-relative words over a proper two-block
    system; otherwise ``unavailable`` (or a missing report for a negative
    verdict) says why.
    """
    from .maxlin import canonical_factorization, compute_tw

    decision = decide_sf_rel(w, system, budget)
    cls = classify(system)
    if cls.tag is not Tag.TWO_BLOCK:
        return StructuralDecision(decision, None, None,
                                  f"structural-mode-unavailable: system is {cls}, not TwoBlock")
    analysis = analyze(system, closure_budget)
    if not analysis.proper:
        return StructuralDecision(decision, analysis.outcome, None,
                                  f"structural-mode-unavailable: closure outcome is {analysis.outcome.value}")
    if decision.verdict is not Verdict.IN_SF:
        return StructuralDecision(decision, analysis.outcome, None)
    tau = build_tau(analysis)
    fact = canonical_factorization(w, tau, check=False)
    tw = compute_tw(w, tau, factorization=fact)
    outside = tuple(m for m in decision.members if m not in tw.members)
    report = StructuralReport(fact, tw.members, len(decision.members), not outside, outside)
    return StructuralDecision(decision, analysis.outcome, report)


_THUE_MORPHISM = {"a": "abc", "b": "ac", "c": "b"}


def thue_generate(length: int, alphabet: Optional[Alphabet] = None) -> Word:
    """Prefix of the fixed point of a -> abc, b -> ac, c -> b starting from ``a``.

    With a three-letter ``alphabet`` its letters replace a, b, c in order.
    The result is checked to be square-free before it is returned.
    """
    if length < 0:
        raise ValueError("length must be non-negative")
    if alphabet is not None and len(alphabet) != 3:
        raise ValueError("the generator needs an alphabet of exactly three letters")
    w = "a"
    while len(w) < length:
        w = "".join(_THUE_MORPHISM[c] for c in w)
    w = w[:length]
    if find_square(w) is not None:
        raise InvariantViolation(f"generated word of length {length} contains a square")
    if alphabet is not None:
        w = w.translate(str.maketrans("abc", "".join(alphabet.codes)))
    return w
