"""Closures of the two defining-word blocks and the induced system tau.

For a two-block system with blocks ``sigma`` (block 0) and ``rho``
(block 1), the sigma closure is every word equal under rho to a sigma
defining word, and symmetrically.  When both closures are finite,
non-empty, closed under their own block's relations and disjoint, the
system is *proper* and the pairwise system on the two closures (tau)
generates the same congruence.  Every other case reduces to a one-block
problem; see :class:`Reduction`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import AnalysisStateError, ClassificationError
from .systems import (
    Exploration,
    RewriteSystem,
    Tag,
    classify,
    pairwise_system,
    rewrites,
    star_system,
)
from .words import Word

DEFAULT_CLOSURE_BUDGET = 10_000


class ClosureStatus(enum.Enum):
    FINITE = "Finite"
    BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass(frozen=True)
class ClosureSet:
    status: ClosureStatus
    words: frozenset

    @property
    def finite(self) -> bool:
        return self.status is ClosureStatus.FINITE


def closure(seed: Iterable[Word], other: RewriteSystem, budget: int = DEFAULT_CLOSURE_BUDGET) -> ClosureSet:
    """Union of the classes of the seed words under ``other``.

    ``budget`` bounds the total number of distinct words; exceeding it
    yields a partial set with status ``BUDGET_EXCEEDED``.
    """
    seed = set(seed)
    if budget < len(seed):
        raise ValueError("closure budget must cover the seed set")
    ex = Exploration(seed, other, budget).run()
    status = ClosureStatus.FINITE if ex.complete else ClosureStatus.BUDGET_EXCEEDED
    return ClosureSet(status, frozenset(ex.parent))


def is_closed_under(words: frozenset, system: RewriteSystem) -> bool:
    """True when no one-step rewrite leads from ``words`` to a word outside it."""
    # one-step closure suffices: a class leaving the set must do so in one step
    return all(step.target in words for w in words for step in rewrites(w, system))


class Outcome(enum.Enum):
    PROPER_TWO_BLOCK = "ProperTwoBlock"
    REDUCED_TO_ONE_BLOCK = "ReducedToOneBlock"
    INFINITE_OR_UNKNOWN_CLOSURE = "InfiniteOrUnknownClosure"


class ReductionReason(enum.Enum):
    CLOSURES_INTERSECT = "closures-intersect"
    SIGMA_NOT_CLOSED = "sigma-not-closed"
    RHO_NOT_CLOSED = "rho-not-closed"
    NEITHER_CLOSED = "neither-closed"


@dataclass(frozen=True)
class Reduction:
    """How a non-proper two-block system reduces to a single block.

    A word is square-free relative to the original system iff its class
    under ``system`` is square-free and contains no word with a factor from
    ``forbidden``.

    * closures intersect: ``system`` equates the union of both closures
      and generates the original congruence; nothing is forbidden.
    * a closure is not closed under its own block: every word containing a
      defining word of that block is equal to a word with a square, so those
      defining words are forbidden and ``system`` is the other block.
    """

    reason: ReductionReason
    system: RewriteSystem
    forbidden: frozenset = frozenset()


@dataclass(frozen=True)
class ClosureAnalysis:
    system: RewriteSystem
    sigma_words: frozenset
    rho_words: frozenset
    sigma_closure: ClosureSet
    rho_closure: ClosureSet
    sigma_closed_under_sigma: Optional[bool]
    rho_closed_under_rho: Optional[bool]
    intersection_nonempty: bool
    outcome: Outcome
    reduction: Optional[Reduction] = None

    @property
    def proper(self) -> bool:
        return self.outcome is Outcome.PROPER_TWO_BLOCK


def analyze(system: RewriteSystem, budget: int = DEFAULT_CLOSURE_BUDGET) -> ClosureAnalysis:
    cls = classify(system)
    if cls.tag is not Tag.TWO_BLOCK:
        raise ClassificationError(f"closure analysis needs a TwoBlock system, got {cls}")
    d_sigma, d_rho = system.blocks
    sigma, rho = system.restrict(d_sigma), system.restrict(d_rho)
    sigma_bar = closure(d_sigma, rho, budget)
    rho_bar = closure(d_rho, sigma, budget)
    meet = bool(sigma_bar.words & rho_bar.words)
    common = dict(system=system, sigma_words=d_sigma, rho_words=d_rho,
                  sigma_closure=sigma_bar, rho_closure=rho_bar, intersection_nonempty=meet)

    if not (sigma_bar.finite and rho_bar.finite):
        return ClosureAnalysis(sigma_closed_under_sigma=None, rho_closed_under_rho=None,
                               outcome=Outcome.INFINITE_OR_UNKNOWN_CLOSURE, **common)

    s_closed = is_closed_under(sigma_bar.words, sigma)
    r_closed = is_closed_under(rho_bar.words, rho)
    flags = dict(sigma_closed_under_sigma=s_closed, rho_closed_under_rho=r_closed)
    alphabet = system.alphabet
    if meet:
        merged = star_system(alphabet, sigma_bar.words | rho_bar.words)
        red = Reduction(ReductionReason.CLOSURES_INTERSECT, merged)
    elif not s_closed and not r_closed:
        red = Reduction(ReductionReason.NEITHER_CLOSED, RewriteSystem(alphabet, ()), d_sigma | d_rho)
    elif not s_closed:
        red = Reduction(ReductionReason.SIGMA_NOT_CLOSED, rho, d_sigma)
    elif not r_closed:
        red = Reduction(ReductionReason.RHO_NOT_CLOSED, sigma, d_rho)
    else:
        return ClosureAnalysis(outcome=Outcome.PROPER_TWO_BLOCK, **flags, **common)
    return ClosureAnalysis(outcome=Outcome.REDUCED_TO_ONE_BLOCK, reduction=red, **flags, **common)


@dataclass(frozen=True)
class TauSystem:
    """The pairwise system on the two closures of a proper two-block system.

    ``origin`` is the system the closures were computed from; it generates
    the same congruence as ``as_system``.
    """

    sigma_block: frozenset
    rho_block: frozenset
    as_system: RewriteSystem
    origin: RewriteSystem
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    @property
    def alphabet(self):
        return self.origin.alphabet

    @property
    def words(self) -> frozenset:
        """D_tau, the union of both closures."""
        return self.sigma_block | self.rho_block

    def block_of(self, word: Word) -> Optional[int]:
        if word in self.sigma_block:
            return 0
        if word in self.rho_block:
            return 1
        return None

    def block(self, index: int) -> frozenset:
        return (self.sigma_block, self.rho_block)[index]

    def key(self, word: Word):
        return self.origin.alphabet.key(word)


def similar(x: Word, y: Word, tau: TauSystem) -> bool:
    """True iff ``x`` and ``y`` lie in the same closure."""
    b = tau.block_of(x)
    return b is not None and b == tau.block_of(y)


def build_tau(analysis: ClosureAnalysis) -> TauSystem:
    if not analysis.proper:
        raise AnalysisStateError(f"tau needs a ProperTwoBlock analysis, got {analysis.outcome.value}")
    sigma_bar = analysis.sigma_closure.words
    rho_bar = analysis.rho_closure.words
    alphabet = analysis.system.alphabet
    return TauSystem(sigma_bar, rho_bar, pairwise_system(alphabet, (sigma_bar, rho_bar)), analysis.system)


def tau_for(system: RewriteSystem, budget: int = DEFAULT_CLOSURE_BUDGET) -> TauSystem:
    """Shortcut: analyze ``system`` and build tau, failing unless it is proper."""
    return build_tau(analyze(system, budget))
