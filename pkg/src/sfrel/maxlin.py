"""Maximal occurrences of linearly decomposable words and the set T_w."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .closures import TauSystem
from .decide import DEFAULT_BUDGET, Verdict, decide_sf_rel
from .errors import InvariantViolation, NotSquareFreeRelativeError
from .lindecomp import lin_enumerate, lin_order
from .words import Occurrence, Word


@dataclass(frozen=True, order=True)
class MaxLinOccurrence:
    occurrence: Occurrence
    order: int  # least n with the base in Lin(n)


def lin_spans(w: Word, tau: TauSystem) -> dict[tuple[int, int], int]:
    """``{(start, end): least order}`` for every factor of ``w`` that lies in Lin."""
    spans = {}
    n = len(w)
    for start in range(n):
        for end in range(start + 1, n + 1):
            order = lin_order(w[start:end], tau)
            if order is not None:
                spans[(start, end)] = order
    return spans


def _maximal(spans):
    out = []
    for (s, e), order in spans.items():
        if not any((s2 <= s and e <= e2 and (s2, e2) != (s, e)) for (s2, e2) in spans):
            out.append((s, e, order))
    out.sort()
    return out


def maximal_occurrences(w: Word, n: int, tau: TauSystem) -> list[MaxLinOccurrence]:
    """MaxLin(n, w), left to right.

    Maximality is against Lin occurrences of every order, while only bases
    of order at most ``n`` are reported.
    """
    return [MaxLinOccurrence(Occurrence.at(w, s, e), order)
            for s, e, order in _maximal(lin_spans(w, tau)) if order <= n]


def is_maximal_at(w: Word, start: int, end: int, tau: TauSystem) -> bool:
    """True when no strictly larger factor of ``w`` around ``[start, end)`` lies in Lin."""
    for s in range(start, -1, -1):
        for e in range(end, len(w) + 1):
            if (s, e) != (start, end) and lin_order(w[s:e], tau) is not None:
                return False
    return True


@dataclass(frozen=True)
class CanonicalFactorization:
    """``w = r_1 x_1 r_2 x_2 ... r_k x_k r_{k+1}`` with the x_i maximal Lin occurrences."""

    separators: tuple[Word, ...]
    bases: tuple[Word, ...]
    orders: tuple[int, ...]

    @property
    def word(self) -> Word:
        return self.assemble(self.bases)

    def assemble(self, bases) -> Word:
        parts = [self.separators[0]]
        for x, r in zip(bases, self.separators[1:]):
            parts.append(x)
            parts.append(r)
        return "".join(parts)

    def spans(self, bases) -> list[tuple[int, int]]:
        out = []
        pos = len(self.separators[0])
        for x, r in zip(bases, self.separators[1:]):
            out.append((pos, pos + len(x)))
            pos += len(x) + len(r)
        return out


def _require_sf(w, tau, budget):
    d = decide_sf_rel(w, tau.origin, budget)
    if d.verdict is not Verdict.IN_SF:
        raise NotSquareFreeRelativeError(
            f"{w!r} is not shown square-free relative to the system ({d.verdict.value})")


def canonical_factorization(w: Word, tau: TauSystem, budget: int = DEFAULT_BUDGET,
                            check: bool = True) -> CanonicalFactorization:
    if check:
        _require_sf(w, tau, budget)
    spans = _maximal(lin_spans(w, tau))
    for (s1, e1, _), (s2, e2, _) in zip(spans, spans[1:]):
        if s2 < e1:
            raise InvariantViolation(f"maximal Lin occurrences [{s1},{e1}) and [{s2},{e2}) intersect in {w!r}")
    seps, pos = [], 0
    for s, e, _ in spans:
        seps.append(w[pos:s])
        pos = e
    seps.append(w[pos:])
    defining = tau.words
    for r in seps:
        if any(d in r for d in defining):
            raise InvariantViolation(f"separator {r!r} contains a defining word")
    return CanonicalFactorization(tuple(seps), tuple(w[s:e] for s, e, _ in spans),
                                  tuple(o for _, _, o in spans))


@dataclass(frozen=True)
class TwSet:
    members: frozenset
    factorization: CanonicalFactorization


def compute_tw(w: Word, tau: TauSystem, budget: int = DEFAULT_BUDGET, check: bool = True,
               factorization: Optional[CanonicalFactorization] = None) -> TwSet:
    """Every word obtained by swapping each maximal slot for a Lin word of the same order
    that stays a maximal occurrence in the new word."""
    fact = factorization or canonical_factorization(w, tau, budget, check)
    choices = [sorted(lin_enumerate(n, tau), key=tau.key) for n in fact.orders]
    members = set()
    for ys in itertools.product(*choices):
        cand = fact.assemble(ys)
        if all(is_maximal_at(cand, s, e, tau) for s, e in fact.spans(ys)):
            members.add(cand)
    return TwSet(frozenset(members), fact)
