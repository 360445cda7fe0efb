"""Rewriting systems, one-step rewriting and budgeted class exploration."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

from .errors import RelationError
from .words import Alphabet, Word


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        if self.lhs == self.rhs:
            raise RelationError(f"identity relation {self.lhs!r} = {self.rhs!r}")

    def reversed(self) -> "Relation":
        return Relation(self.rhs, self.lhs)


class UnionFind:
    """Disjoint sets over arbitrary hashable items, with path halving."""

    def __init__(self, items=()):
        self.parent = {}
        for item in items:
            self.add(item)

    def add(self, item):
        self.parent.setdefault(item, item)

    def find(self, item):
        parent = self.parent
        while parent[item] != item:
            parent[item] = parent[parent[item]]
            item = parent[item]
        return item

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def groups(self):
        out = {}
        for item in self.parent:
            out.setdefault(self.find(item), set()).add(item)
        return list(out.values())


@dataclass(frozen=True)
class RewriteSystem:
    """A finite irreflexive set of defining relations over an alphabet.

    ``blocks`` are the connected components of the graph whose vertices are
    the defining words and whose edges are the relations.  They are ordered
    by their shortlex-least word, which makes block 0 / block 1 canonical.
    """

    alphabet: Alphabet
    relations: tuple[Relation, ...]
    defining_words: frozenset = field(init=False, compare=False)
    blocks: tuple[frozenset, ...] = field(init=False, compare=False)

    def __post_init__(self):
        rels = tuple(r if isinstance(r, Relation) else Relation(*r) for r in self.relations)
        seen = set()
        for r in rels:
            self.alphabet.check(r.lhs)
            self.alphabet.check(r.rhs)
            if (r.lhs, r.rhs) in seen or (r.rhs, r.lhs) in seen:
                raise RelationError(f"duplicate relation {r.lhs!r} = {r.rhs!r}")
            seen.add((r.lhs, r.rhs))
        object.__setattr__(self, "relations", rels)
        uf = UnionFind()
        for r in rels:
            uf.add(r.lhs)
            uf.add(r.rhs)
            uf.union(r.lhs, r.rhs)
        key = self.alphabet.key
        blocks = sorted((frozenset(g) for g in uf.groups()), key=lambda b: key(min(b, key=key)))
        object.__setattr__(self, "defining_words", frozenset(uf.parent))
        object.__setattr__(self, "blocks", tuple(blocks))

    @classmethod
    def from_pairs(cls, alphabet, pairs: Iterable[tuple[Word, Word]]) -> "RewriteSystem":
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet.of(alphabet)
        return cls(alphabet, tuple(Relation(u, v) for u, v in pairs))

    def restrict(self, block: Iterable[Word]) -> "RewriteSystem":
        """The subsystem made of the relations whose words lie in ``block``."""
        block = set(block)
        return RewriteSystem(self.alphabet, tuple(r for r in self.relations if r.lhs in block))

    def swapped(self, index: int) -> "RewriteSystem":
        rels = list(self.relations)
        rels[index] = rels[index].reversed()
        return RewriteSystem(self.alphabet, tuple(rels))

    def key(self, word: Word):
        return self.alphabet.key(word)


def pairwise_system(alphabet: Alphabet, blocks: Iterable[Iterable[Word]]) -> RewriteSystem:
    """All unordered pairs of distinct words inside each block, shortlex-oriented."""
    rels = []
    for block in blocks:
        words = alphabet.sorted(set(block))
        for i, u in enumerate(words):
            for v in words[i + 1:]:
                rels.append(Relation(u, v))
    return RewriteSystem(alphabet, tuple(rels))


def star_system(alphabet: Alphabet, words: Iterable[Word]) -> RewriteSystem:
    """A one-block system equating all ``words`` through their shortlex-least member."""
    words = alphabet.sorted(set(words))
    return RewriteSystem(alphabet, tuple(Relation(words[0], v) for v in words[1:]))


class Tag(enum.Enum):
    EMPTY = "Empty"
    ONE_BLOCK = "OneBlock"
    TWO_BLOCK = "TwoBlock"
    GENERAL = "General"


@dataclass(frozen=True)
class SystemClass:
    tag: Tag
    block_count: int

    def __str__(self):
        if self.tag is Tag.GENERAL:
            return f"General({self.block_count})"
        return self.tag.value

    @property
    def decidable(self) -> bool:
        """True for the shapes whose membership problem is known to be decidable."""
        return self.tag is not Tag.GENERAL


def classify(system: RewriteSystem) -> SystemClass:
    n = len(system.blocks)
    tag = {0: Tag.EMPTY, 1: Tag.ONE_BLOCK, 2: Tag.TWO_BLOCK}.get(n, Tag.GENERAL)
    return SystemClass(tag, n)


class Step(NamedTuple):
    """One application of a relation: ``source[:position] + new + rest``."""

    target: Word
    relation: int
    position: int
    forward: bool  # True when lhs was replaced by rhs


def rewrites(w: Word, system: RewriteSystem) -> list[Step]:
    """All one-step rewrites of ``w`` in either direction.

    Ordered by position, then relation index, then direction (forward first).
    """
    steps = []
    n = len(w)
    for ri, rel in enumerate(system.relations):
        for forward, src, dst in ((True, rel.lhs, rel.rhs), (False, rel.rhs, rel.lhs)):
            if not src:
                for pos in range(n + 1):
                    steps.append(Step(w[:pos] + dst + w[pos:], ri, pos, forward))
                continue
            k = len(src)
            pos = w.find(src)
            while pos >= 0:
                steps.append(Step(w[:pos] + dst + w[pos + k:], ri, pos, forward))
                pos = w.find(src, pos + 1)
    steps.sort(key=lambda s: (s.position, s.relation, not s.forward))
    return steps


def neighbors(w: Word, system: RewriteSystem) -> set[Word]:
    return {s.target for s in rewrites(w, system)}


class Exploration:
    """Breadth-first exploration of the classes of some seed words.

    Words are materialized level by level; each level is kept in shortlex
    order and expanded in that order, so parent links and the truncation
    point are deterministic.  ``budget`` bounds the number of distinct
    words materialized: asking for one more sets ``truncated``.
    """

    def __init__(self, seeds: Iterable[Word], system: RewriteSystem, budget: int):
        if budget < 1:
            raise ValueError("budget must be a positive integer")
        self.system = system
        self.budget = budget
        self.parent: dict[Word, Optional[tuple[Word, Step]]] = {}
        for s in system.alphabet.sorted(set(seeds)):
            self.parent[s] = None
        self.level: list[Word] = list(self.parent)
        self.depth = 0
        self.expansions = 0
        self.truncated = len(self.parent) > budget
        self.edges: Optional[list[tuple[Word, Step]]] = None

    def record_edges(self):
        self.edges = []
        return self

    @property
    def done(self) -> bool:
        return self.truncated or not self.level

    @property
    def complete(self) -> bool:
        return not self.truncated and not self.level

    def advance(self) -> list[Word]:
        """Expand the current level; returns (and installs) the next one."""
        nxt = []
        parent = self.parent
        for x in self.level:
            self.expansions += 1
            for step in rewrites(x, self.system):
                if self.edges is not None:
                    self.edges.append((x, step))
                y = step.target
                if y in parent:
                    continue
                if len(parent) >= self.budget:
                    self.truncated = True
                    self.level = []
                    return []
                parent[y] = (x, step)
                nxt.append(y)
        nxt.sort(key=self.system.key)
        self.level = nxt
        self.depth += 1
        return nxt

    def run(self, max_depth: Optional[int] = None) -> "Exploration":
        while not self.done and (max_depth is None or self.depth < max_depth):
            self.advance()
        return self

    def members(self) -> list[Word]:
        return self.system.alphabet.sorted(self.parent)

    def path_to(self, word: Word) -> list[tuple[Word, Optional[Step]]]:
        """The derivation from a seed to ``word`` along parent links."""
        chain = []
        cur = word
        while True:
            link = self.parent[cur]
            if link is None:
                chain.append((cur, None))
                break
            prev, step = link
            chain.append((cur, step))
            cur = prev
        chain.reverse()
        return chain


class Status(enum.Enum):
    COMPLETE = "Complete"
    TRUNCATED = "Truncated"


@dataclass(frozen=True)
class ClassResult:
    status: Status
    members: tuple[Word, ...]
    expansions: int

    @property
    def complete(self) -> bool:
        return self.status is Status.COMPLETE


def enumerate_class(w: Word, system: RewriteSystem, budget: int) -> ClassResult:
    """Budgeted closure of ``{w}`` under one-step rewriting."""
    system.alphabet.check(w)
    ex = Exploration([w], system, budget).run()
    status = Status.COMPLETE if ex.complete else Status.TRUNCATED
    return ClassResult(status, tuple(ex.members()), ex.expansions)


class Tri(enum.Enum):
    YES = "yes"
    NO = "no"
    INDETERMINATE = "indeterminate"


def equal_mod(x: Word, y: Word, system: RewriteSystem, budget: int) -> Tri:
    """Whether ``x`` and ``y`` are equal modulo the system, as far as the budget allows."""
    if x == y:
        return Tri.YES
    ex = Exploration([x], system, budget)
    while not ex.done:
        ex.advance()
        if y in ex.parent:
            return Tri.YES
    return Tri.NO if ex.complete else Tri.INDETERMINATE

