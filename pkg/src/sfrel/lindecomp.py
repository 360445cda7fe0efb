"""Linear decompositions: certificates, search, enumeration and surgery.

A certificate for ``x = x_1 x_2 ... x_n`` carries left margins ``p_i``,
right margins ``q_i`` and witness words ``u_i`` (i = 2..n) and ``v_i``
(i = 1..n-1).  With ``~`` meaning "same closure of tau", it is valid when

1. ``p_i x_i q_i ~ q_{i-1} u_i``   for 1 < i <= n
2. ``p_i x_i q_i ~ v_i p_{i+1}``   for 1 <= i < n
3. ``q_i`` or ``p_{i+1}`` is empty for 1 <= i < n
4. ``p_1`` and ``q_n`` are empty
5. ``x_1`` is a tau defining word when n = 1

Block indices in this module's public functions are 1-based, as above.

Because ``~`` only relates tau defining words, every framed word
``p_i x_i q_i`` of a valid certificate is a tau defining word, ``q_{i-1}``
is a prefix of a word in the closure of the i-th framed word and
``p_{i+1}`` a suffix of a word in the closure of the i-th.  Search and
enumeration walk chains of such *pieces* (a defining word split as
``p x q``), which keeps them finite.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

from .closures import TauSystem, similar
from .errors import (
    IndeterminateError,
    InvalidCertificateError,
    InvariantViolation,
    PreconditionError,
)
from .systems import Tri, equal_mod
from .words import Word

DEFAULT_EQ_BUDGET = 100_000


@dataclass(frozen=True)
class LinearDecomposition:
    blocks: tuple[Word, ...]
    left_margins: tuple[Word, ...]
    right_margins: tuple[Word, ...]
    right_witnesses: tuple[Word, ...]  # u_2 .. u_n
    left_witnesses: tuple[Word, ...]  # v_1 .. v_{n-1}

    def __post_init__(self):
        for name in ("blocks", "left_margins", "right_margins", "right_witnesses", "left_witnesses"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def order(self) -> int:
        return len(self.blocks)

    @property
    def word(self) -> Word:
        return "".join(self.blocks)

    def framed(self, i: int) -> Word:
        return self.left_margins[i - 1] + self.blocks[i - 1] + self.right_margins[i - 1]

    def p(self, i):
        return self.left_margins[i - 1]

    def q(self, i):
        return self.right_margins[i - 1]

    def u(self, i):
        return self.right_witnesses[i - 2]

    def v(self, i):
        return self.left_witnesses[i - 1]


@dataclass(frozen=True)
class Violation:
    condition: int  # 0 marks a malformed certificate
    index: Optional[int]
    message: str

    def __str__(self):
        where = f" at i={self.index}" if self.index is not None else ""
        return f"condition ({self.condition}){where}: {self.message}"


def verify(cert: LinearDecomposition, tau: TauSystem) -> list[Violation]:
    """Check every condition literally; an empty list means the certificate is valid."""
    n = cert.order
    out = []
    if n < 1:
        return [Violation(0, None, "a decomposition needs at least one block")]
    for name, want in (("left_margins", n), ("right_margins", n),
                       ("right_witnesses", n - 1), ("left_witnesses", n - 1)):
        if len(getattr(cert, name)) != want:
            out.append(Violation(0, None, f"{name} has {len(getattr(cert, name))} entries, expected {want}"))
    if out:
        return out
    for i, x in enumerate(cert.blocks, 1):
        if not x:
            out.append(Violation(0, i, "block is empty"))
    for i in range(2, n + 1):
        if not similar(cert.framed(i), cert.q(i - 1) + cert.u(i), tau):
            out.append(Violation(1, i, f"{cert.framed(i)!r} !~ {cert.q(i - 1) + cert.u(i)!r}"))
    for i in range(1, n):
        if not similar(cert.framed(i), cert.v(i) + cert.p(i + 1), tau):
            out.append(Violation(2, i, f"{cert.framed(i)!r} !~ {cert.v(i) + cert.p(i + 1)!r}"))
    for i in range(1, n):
        if cert.q(i) and cert.p(i + 1):
            out.append(Violation(3, i, "right margin and next left margin are both non-empty"))
    if cert.p(1):
        out.append(Violation(4, 1, "first left margin is not empty"))
    if cert.q(n):
        out.append(Violation(4, n, "last right margin is not empty"))
    if n == 1 and cert.blocks[0] not in tau.words:
        out.append(Violation(5, 1, f"single block {cert.blocks[0]!r} is not a defining word"))
    return out


def is_valid(cert: LinearDecomposition, tau: TauSystem) -> bool:
    return not verify(cert, tau)


def _require_valid(cert, tau):
    bad = verify(cert, tau)
    if bad:
        raise InvalidCertificateError("invalid certificate: " + "; ".join(map(str, bad)), bad)


# -- pieces -----------------------------------------------------------------


class Piece(NamedTuple):
    word: Word  # the framed defining word p + x + q
    p: Word
    x: Word
    q: Word
    block: int


class _Pieces:
    """Splits of the tau defining words, with the link predicate between them."""

    def __init__(self, tau: TauSystem):
        key = tau.key
        self.tau = tau
        items = []
        for b in (0, 1):
            for d in sorted(tau.block(b), key=key):
                for i in range(len(d)):
                    for j in range(i + 1, len(d) + 1):
                        items.append(Piece(d, d[:i], d[i:j], d[j:], b))
        self.items = items
        self.prefixes = [{d[:k] for d in tau.block(b) for k in range(len(d) + 1)} for b in (0, 1)]
        self.suffixes = [{d[k:] for d in tau.block(b) for k in range(len(d) + 1)} for b in (0, 1)]
        self.starts = [k for k, pc in enumerate(items) if not pc.p]
        self.succ = [[k for k, b in enumerate(items) if self.link(a, b)] for a in items]
        self.by_x = {}
        for k, pc in enumerate(items):
            self.by_x.setdefault(pc.x, []).append(k)

    def link(self, a: Piece, b: Piece) -> bool:
        return ((not a.q or not b.p)
                and a.q in self.prefixes[b.block]
                and b.p in self.suffixes[a.block])

    def right_witness(self, a: Piece, b: Piece) -> Word:
        """Shortlex-least u with ``a.q + u`` in the closure of ``b``."""
        cands = [d[len(a.q):] for d in self.tau.block(b.block) if d.startswith(a.q)]
        return min(cands, key=self.tau.key)

    def left_witness(self, a: Piece, b: Piece) -> Word:
        """Shortlex-least v with ``v + b.p`` in the closure of ``a``."""
        cands = [d[:len(d) - len(b.p)] for d in self.tau.block(a.block) if d.endswith(b.p)]
        return min(cands, key=self.tau.key)

    def certificate(self, chain: list[int]) -> LinearDecomposition:
        ps = [self.items[k] for k in chain]
        return LinearDecomposition(
            blocks=[pc.x for pc in ps],
            left_margins=[pc.p for pc in ps],
            right_margins=[pc.q for pc in ps],
            right_witnesses=[self.right_witness(a, b) for a, b in zip(ps, ps[1:])],
            left_witnesses=[self.left_witness(a, b) for a, b in zip(ps, ps[1:])],
        )


def pieces(tau: TauSystem) -> _Pieces:
    cached = tau._cache.get("pieces")
    if cached is None:
        cached = tau._cache["pieces"] = _Pieces(tau)
    return cached


# -- search -----------------------------------------------------------------


@dataclass(frozen=True)
class LinVerdict:
    member: bool
    certificate: Optional[LinearDecomposition] = None
    order: Optional[int] = None


def _least_chain(w: Word, tau: TauSystem, first: Optional[Word], last: Optional[Word]):
    """Fewest-pieces chain spelling ``w`` (with optional first/last block), or None."""
    if not w:
        return None
    pcs = pieces(tau)
    items = pcs.items
    n = len(w)
    # cost[start][k]: fewest pieces covering w[start:] when piece k starts there
    cost = [dict() for _ in range(n + 1)]
    nxt = [dict() for _ in range(n + 1)]
    for start in range(n - 1, -1, -1):
        for k, pc in enumerate(items):
            if not w.startswith(pc.x, start):
                continue
            end = start + len(pc.x)
            if end == n:
                if not pc.q and (last is None or pc.x == last):
                    cost[start][k] = 1
                    nxt[start][k] = None
                continue
            here = cost[end]
            best = None
            for nk in pcs.succ[k]:
                c = here.get(nk)
                if c is not None and (best is None or c < best[0]):
                    best = (c, nk)
            if best is not None:
                cost[start][k] = best[0] + 1
                nxt[start][k] = best[1]
    top = None
    for k, c in cost[0].items():
        pc = items[k]
        if pc.p or (first is not None and pc.x != first):
            continue
        if top is None or c < top[0]:
            top = (c, k)
    if top is None:
        return None
    chain = [top[1]]
    start = 0
    while True:
        k = chain[-1]
        following = nxt[start][k]
        if following is None:
            return chain
        start += len(items[k].x)
        chain.append(following)


def is_lin(w: Word, n: int, tau: TauSystem, *, first: Optional[Word] = None,
           last: Optional[Word] = None) -> LinVerdict:
    """Search for a linear decomposition of ``w`` with at most ``n`` blocks.

    ``first``/``last`` optionally pin the first or last block.  The returned
    certificate has the least possible number of blocks, and that number is
    reported as ``order``.
    """
    if n < 1:
        raise ValueError("order must be a positive integer")
    chain = _least_chain(w, tau, first, last)
    if chain is None or len(chain) > n:
        return LinVerdict(False)
    cert = pieces(tau).certificate(chain)
    return LinVerdict(True, cert, len(chain))


def lin_order(w: Word, tau: TauSystem) -> Optional[int]:
    """Least n with ``w`` in Lin(n), or None when ``w`` is not linearly decomposable."""
    cache = tau._cache.setdefault("order", {})
    if w not in cache:
        chain = _least_chain(w, tau, None, None)
        cache[w] = None if chain is None else len(chain)
    return cache[w]


def lin_enumerate(n: int, tau: TauSystem) -> frozenset:
    """Lin(n): every word with a linear decomposition of at most ``n`` blocks."""
    if n < 1:
        raise ValueError("order must be a positive integer")
    cache = tau._cache.setdefault("lin", {})
    if n in cache:
        return cache[n]
    pcs = pieces(tau)
    items = pcs.items
    found = set()
    layer = {}
    for k in pcs.starts:
        layer.setdefault(k, set()).add(items[k].x)
    for size in range(1, n + 1):
        for k, words in layer.items():
            if not items[k].q:
                found |= words
        if size == n:
            break
        nxt = {}
        for k, words in layer.items():
            for nk in pcs.succ[k]:
                x = items[nk].x
                nxt.setdefault(nk, set()).update(w + x for w in words)
        layer = nxt
    result = frozenset(found)
    cache[n] = result
    return result


def iter_certificates(n: int, tau: TauSystem) -> Iterator[LinearDecomposition]:
    """Every piece-chain certificate with at most ``n`` blocks (canonical witnesses)."""
    pcs = pieces(tau)
    items = pcs.items

    def walk(chain):
        if not items[chain[-1]].q:
            yield pcs.certificate(chain)
        if len(chain) < n:
            for nk in pcs.succ[chain[-1]]:
                yield from walk(chain + [nk])

    for k in pcs.starts:
        yield from walk([k])


# -- surgery ----------------------------------------------------------------


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def _checked(out, tau, what):
    bad = verify(out, tau)
    if bad:
        raise InvariantViolation(f"{what} produced an invalid certificate: " + "; ".join(map(str, bad)))
    return out


def _index(cert, i):
    if not 1 <= i <= cert.order:
        raise IndexError(f"block index {i} outside 1..{cert.order}")


def truncate(cert: LinearDecomposition, i: int, side: Side, tau: TauSystem) -> LinearDecomposition:
    """Cut a certificate at block ``i``.

    ``RIGHT`` keeps blocks 1..i, absorbing ``q_i`` into block i (a
    certificate for ``x_1 .. x_i q_i``); ``LEFT`` keeps blocks i..n,
    absorbing ``p_i`` (a certificate for ``p_i x_i .. x_n``).
    """
    _require_valid(cert, tau)
    _index(cert, i)
    side = Side(side)
    b, p, q = cert.blocks, cert.left_margins, cert.right_margins
    u, v = cert.right_witnesses, cert.left_witnesses
    if side is Side.RIGHT:
        out = LinearDecomposition(b[:i - 1] + (b[i - 1] + q[i - 1],), p[:i], q[:i - 1] + ("",),
                                  u[:i - 1], v[:i - 1])
    else:
        out = LinearDecomposition((p[i - 1] + b[i - 1],) + b[i:], ("",) + p[i:], q[i - 1:],
                                  u[i - 1:], v[i - 1:])
    return _checked(out, tau, "truncate")


def substitute(cert: LinearDecomposition, i: int, new_block: Word, tau: TauSystem,
               budget: int = DEFAULT_EQ_BUDGET) -> LinearDecomposition:
    """Replace block ``i`` by an equal word, keeping margins and witnesses."""
    _require_valid(cert, tau)
    _index(cert, i)
    if not new_block:
        raise PreconditionError("replacement block must be non-empty")
    eq = equal_mod(cert.blocks[i - 1], new_block, tau.origin, budget)
    if eq is not Tri.YES:
        raise PreconditionError(
            f"cannot confirm {cert.blocks[i - 1]!r} = {new_block!r} modulo the system ({eq.value})")
    blocks = list(cert.blocks)
    blocks[i - 1] = new_block
    out = LinearDecomposition(blocks, cert.left_margins, cert.right_margins,
                              cert.right_witnesses, cert.left_witnesses)
    return _checked(out, tau, "substitute")


def sign(t: int) -> int:
    return 0 if t == 0 else 1


def splice(cx: LinearDecomposition, cy: LinearDecomposition, e: Word, x_head: Word, y_tail: Word,
           tau: TauSystem) -> LinearDecomposition:
    """Glue two certificates that overlap in ``e``.

    Requires ``x_n == x_head + e`` (last block of ``cx``) and
    ``y_1 == e + y_tail`` (first block of ``cy``).  The result decomposes
    ``x_1 .. x_{n-1} x_head e y_tail y_2 .. y_m`` with
    ``n + m + sign(|x_head y_tail|) - 1`` blocks.
    """
    _require_valid(cx, tau)
    _require_valid(cy, tau)
    n, m = cx.order, cy.order
    xn, y1 = cx.blocks[-1], cy.blocks[0]
    if xn != x_head + e or y1 != e + y_tail:
        raise PreconditionError(
            f"overlap mismatch: need {xn!r} == {x_head!r}+{e!r} and {y1!r} == {e!r}+{y_tail!r}")
    px, qx, ux, vx = cx.left_margins, cx.right_margins, cx.right_witnesses, cx.left_witnesses
    py, qy, uy, vy = cy.left_margins, cy.right_margins, cy.right_witnesses, cy.left_witnesses
    pn = px[-1]
    if x_head:
        out = LinearDecomposition(
            cx.blocks[:-1] + (x_head,) + cy.blocks,
            px + py,
            qx[:-1] + (e,) + qy,
            ux + (y_tail + qy[0],) + uy,
            vx + (pn + xn,) + vy,
        )
    elif y_tail:
        out = LinearDecomposition(
            cx.blocks + (y_tail,) + cy.blocks[1:],
            px + (e,) + py[1:],
            qx + qy,
            ux + (y1 + qy[0],) + uy,
            vx + (pn + x_head,) + vy,
        )
    elif m == 1:
        out = cx
    else:
        # x_n == e == y_1; block n+1 of the result is y_2
        if not py[1]:
            vn = pn + e
        else:
            vn = pn + vy[0]
        out = LinearDecomposition(
            cx.blocks + cy.blocks[1:],
            px + py[1:],
            qx + qy[1:],
            ux + (cy.framed(2),) + uy[1:],
            vx + (vn,) + vy[1:],
        )
    expected = n + m + sign(len(x_head + y_tail)) - 1
    if out.order != expected:
        raise InvariantViolation(f"splice produced {out.order} blocks, expected {expected}")
    return _checked(out, tau, "splice")


def flank_witnesses(cert: LinearDecomposition, i: int, tau: TauSystem,
                    budget: int = DEFAULT_EQ_BUDGET) -> tuple[Word, Word]:
    """Words f, g with ``x_1..x_{i-1} = f p_i`` and ``x_{i+1}..x_n = q_i g`` modulo the system.

    Both equalities are confirmed by budgeted search before returning.
    """
    _require_valid(cert, tau)
    _index(cert, i)
    n = cert.order
    b = cert.blocks

    f = ""
    for j in range(2, i + 1):
        # f currently satisfies x_1..x_{j-2} = f p_{j-1}
        f = "".join(b[:j - 1]) if cert.q(j - 1) else f + cert.v(j - 1)
    g = ""
    for j in range(n - 1, i - 1, -1):
        g = "".join(b[j:]) if cert.p(j + 1) else cert.u(j + 1) + g

    for lhs, rhs in (("".join(b[:i - 1]), f + cert.p(i)), ("".join(b[i:]), cert.q(i) + g)):
        eq = equal_mod(lhs, rhs, tau.origin, budget)
        if eq is Tri.INDETERMINATE:
            raise IndeterminateError(f"budget exhausted confirming {lhs!r} = {rhs!r}")
        if eq is Tri.NO:
            raise InvariantViolation(f"flank witness failed: {lhs!r} != {rhs!r}")
    return f, g
