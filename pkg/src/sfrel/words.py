"""Words over finite alphabets, square detection and occurrences.

A word is stored as a Python ``str`` holding one character per letter.
Single-character tokens stand for themselves; multi-character tokens are
mapped by their :class:`Alphabet` onto private-use code points, so every
algorithm in the package can rely on fast ``str`` slicing and searching.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import AlphabetError, CarrierMismatchError

EMPTY = ""
# Shown for the empty word in human-readable output; parsed back as empty
# unless it is itself a declared letter.
EPSILON = "ε"

_PRIVATE_BASE = 0xE000
_RESERVED = set("[]#=|:") | {EPSILON}

Word = str
Square = tuple[str, str, str]


@dataclass(frozen=True)
class Alphabet:
    """An ordered, duplicate-free list of letter tokens.

    The declaration order is the letter order used by :meth:`key` (shortlex).
    """

    letters: tuple[str, ...]
    _codes: dict = field(init=False, repr=False, compare=False, hash=False)
    _tokens: dict = field(init=False, repr=False, compare=False, hash=False)
    _ranks: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise AlphabetError("alphabet must be non-empty")
        if len(set(letters)) != len(letters):
            raise AlphabetError(f"duplicate letters in alphabet {letters!r}")
        codes = {}
        for i, token in enumerate(letters):
            if not isinstance(token, str) or not token or not token.isprintable():
                raise AlphabetError(f"letter {token!r} is not a printable token")
            if any(ch.isspace() for ch in token) or set(token) & _RESERVED:
                raise AlphabetError(f"letter {token!r} contains a reserved character")
            codes[token] = token if len(token) == 1 else chr(_PRIVATE_BASE + i)
        if len(set(codes.values())) != len(codes):
            raise AlphabetError("letter encodings collide")
        object.__setattr__(self, "_codes", codes)
        object.__setattr__(self, "_tokens", {c: t for t, c in codes.items()})
        object.__setattr__(self, "_ranks", {ord(c): chr(i) for i, c in enumerate(codes.values())})

    @classmethod
    def of(cls, letters: str | Iterable[str]) -> "Alphabet":
        """Build an alphabet from a string of single characters or an iterable of tokens."""
        return cls(tuple(letters))

    def __len__(self):
        return len(self.letters)

    def __contains__(self, token):
        return token in self._codes

    @property
    def codes(self) -> tuple[str, ...]:
        """The one-character code of every letter, in declaration order."""
        return tuple(self._codes.values())

    def encode(self, tokens: Iterable[str]) -> Word:
        out = []
        for t in tokens:
            try:
                out.append(self._codes[t])
            except KeyError:
                raise AlphabetError(f"unknown symbol {t!r}") from None
        return "".join(out)

    def tokens(self, word: Word) -> list[str]:
        self.check(word)
        return [self._tokens[c] for c in word]

    def contains(self, word: Word) -> bool:
        return all(c in self._tokens for c in word)

    def check(self, word: Word) -> Word:
        for c in word:
            if c not in self._tokens:
                raise AlphabetError(f"symbol {c!r} is not in alphabet {self.letters!r}")
        return word

    def parse(self, text: str) -> Word:
        """Parse the textual word syntax.

        Declared single-character symbols are juxtaposed; multi-character
        tokens go inside ``[...]`` separated by spaces.  Whitespace outside
        brackets is ignored.  ``ε`` and ``[]`` denote the empty word.
        """
        text = text.strip()
        if text == EPSILON and EPSILON not in self._codes:
            return EMPTY
        out = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch == "[":
                close = text.find("]", i + 1)
                if close < 0:
                    raise AlphabetError(f"unclosed '[' in {text!r}")
                out.append(self.encode(text[i + 1:close].split()))
                i = close + 1
            else:
                out.append(self.encode([ch]))
                i += 1
        return "".join(out)

    def format(self, word: Word) -> str:
        """Inverse of :meth:`parse` (the empty word formats as ``""``)."""
        parts = []
        group = []
        for token in self.tokens(word):
            if len(token) == 1:
                if group:
                    parts.append("[" + " ".join(group) + "]")
                    group = []
                parts.append(token)
            else:
                group.append(token)
        if group:
            parts.append("[" + " ".join(group) + "]")
        return "".join(parts)

    def show(self, word: Word) -> str:
        return self.format(word) if word else EPSILON

    def key(self, word: Word) -> tuple[int, str]:
        """Shortlex sort key: length first, then declaration order of letters."""
        return len(word), word.translate(self._ranks)

    def sorted(self, words: Iterable[Word]) -> list[Word]:
        return sorted(words, key=self.key)


def concat(x: Word, y: Word, alphabet: Optional[Alphabet] = None) -> Word:
    """Concatenate two words, checking both against ``alphabet`` when given."""
    if alphabet is not None:
        alphabet.check(x)
        alphabet.check(y)
    return x + y


# Below this length the plain loop beats numpy's per-call overhead.
_NUMPY_THRESHOLD = 160


def find_square(w: Word) -> Optional[Square]:
    """Return ``(u, s, v)`` with ``w == u + s + s + v`` and ``s`` non-empty.

    The witness has the shortest possible ``u`` and, among those, the
    shortest ``s``.  Returns ``None`` when ``w`` is square-free.
    """
    if len(w) >= _NUMPY_THRESHOLD:
        hit = _square_scan_numpy(w)
    else:
        hit = _square_scan(w)
    if hit is None:
        return None
    start, half = hit
    return w[:start], w[start:start + half], w[start + 2 * half:]


def is_square_free(w: Word) -> bool:
    return find_square(w) is None


def _square_scan(w):
    # For each half-length, a run of `half` consecutive positions j with
    # w[j] == w[j + half] marks a square starting at j - half + 1.
    n = len(w)
    best = None
    for half in range(1, n // 2 + 1):
        limit = n - half
        if best is not None:
            # only squares starting strictly before the best one can win
            limit = min(limit, best[0] + half - 1)
        run = 0
        for j in range(limit):
            if w[j] == w[j + half]:
                run += 1
                if run == half:
                    best = (j - half + 1, half)
                    break
            else:
                run = 0
        if best is not None and best[0] == 0:
            break
    return best


def _square_scan_numpy(w):
    arr = np.fromiter((ord(c) for c in w), dtype=np.int32, count=len(w))
    n = len(arr)
    best = None
    for half in range(1, n // 2 + 1):
        eq = (arr[:-half] == arr[half:]).astype(np.int32)
        if not eq.any():
            continue
        runs = np.concatenate(([0], np.cumsum(eq)))
        window = runs[half:] - runs[:-half]
        hits = np.flatnonzero(window == half)
        if hits.size and (best is None or hits[0] < best[0]):
            best = (int(hits[0]), half)
            if best[0] == 0:
                break
    return best


@dataclass(frozen=True)
class Occurrence:
    """An occurrence ``prefix * base * suffix`` of ``base`` in ``prefix + base + suffix``."""

    prefix: Word
    base: Word
    suffix: Word

    @classmethod
    def at(cls, carrier: Word, start: int, end: int) -> "Occurrence":
        if not 0 <= start <= end <= len(carrier):
            raise ValueError(f"bad span [{start}, {end}) for a word of length {len(carrier)}")
        return cls(carrier[:start], carrier[start:end], carrier[end:])

    @property
    def carrier(self) -> Word:
        return self.prefix + self.base + self.suffix

    @property
    def start(self) -> int:
        return len(self.prefix)

    @property
    def end(self) -> int:
        return len(self.prefix) + len(self.base)

    def sort_key(self):
        return len(self.prefix), len(self.base)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return f"{self.prefix}*{self.base}*{self.suffix}"


def occurrences(w: Word, base: Word) -> Iterator[Occurrence]:
    """Every occurrence of ``base`` in ``w``, left to right."""
    if not base:
        for i in range(len(w) + 1):
            yield Occurrence.at(w, i, i)
        return
    i = w.find(base)
    while i >= 0:
        yield Occurrence.at(w, i, i + len(base))
        i = w.find(base, i + 1)


def _same_carrier(phi, psi):
    if phi.carrier != psi.carrier:
        raise CarrierMismatchError(f"occurrences {phi} and {psi} have different carriers")


def occ_contains(outer: Occurrence, inner: Occurrence) -> bool:
    _same_carrier(outer, inner)
    return len(outer.prefix) <= len(inner.prefix) and len(outer.suffix) <= len(inner.suffix)


def occ_intersection(phi: Occurrence, psi: Occurrence) -> Optional[Occurrence]:
    """The longest non-empty occurrence contained in both, or ``None``."""
    _same_carrier(phi, psi)
    start, end = max(phi.start, psi.start), min(phi.end, psi.end)
    if start >= end:
        return None
    return Occurrence.at(phi.carrier, start, end)


def occ_intersect(phi: Occurrence, psi: Occurrence) -> bool:
    return occ_intersection(phi, psi) is not None


def occ_union(phi: Occurrence, psi: Occurrence) -> Occurrence:
    """The shortest occurrence containing both."""
    _same_carrier(phi, psi)
    return Occurrence.at(phi.carrier, min(phi.start, psi.start), max(phi.end, psi.end))
