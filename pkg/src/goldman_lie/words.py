"""Conjugacy classes in a finite-rank free group.

Letters are nonzero signed integers: ``+(i+1)`` is the i-th generator and
``-(i+1)`` its inverse, so with rank 2 the alphabet is ``a=1, A=-1, b=2,
B=-2``.  The fixed total order on letters is ``a < A < b < B < c < ...``.

A :class:`CyclicWord` is a cyclically reduced word stored in its least
rotation; it is the key used for free homotopy classes of directed closed
curves everywhere else in the package.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, RankMismatchError, WordParseError

Word = tuple[int, ...]

_TOKEN = re.compile(r"([A-Za-z])(?:\^(-?\d+))?")


def letter_key(x: int) -> int:
    """Position of a letter in the order a < A < b < B < ..."""
    return 2 * (abs(x) - 1) + (x < 0)


def word_key(w: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Shortlex key under the fixed letter order."""
    return len(w), tuple(letter_key(x) for x in w)


def free_reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse_word(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def multiply(*words: Sequence[int]) -> Word:
    """Product of group elements given as words, freely reduced."""
    out: list[int] = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def word_power(word: Sequence[int], k: int) -> Word:
    if k < 0:
        return multiply(*([inverse_word(word)] * -k))
    return multiply(*([word] * k))


def _cyclic_core(word: Word) -> Word:
    i, j = 0, len(word) - 1
    while i < j and word[i] == -word[j]:
        i += 1
        j -= 1
    return word[i:j + 1]


def least_rotation(word: Sequence[int]) -> Word:
    n = len(word)
    if n == 0:
        return ()
    keys = [letter_key(x) for x in word]
    best = 0
    for r in range(1, n):
        if keys[r:] + keys[:r] < keys[best:] + keys[:best]:
            best = r
    return tuple(word[best:]) + tuple(word[:best])


def _check_rank(word: Iterable[int], rank: int) -> None:
    for x in word:
        if x == 0 or abs(x) > rank:
            raise RankMismatchError(f"letter {x!r} is outside rank {rank}")


@total_ordering
@dataclass(frozen=True)
class CyclicWord:
    """Cyclically reduced word in canonical (least) rotation.

    Build instances with :func:`cyclically_reduce`; the constructor only
    validates.  The empty word is the trivial class **1**.
    """

    letters: Word
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise DomainError(f"rank must be positive, got {self.rank}")
        _check_rank(self.letters, self.rank)
        w = self.letters
        n = len(w)
        if any(w[i] == -w[(i + 1) % n] for i in range(n)) and n > 0:
            raise DomainError(f"{format_word(w)} is not cyclically reduced")
        if least_rotation(w) != w:
            raise DomainError(f"{format_word(w)} is not in canonical rotation")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self.letters)

    def __repr__(self) -> str:
        return f"CyclicWord({format_word(self.letters)!r}, rank={self.rank})"

    def __lt__(self, other: "CyclicWord") -> bool:
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return self.sort_key < other.sort_key

    @property
    def sort_key(self):
        return word_key(self.letters)

    @property
    def is_trivial(self) -> bool:
        return not self.letters


def trivial(rank: int) -> CyclicWord:
    return CyclicWord((), rank)


def cyclically_reduce(word: Iterable[int], rank: int) -> CyclicWord:
    """Free reduction, cyclic reduction and canonical rotation."""
    word = tuple(word)
    _check_rank(word, rank)
    core = _cyclic_core(free_reduce(word))
    return CyclicWord(least_rotation(core), rank)


def _same_rank(*words: CyclicWord) -> int:
    ranks = {w.rank for w in words}
    if len(ranks) != 1:
        raise RankMismatchError(f"mixed ranks {sorted(ranks)}")
    return ranks.pop()


def iota(w: CyclicWord) -> CyclicWord:
    """Orientation reversal: the class of the inverse word."""
    return CyclicWord(least_rotation(inverse_word(w.letters)), w.rank)


def power(w: CyclicWord, m: int) -> CyclicWord:
    """Class of ``w`` repeated ``m`` times; ``m = 0`` gives the trivial class
    and negative ``m`` reverses orientation."""
    if m < 0:
        return power(iota(w), -m)
    return CyclicWord(least_rotation(w.letters * m), w.rank)


def root(w: CyclicWord) -> tuple[CyclicWord, int]:
    """Primitive root and exponent, ``w = root ** exponent``."""
    n = len(w)
    if n == 0:
        return w, 1
    for p in range(1, n + 1):
        if n % p == 0 and w.letters == w.letters[:p] * (n // p):
            return CyclicWord(least_rotation(w.letters[:p]), w.rank), n // p
    raise AssertionError("unreachable")


def is_reversible(w: CyclicWord) -> bool:
    """True iff ``w`` is conjugate to its inverse in the free group."""
    return iota(w) == w


def classes_equal_tilde(v: CyclicWord, w: CyclicWord) -> bool:
    _same_rank(v, w)
    return v == w or v == iota(w)


class UnderRelation(str, enum.Enum):
    EQUAL = "equal"
    NEGATED = "negated"
    DISTINCT = "distinct"


def classes_equal_under(v: CyclicWord, w: CyclicWord) -> UnderRelation:
    """Compare ``v`` and ``w`` in the sign-twisted quotient where a class is
    identified with minus its reverse."""
    _same_rank(v, w)
    if v == w:
        return UnderRelation.EQUAL
    if v == iota(w):
        return UnderRelation.NEGATED
    return UnderRelation.DISTINCT


def exponent_sums(w: CyclicWord) -> tuple[int, ...]:
    sums = [0] * w.rank
    for x in w.letters:
        sums[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(sums)


def are_commensurable(v: CyclicWord, w: CyclicWord) -> bool:
    """True when nontrivial ``v`` and ``w`` are powers of one class up to
    orientation, i.e. their geodesics coincide as sets."""
    if v.is_trivial or w.is_trivial:
        return False
    rv, rw = root(v)[0], root(w)[0]
    return rv == rw or rv == iota(rw)


@total_ordering
@dataclass(frozen=True)
class ClassTilde:
    """Undirected class: the ι-orbit ``{w, ι w}``, keyed by its least member."""

    representative: CyclicWord

    def __post_init__(self):
        r = self.representative
        if min(r, iota(r)) != r:
            raise DomainError(f"{r} is not the least member of its ι-orbit")

    @classmethod
    def of(cls, w: CyclicWord) -> "ClassTilde":
        return cls(min(w, iota(w)))

    def __lt__(self, other):
        if not isinstance(other, ClassTilde):
            return NotImplemented
        return self.representative < other.representative

    def __str__(self):
        return format_word(self.representative.letters)


@total_ordering
@dataclass(frozen=True)
class ClassUnder:
    """Sign-twisted class: ``w`` is identified with ``-ι w``.

    ``sign`` records which member of the orbit was given; the basis element
    itself is the least member with sign +1.  The trivial class is zero in
    this quotient and cannot be represented.
    """

    representative: CyclicWord
    sign: int = 1

    def __post_init__(self):
        r = self.representative
        if r.is_trivial:
            raise DomainError("the trivial class is zero in the sign-twisted quotient")
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be ±1, got {self.sign}")
        if min(r, iota(r)) != r:
            raise DomainError(f"{r} is not the least member of its ι-orbit")

    @classmethod
    def of(cls, w: CyclicWord) -> "ClassUnder":
        iw = iota(w)
        return cls(w, 1) if w <= iw else cls(iw, -1)

    @property
    def basis(self) -> "ClassUnder":
        return ClassUnder(self.representative, 1)

    def __lt__(self, other):
        if not isinstance(other, ClassUnder):
            return NotImplemented
        return self.representative < other.representative

    def __str__(self):
        s = format_word(self.representative.letters)
        return s if self.sign == 1 else f"-({s})"


# ---------------------------------------------------------------- strings

def format_word(word: Sequence[int]) -> str:
    """``(1, 2, -1, -2)`` -> ``'a b A B'``; the empty word prints as ``'1'``."""
    if not word:
        return "1"
    out = []
    for x in word:
        c = chr(ord("a") + abs(x) - 1)
        out.append(c if x > 0 else c.upper())
    return " ".join(out)


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse a word string into a (not necessarily reduced) letter tuple.

    Grammar: whitespace-separated tokens; each token is a run of units
    ``x`` or ``x^k`` where ``x`` is a letter (lowercase = generator,
    uppercase = inverse) and ``k`` a nonzero integer.  ``1`` alone is the
    identity.  ``"a b A B"``, ``"abAB"`` and ``"a^3 b^-1"`` are all valid.
    """
    letters: list[int] = []
    for token in text.split():
        if token == "1":
            continue
        pos = 0
        while pos < len(token):
            m = _TOKEN.match(token, pos)
            if m is None:
                raise WordParseError(f"malformed word token {token!r}", token)
            ch, exp = m.group(1), m.group(2)
            gen = ord(ch.lower()) - ord("a") + 1
            if rank is not None and gen > rank:
                raise WordParseError(
                    f"letter {ch!r} in token {token!r} exceeds rank {rank}", token)
            k = int(exp) if exp is not None else 1
            if k == 0:
                raise WordParseError(f"zero exponent in token {token!r}", token)
            x = gen if ch.islower() else -gen
            letters.extend([x if k > 0 else -x] * abs(k))
            pos = m.end()
    return tuple(letters)


def parse_class(text: str, rank: int) -> CyclicWord:
    return cyclically_reduce(parse_word(text, rank), rank)


# ------------------------------------------------------------ enumeration

def reduced_words(rank: int, max_length: int, min_length: int = 0) -> Iterator[Word]:
    """All freely reduced words, by increasing length then letter order."""
    alphabet = sorted([g for i in range(1, rank + 1) for g in (i, -i)], key=letter_key)
    level: list[Word] = [()]
    for n in range(max_length + 1):
        if n >= min_length:
            yield from level
        level = [w + (x,) for w in level for x in alphabet if not (w and w[-1] == -x)]


def cyclic_classes(rank: int, max_length: int, include_trivial: bool = False) -> list[CyclicWord]:
    """Distinct directed classes with canonical length at most ``max_length``."""
    seen: set[CyclicWord] = set()
    for w in reduced_words(rank, max_length):
        c = cyclically_reduce(w, rank)
        if c.is_trivial and not include_trivial:
            continue
        seen.add(c)
    return sorted(seen)
