"""Finite group presentations: parsing, free reduction and the transformations
used before building a model complex (padding, stabilization, binary
compression, abelianization).

Words are stored syllable-wise, so exponents such as ``a^(2^64)`` never get
expanded into letters.

>>> P = parse("<a, b ; a b a^-1 b^-1>")
>>> unary_size(P)
6
>>> print(stabilize(P))
<a, b, h#1 ; a b a^-1 b^-1 h#1, h#1>
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Syllable",
    "Word",
    "Presentation",
    "PresentationSyntaxError",
    "parse",
    "format_presentation",
    "free_reduce",
    "pad_relations",
    "stabilize",
    "unary_size",
    "binary_size",
    "binary_compress",
    "abelianized_matrix",
    "matrix_to_presentation",
    "presentation_from_json",
    "presentation_to_json",
    "max_exponents",
]


class PresentationSyntaxError(ValueError):
    """Malformed presentation text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass(frozen=True)
class Syllable:
    generator: int
    exponent: int

    def __post_init__(self):
        if self.exponent == 0:
            raise ValueError("syllable exponent must be nonzero")

    def inverse(self) -> "Syllable":
        return Syllable(self.generator, -self.exponent)


@dataclass(frozen=True)
class Word:
    """A word in the free group, as a tuple of syllables.

    The constructor does not reduce; use :func:`free_reduce` (or
    :meth:`Word.of`) to get the normal form.
    """

    syllables: tuple[Syllable, ...] = ()

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "Word":
        """Freely reduced word from ``(generator, exponent)`` pairs."""
        return free_reduce(cls(tuple(Syllable(g, e) for g, e in pairs)))

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return free_reduce(Word(self.syllables + other.syllables))

    def inverse(self) -> "Word":
        return Word(tuple(s.inverse() for s in reversed(self.syllables)))

    @property
    def is_empty(self) -> bool:
        return not self.syllables

    @property
    def letter_count(self) -> int:
        """Word length counted in letters, i.e. the sum of |exponent|."""
        return sum(abs(s.exponent) for s in self.syllables)

    def exponent_sum(self, generator: int) -> int:
        return sum(s.exponent for s in self.syllables if s.generator == generator)

    def generators(self) -> set[int]:
        return {s.generator for s in self.syllables}

    def pairs(self) -> list[tuple[int, int]]:
        return [(s.generator, s.exponent) for s in self.syllables]


def free_reduce(w: Word) -> Word:
    """Free-group normal form: merge equal neighbours, drop zero exponents.

    >>> free_reduce(Word.of()).is_empty
    True
    >>> free_reduce(Word((Syllable(0, 2), Syllable(1, -1), Syllable(1, 1), Syllable(0, -1)))).pairs()
    [(0, 1)]
    """
    stack: list[list[int]] = []
    for s in w.syllables:
        if stack and stack[-1][0] == s.generator:
            stack[-1][1] += s.exponent
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([s.generator, s.exponent])
    return Word(tuple(Syllable(g, e) for g, e in stack))


@dataclass(frozen=True)
class Presentation:
    """``<g_1, ..., g_n ; r_1, ..., r_m>``; relators are kept freely reduced."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...] = field(default=())

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generator names in {gens}")
        rels = tuple(free_reduce(r) for r in self.relators)
        for r in rels:
            for s in r.syllables:
                if not 0 <= s.generator < len(gens):
                    raise ValueError(f"generator index {s.generator} out of range")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def m(self) -> int:
        return len(self.relators)

    def index(self, name: str) -> int:
        return self.generators.index(name)

    def format_word(self, w: Word) -> str:
        if w.is_empty:
            return "1"
        parts = []
        for s in w.syllables:
            name = self.generators[s.generator]
            parts.append(name if s.exponent == 1 else f"{name}^{s.exponent}")
        return " ".join(parts)

    def __str__(self) -> str:
        return format_presentation(self)


def format_presentation(P: Presentation) -> str:
    """Canonical text form, accepted back by :func:`parse`."""
    gens = ", ".join(P.generators)
    rels = ", ".join(P.format_word(r) for r in P.relators)
    return f"<{gens} ; {rels}>" if rels else f"<{gens} ; >"


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_#']*)
  | (?P<int>[+-]?\d+)
  | (?P<punct>[<>;,^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        mo = _TOKEN.match(text, pos)
        if mo is None:
            raise PresentationSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = mo.lastgroup
        if kind != "ws":
            tokens.append((kind, mo.group(), pos))
        pos = mo.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str, value: str | None = None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise PresentationSyntaxError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def at(self, kind: str, value: str | None = None) -> bool:
        tok = self.tokens[self.i]
        return tok[0] == kind and (value is None or tok[1] == value)

    def presentation(self) -> Presentation:
        self.take("punct", "<")
        gens: list[str] = []
        if not self.at("punct", ";"):
            while True:
                _, name, pos = self.take("ident")
                if name in gens:
                    raise PresentationSyntaxError(f"duplicate generator {name!r}", pos)
                gens.append(name)
                if not self.at("punct", ","):
                    break
                self.take("punct", ",")
        self.take("punct", ";")
        index = {g: i for i, g in enumerate(gens)}
        rels: list[Word] = []
        if not self.at("punct", ">"):
            while True:
                rels.append(self.word(index))
                if not self.at("punct", ","):
                    break
                self.take("punct", ",")
        self.take("punct", ">")
        self.take("end")
        return Presentation(tuple(gens), tuple(rels))

    def word(self, index: dict[str, int]) -> Word:
        if self.at("int", "1"):
            self.take("int")
            return Word()
        syllables = []
        while self.at("ident"):
            _, name, pos = self.take("ident")
            if name not in index:
                raise PresentationSyntaxError(f"unknown generator {name!r}", pos)
            exp = 1
            if self.at("punct", "^"):
                self.take("punct", "^")
                exp, epos = self.exponent()
                if exp == 0:
                    raise PresentationSyntaxError("zero exponent", epos)
            syllables.append(Syllable(index[name], exp))
        if not syllables:
            tok = self.peek()
            raise PresentationSyntaxError(f"expected a word, found {tok[1] or 'end of input'!r}", tok[2])
        return free_reduce(Word(tuple(syllables)))

    def exponent(self) -> tuple[int, int]:
        if self.at("punct", "("):
            self.take("punct", "(")
            _, val, pos = self.take("int")
            self.take("punct", ")")
        else:
            _, val, pos = self.take("int")
        return int(val), pos


def parse(text: str) -> Presentation:
    """Parse ``<gens ; relators>``.

    Words are space-separated ``x`` or ``x^k`` (``k`` a nonzero integer,
    optionally negative or parenthesized); ``1`` is the empty word.

    >>> parse("<a ; a a^-1>").relators[0].is_empty
    True
    """
    return _Parser(text).presentation()


# -- JSON --------------------------------------------------------------------

def presentation_to_json(P: Presentation) -> dict:
    return {
        "generators": list(P.generators),
        "relators": [[[P.generators[s.generator], s.exponent] for s in r] for r in P.relators],
    }


def presentation_from_json(data: dict | str) -> Presentation:
    if isinstance(data, str):
        data = json.loads(data)
    gens = tuple(data["generators"])
    index = {g: i for i, g in enumerate(gens)}
    rels = []
    for r in data.get("relators", []):
        syl = []
        for name, exp in r:
            if name not in index:
                raise ValueError(f"unknown generator {name!r} in relator")
            syl.append(Syllable(index[name], int(exp)))
        rels.append(Word(tuple(syl)))
    return Presentation(gens, tuple(rels))


# -- sizes -------------------------------------------------------------------

def unary_size(P: Presentation) -> int:
    """s(P) = n + total letter count of the relators."""
    return P.n + sum(r.letter_count for r in P.relators)


def max_exponents(P: Presentation) -> dict[int, int]:
    """Largest |exponent| of each generator over all relator syllables."""
    m: dict[int, int] = {}
    for r in P.relators:
        for s in r.syllables:
            m[s.generator] = max(m.get(s.generator, 0), abs(s.exponent))
    return m


def _ceil_log2(k: int) -> int:
    return (k - 1).bit_length() if k > 0 else 0


def binary_size(P: Presentation) -> int:
    """b(P) = n + sum over relator syllables of max(1, ceil(log2 m_g)).

    >>> binary_size(parse("<a, b ; a^8 b^3>"))
    7
    """
    m = max_exponents(P)
    total = P.n
    for r in P.relators:
        total += sum(max(1, _ceil_log2(m[s.generator])) for s in r.syllables)
    return total


# -- transformations -----------------------------------------------------------

def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def pad_relations(P: Presentation) -> Presentation:
    """Append empty relators until there are at least as many relators as generators."""
    if P.m >= P.n:
        return P
    return Presentation(P.generators, P.relators + (Word(),) * (P.n - P.m))


def stabilize(P: Presentation) -> Presentation:
    """``<g ; r_j>`` -> ``<g, h_1..h_m ; r_1 h_1, ..., r_m h_m, h_1, ..., h_m>``.

    Every relator of the result contains a letter of exponent 1 occurring
    nowhere else in it; the presented group is unchanged.
    """
    taken = set(P.generators)
    hs = tuple(_fresh(f"h#{j + 1}", taken) for j in range(P.m))
    n = P.n
    rels = [r * Word((Syllable(n + j, 1),)) for j, r in enumerate(P.relators)]
    rels += [Word((Syllable(n + j, 1),)) for j in range(P.m)]
    return Presentation(P.generators + hs, tuple(rels))


def _binary_expansion(e: int, levels: int) -> list[tuple[int, int]]:
    # (level, multiplicity) pairs, level 1 = the generator itself
    if e == 1 << levels:
        return [(levels, 2)]
    return [(i + 1, 1) for i in reversed(range(levels)) if e >> i & 1]


def binary_compress(P: Presentation) -> Presentation:
    """Replace large powers by products of repeated-squaring generators.

    For a generator ``g`` with maximal exponent ``m_g >= 2`` this introduces
    ``g#k = (g#(k-1))^2`` for ``k = 2 .. ceil(log2 m_g)`` (with ``g#1 = g``)
    and rewrites every ``g^e`` along the binary expansion of ``|e|``.

    >>> print(binary_compress(parse("<a ; a^8>")))
    <a, a#2, a#3 ; a#2^-1 a^2, a#3^-1 a#2^2, a#3^2>
    """
    m = max_exponents(P)
    taken = set(P.generators)
    gens = list(P.generators)
    level_ids: dict[int, list[int]] = {}
    doubling: list[Word] = []
    for g in range(P.n):
        levels = _ceil_log2(m.get(g, 0))
        ids = [g]
        for k in range(2, levels + 1):
            gens.append(_fresh(f"{P.generators[g]}#{k}", taken))
            ids.append(len(gens) - 1)
            doubling.append(Word.of((ids[-1], -1), (ids[-2], 2)))
        level_ids[g] = ids

    rewritten = []
    for r in P.relators:
        syl: list[Syllable] = []
        for s in r.syllables:
            ids = level_ids[s.generator]
            levels = len(ids)
            e = abs(s.exponent)
            if levels < 2 and e <= 2:
                syl.append(s)
                continue
            part = [Syllable(ids[lvl - 1], mult) for lvl, mult in _binary_expansion(e, levels)]
            if s.exponent < 0:
                part = [x.inverse() for x in reversed(part)]
            syl.extend(part)
        rewritten.append(free_reduce(Word(tuple(syl))))
    return Presentation(tuple(gens), tuple(doubling) + tuple(rewritten))


# -- abelianization --------------------------------------------------------------

def abelianized_matrix(P: Presentation) -> np.ndarray:
    """m x n integer matrix of exponent sums (row j: relator j, column i: generator i)."""
    M = np.zeros((P.m, P.n), dtype=object)
    for j, r in enumerate(P.relators):
        for s in r.syllables:
            M[j, s.generator] += s.exponent
    return M


def _default_names(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple("abcdefghijklmnopqrstuvwxyz"[:n])
    return tuple(f"x{i + 1}" for i in range(n))


def matrix_to_presentation(M: Sequence[Sequence[int]] | np.ndarray,
                           names: Iterable[str] | None = None) -> Presentation:
    """Row j becomes the relator ``g_1^M[j,1] ... g_n^M[j,n]`` (no commutators)."""
    A = np.asarray(M, dtype=object)
    if A.ndim != 2:
        raise ValueError("expected a 2-dimensional integer matrix")
    rows, cols = A.shape
    gens = tuple(names) if names is not None else _default_names(cols)
    rels = []
    for j in range(rows):
        rels.append(Word(tuple(Syllable(i, int(A[j, i])) for i in range(cols) if A[j, i] != 0)))
    return Presentation(gens, tuple(rels))
