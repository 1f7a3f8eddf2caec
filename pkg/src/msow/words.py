"""Finitely represented omega-words, the flat padding and its projection."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .omegaset import (
    FALSE,
    TRUE,
    UNKNOWN,
    GapTag,
    Generator,
    OmegaSet,
    Truth,
    Verdict3,
    canonical,
    parse_set,
)

FLAT = "flat"
FLAT_CHAR = "♭"


class WordError(ValueError):
    pass


def letters_of_text(text: str) -> tuple[str, ...]:
    return tuple(FLAT if ch in (FLAT_CHAR, "#") else ch for ch in text)


def letters_to_text(letters) -> str:
    return "".join(FLAT_CHAR if a == FLAT else a for a in letters)


# ---------------------------------------------------------------------------
# gap functions used by padded and block words


@dataclass(frozen=True)
class GapFunction:
    """n -> number of repetitions; a closed registry."""

    name: str
    k: int = 0

    def __call__(self, n: int) -> int:
        if self.name == "constant":
            return self.k
        if self.name == "identity":
            return n
        if self.name == "pow2":
            return 1 << n
        raise WordError(f"unknown gap function {self.name!r}")

    @property
    def unbounded(self) -> bool:
        return self.name != "constant"

    def text(self) -> str:
        return f"constant;k={self.k}" if self.name == "constant" else self.name


GAP_FUNCTIONS = ("constant", "identity", "pow2")


def gap_function(name: str, k: int = 0) -> GapFunction:
    if name not in GAP_FUNCTIONS:
        raise WordError(f"unknown gap function {name!r}")
    return GapFunction(name, int(k) if name == "constant" else 0)


# ---------------------------------------------------------------------------
# words


class Word:
    alphabet: tuple[str, ...]

    def prefix(self, n: int) -> tuple[str, ...]:
        raise NotImplementedError

    def letter_set(self, letter: str) -> OmegaSet:
        raise NotImplementedError

    @property
    def is_lasso(self) -> bool:
        return False

    def lasso_shape(self) -> tuple[int, int]:
        raise WordError("not a lasso word")


@dataclass(frozen=True)
class LassoWord(Word):
    stem: tuple[str, ...]
    loop: tuple[str, ...]
    alphabet: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.loop:
            raise WordError("loop must be nonempty")
        alphabet = self.alphabet or tuple(sorted(set(self.stem) | set(self.loop)))
        object.__setattr__(self, "alphabet", tuple(alphabet))
        stray = (set(self.stem) | set(self.loop)) - set(alphabet)
        if stray:
            raise WordError(f"letters {sorted(stray)} not in the alphabet")

    @staticmethod
    def of(stem: str, loop: str, alphabet=None) -> LassoWord:
        return LassoWord(letters_of_text(stem), letters_of_text(loop), tuple(alphabet or ()))

    @property
    def is_lasso(self) -> bool:
        return True

    def lasso_shape(self) -> tuple[int, int]:
        return len(self.stem), len(self.loop)

    def letter_at(self, n: int) -> str:
        if n < len(self.stem):
            return self.stem[n]
        return self.loop[(n - len(self.stem)) % len(self.loop)]

    def prefix(self, n: int) -> tuple[str, ...]:
        return tuple(self.letter_at(i) for i in range(n))

    def letter_set(self, letter: str) -> OmegaSet:
        return _lasso_letter_set(self, letter)

    def text(self) -> str:
        return f"lasso{{stem={letters_to_text(self.stem)};loop={letters_to_text(self.loop)}}}"


@lru_cache(maxsize=1024)
def _lasso_letter_set(w: LassoWord, letter: str) -> OmegaSet:
    stem = "".join("1" if a == letter else "0" for a in w.stem)
    loop = "".join("1" if a == letter else "0" for a in w.loop)
    return canonical(OmegaSet.lasso(stem, loop))


@dataclass(frozen=True)
class WordLetters(Generator):
    """Positions of a non-lasso word carrying a letter from ``letters``."""

    word: Word
    letters: frozenset

    def compute_bits(self, n):
        return np.array([a in self.letters for a in self.word.prefix(n)], dtype=bool)

    @property
    def infinite(self):
        return self.word._letters_infinite(self.letters)

    @property
    def tag(self):
        return self.word._gap_tag(self.letters)

    @property
    def gap_bound(self):
        return self.word._gap_bound(self.letters)

    def complement(self):
        rest = frozenset(self.word.alphabet) - self.letters
        return WordLetters(self.word, rest)

    def count_tag(self, other):
        return self.word._count_tag(self.letters, other)

    def const_dim(self, other: OmegaSet) -> Truth | None:
        return self.word._const_dim(self.letters, other)

    def combine(self, other: OmegaSet, op: str) -> OmegaSet | None:
        gen = other.gen
        if not isinstance(gen, WordLetters) or gen.word != self.word:
            return None
        letters = self.letters & gen.letters if op == "and" else self.letters | gen.letters
        return self.word.letters_set(letters)

    def text(self):
        return f"letters({','.join(sorted(self.letters))})"


class _ProceduralWord(Word):
    def letter_set(self, letter: str) -> OmegaSet:
        return self.letters_set(frozenset([letter]))

    def letters_set(self, letters: frozenset) -> OmegaSet:
        letters = frozenset(letters) & frozenset(self.alphabet)
        if not letters:
            return OmegaSet.empty()
        if letters == frozenset(self.alphabet):
            return OmegaSet.everything()
        periodic = self.as_lasso()
        if periodic is not None:
            out = OmegaSet.empty()
            for a in letters:
                out = out | periodic.letter_set(a)
            return out
        return OmegaSet.procedural(WordLetters(self, letters))

    def prefix(self, n: int) -> tuple[str, ...]:
        return _procedural_prefix(self, _round(n))[:n]

    def letter_at(self, n: int) -> str:
        return self.prefix(n + 1)[n]


def _round(n: int) -> int:
    return max(64, 1 << max(0, n - 1).bit_length())


@lru_cache(maxsize=256)
def _procedural_prefix(w, n: int) -> tuple[str, ...]:
    return tuple(w._build(n))


@dataclass(frozen=True)
class PaddedWord(_ProceduralWord):
    """w_1 flat^{f(0)} w_2 flat^{f(1)} ... for a lasso word w."""

    base: LassoWord
    gen: GapFunction

    def __post_init__(self):
        if FLAT in self.base.alphabet:
            raise WordError("the padding letter is already in the alphabet")

    @property
    def alphabet(self):
        return (*self.base.alphabet, FLAT)

    def _build(self, n):
        out, i = [], 0
        while len(out) < n:
            out.append(self.base.letter_at(i))
            out.extend([FLAT] * min(self.gen(i), n))
            i += 1
        return out[:n]

    def position(self, i: int) -> int:
        """Position of the i-th base letter."""
        if self.gen.name == "identity":
            return i + i * (i - 1) // 2
        if self.gen.name == "pow2":
            return i + (1 << i) - 1
        return i * (1 + self.gen.k)

    def positions_below(self, n: int) -> list[int]:
        out, i = [], 0
        while (p := self.position(i)) < n:
            out.append(p)
            i += 1
        return out

    def as_lasso(self) -> LassoWord | None:
        if self.gen.name != "constant":
            return None
        pad = (FLAT,) * self.gen.k
        stem = tuple(x for a in self.base.stem for x in (a, *pad))
        loop = tuple(x for a in self.base.loop for x in (a, *pad))
        return LassoWord(stem, loop, self.alphabet)

    def image(self, Z: OmegaSet) -> OmegaSet:
        """The positions of the base letters whose index lies in Z."""
        if Z.is_lasso and Z.complement().is_empty() is TRUE:
            return self.letters_set(frozenset(self.base.alphabet))
        return OmegaSet.procedural(PaddingImage(self, Z))

    # facts used by the letter-set generators
    def _letters_infinite(self, letters):
        if FLAT in letters:
            return True
        base = [self.base.letter_set(a) for a in letters if a != FLAT]
        return any(s.is_infinite() is TRUE for s in base)

    def _gap_tag(self, letters):
        if FLAT in letters:
            return GapTag.BOUNDED_GAPS
        if set(letters) >= set(self.base.loop):
            return GapTag.UNBOUNDED_GAPS
        return GapTag.NONE

    def _gap_bound(self, letters):
        return 2 if FLAT in letters else None

    def _count_tag(self, letters, other: OmegaSet):
        if FLAT in letters or not set(letters) >= set(self.base.loop):
            return None
        if _is_flat_set(self, other):
            return GapTag.UNBOUNDED_GAPS
        return None

    def _base_set(self, letters) -> OmegaSet:
        out = OmegaSet.empty()
        for a in letters:
            out = out | self.base.letter_set(a)
        return out

    def _const_dim(self, letters, other: OmegaSet):
        if FLAT in letters or not _is_flat_set(self, other):
            return None
        return _padded_const_dim(self, self._base_set(letters))

    def text(self) -> str:
        return f"pad{{word={self.base.text()};gen={self.gen.text()}}}"


def _padded_const_dim(w: PaddedWord, Z: OmegaSet) -> Truth | None:
    """<image of Z, flats>: the gap after the i-th member of Z holds one flat
    block per base position up to the next member, so the dimension is the
    gap of Z and the coordinates are values of the growing gap function."""
    if not w.gen.unbounded or not Z.is_lasso:
        return None
    if Z.is_infinite() is FALSE:
        return FALSE
    stem, period = Z.lasso_shape()
    members = np.flatnonzero(Z.bits(stem + 2 * period + 1))
    late = np.diff(members[members >= stem])
    return Truth.of(bool(late.size) and int(late.min()) == int(late.max()))


def _is_flat_set(w: Word, s: OmegaSet) -> bool:
    gen = s.gen
    return isinstance(gen, WordLetters) and gen.word == w and gen.letters == frozenset([FLAT])


@dataclass(frozen=True)
class PaddingImage(Generator):
    word: PaddedWord
    source: OmegaSet

    @property
    def infinite(self):
        inf = self.source.is_infinite()
        return None if inf is UNKNOWN else inf is TRUE

    @property
    def tag(self):
        return GapTag.UNBOUNDED_GAPS if self.source.is_infinite() is TRUE else GapTag.NONE

    def const_dim(self, other: OmegaSet) -> Truth | None:
        if not _is_flat_set(self.word, other):
            return None
        return _padded_const_dim(self.word, self.source)

    def compute_bits(self, n):
        out = np.zeros(n, dtype=bool)
        pos = self.word.positions_below(n)
        keep = self.source.bits(len(pos))
        out[np.asarray(pos, dtype=np.int64)[keep]] = True
        return out

    def text(self):
        return f"image({self.source.text()})"


@dataclass(frozen=True)
class BlockWord(_ProceduralWord):
    """unit^{g(1)} sep unit^{g(2)} sep ...; for instance (ac)b(acac)b..."""

    unit: tuple[str, ...]
    sep: tuple[str, ...]
    gen: GapFunction
    alphabet_: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.sep:
            raise WordError("separator must be nonempty")
        if not self.alphabet_:
            object.__setattr__(self, "alphabet_", tuple(sorted(set(self.unit) | set(self.sep))))

    @property
    def alphabet(self):
        return self.alphabet_

    def _build(self, n):
        out, i = [], 1
        while len(out) < n:
            out.extend(self.unit * min(self.gen(i), n))
            out.extend(self.sep)
            i += 1
        return out[:n]

    def as_lasso(self) -> LassoWord | None:
        if self.gen.name != "constant":
            return None
        return LassoWord((), self.unit * self.gen.k + self.sep, self.alphabet)

    def _letters_infinite(self, letters):
        return bool(set(letters) & (set(self.sep) | (set(self.unit) if self.unit else set())))

    def _gap_tag(self, letters):
        if set(letters) & set(self.unit):
            return GapTag.BOUNDED_GAPS
        if set(letters) & set(self.sep):
            return GapTag.UNBOUNDED_GAPS if self.unit and self.gen.unbounded else GapTag.BOUNDED_GAPS
        return GapTag.NONE

    def _gap_bound(self, letters):
        if set(letters) & set(self.unit):
            return 2 * len(self.unit) + len(self.sep)
        return None

    def _separator_only(self, letters):
        return len(self.sep) == 1 and set(letters) == set(self.sep) and not set(self.sep) & set(self.unit)

    def _count_tag(self, letters, other: OmegaSet):
        gen = other.gen
        if not self._separator_only(letters) or not isinstance(gen, WordLetters) or gen.word != self:
            return None
        if gen.letters & letters:
            return None
        per_unit = sum(1 for a in self.unit if a in gen.letters)
        if per_unit and self.gen.unbounded:
            return GapTag.UNBOUNDED_GAPS
        return GapTag.BOUNDED_GAPS

    def _const_dim(self, letters, other: OmegaSet):
        gen = other.gen
        if not self._separator_only(letters) or not isinstance(gen, WordLetters) or gen.word != self:
            return None
        if gen.letters & letters or not self.gen.unbounded:
            return None
        if self.unit and all(a in gen.letters for a in self.unit):
            # one interval per block, of growing length
            return TRUE
        if any(a in gen.letters for a in self.unit):
            # short intervals recur in every block
            return FALSE
        return None

    def text(self) -> str:
        return f"blocks{{unit={letters_to_text(self.unit)};sep={letters_to_text(self.sep)};gen={self.gen.text()}}}"


# ---------------------------------------------------------------------------
# padding and projection


def pad_word(w: LassoWord, gen: str | GapFunction, H: int) -> tuple[str, ...]:
    """Prefix of length H of w_1 flat^{f(0)} w_2 flat^{f(1)} ..."""
    if FLAT in w.alphabet:
        raise WordError("the padding letter is already in the alphabet")
    g = gen if isinstance(gen, GapFunction) else gap_function(gen)
    return PaddedWord(w, g).prefix(H)


@dataclass(frozen=True)
class Projection:
    letters: tuple[str, ...]
    # the prefix ended inside a run of flats, so the next letter is not known
    open_tail: bool


def project(prefix) -> Projection:
    letters = tuple(a for a in prefix if a != FLAT)
    return Projection(letters, bool(prefix) and prefix[-1] == FLAT)


# ---------------------------------------------------------------------------
# semantic predicates


def ult_const_dim(R: OmegaSet, I: OmegaSet, horizon: int = 4096) -> Verdict3:
    """<R,I> is defined, tends to infinity and has ultimately constant dimension."""
    if R.is_infinite() is FALSE:
        return Verdict3(FALSE, horizon, witness="R is finite")
    clash = np.flatnonzero(R.bits(horizon) & I.bits(horizon))
    if clash.size:
        return Verdict3(FALSE, horizon, witness=f"R and I share position {int(clash[0])}")
    if R.is_lasso:
        # R has bounded gaps: an infinite I puts bounded coordinates into
        # infinitely many vectors, a finite I leaves them ultimately empty
        inf = I.is_infinite()
        if inf is TRUE:
            return Verdict3(FALSE, horizon, witness="bounded coordinates recur")
        if inf is FALSE:
            return Verdict3(TRUE, horizon, witness="ultimately empty vectors")
        return Verdict3(UNKNOWN, horizon)
    fact = getattr(R.gen, "const_dim", lambda other: None)(I)
    if fact is None or fact is UNKNOWN:
        return Verdict3(UNKNOWN, horizon)
    return Verdict3(fact, horizon, witness="generator certificate")


def is_ultimately_periodic(Z: OmegaSet) -> Truth:
    if Z.is_lasso:
        return TRUE
    if Z.is_infinite() is TRUE and Z.tag is GapTag.UNBOUNDED_GAPS:
        # an infinite ultimately periodic set has bounded gaps
        return FALSE
    return UNKNOWN


def check_up_ignoring_flats(word: Word, Y: OmegaSet, horizon: int = 4096) -> Verdict3:
    """Y avoids the flats and its pull-back to the unpadded word is
    ultimately periodic."""
    if not isinstance(word, PaddedWord) or word.as_lasso() is not None:
        if isinstance(word, PaddedWord):
            flats = word.letter_set(FLAT)
            hit = np.flatnonzero(flats.bits(horizon) & Y.bits(horizon))
            if hit.size:
                return Verdict3(FALSE, horizon, witness=f"flat position {int(hit[0])} in Y")
        return Verdict3(is_ultimately_periodic(Y), horizon)
    flats = word.letter_set(FLAT)
    hit = np.flatnonzero(flats.bits(horizon) & Y.bits(horizon))
    if hit.size:
        return Verdict3(FALSE, horizon, witness=f"flat position {int(hit[0])} in Y")
    if Y.is_lasso:
        if Y.is_infinite() is FALSE:
            return Verdict3(TRUE, horizon, witness="finite")
        # flat blocks outgrow the period of Y, so Y meets them
        return Verdict3(FALSE, horizon, witness="periodic set meets a long flat block")
    if isinstance(Y.gen, PaddingImage) and Y.gen.word == word:
        return Verdict3(is_ultimately_periodic(Y.gen.source), horizon, witness="pull-back")
    return Verdict3(UNKNOWN, horizon)


# ---------------------------------------------------------------------------
# text formats


def _split_fields(body: str) -> dict[str, str]:
    fields, depth, start = {}, 0, 0
    parts = []
    for i, ch in enumerate(body):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        elif ch == ";" and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    parts.append(body[start:])
    for part in parts:
        if part.strip():
            key, _, value = part.partition("=")
            fields[key.strip()] = value.strip()
    return fields


_WORD_RE = re.compile(r"\s*(lasso|pad|blocks)\s*\{(.*)\}\s*$", re.DOTALL)


def parse_word(text: str, alphabet=None) -> Word:
    """``lasso{stem=ab;loop=ba}``, ``pad{word=lasso{...};gen=identity}`` or
    ``blocks{unit=ac;sep=b;gen=identity}``."""
    m = _WORD_RE.match(text)
    if m is None:
        raise WordError(f"malformed word {text!r}")
    kind, fields = m.group(1), _split_fields(m.group(2))
    if kind == "lasso":
        return LassoWord.of(fields.get("stem", ""), fields.get("loop", ""), alphabet)
    gen = gap_function(fields.get("gen", "identity"), fields.get("k", 0))
    if kind == "pad":
        base = parse_word(fields["word"], [a for a in (alphabet or ()) if a != FLAT] or None)
        if not isinstance(base, LassoWord):
            raise WordError("only lasso words can be padded")
        return PaddedWord(base, gen)
    unit, sep = letters_of_text(fields.get("unit", "")), letters_of_text(fields.get("sep", ""))
    return BlockWord(unit, sep, gen, tuple(alphabet or ()))


def word_text(w: Word) -> str:
    return w.text()


__all__ = [
    "FLAT",
    "BlockWord",
    "LassoWord",
    "PaddedWord",
    "Projection",
    "Word",
    "WordError",
    "check_up_ignoring_flats",
    "pad_word",
    "parse_set",
    "parse_word",
    "project",
    "ult_const_dim",
]
