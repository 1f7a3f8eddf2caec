"""Finitely represented subsets of the natural numbers.

An :class:`OmegaSet` is an explicit bit prefix followed by a tail descriptor:
``Finite`` (nothing at or beyond the prefix), ``Periodic`` (a bit pattern
repeated forever) or ``Procedural`` (a deterministic generator from a closed
registry, optionally tagged with the asymptotic behaviour of its gaps).
"""

from __future__ import annotations

import enum
import math
import re
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np


class Truth(enum.Enum):
    TRUE = "TRUE"
    FALSE = "FALSE"
    UNKNOWN = "UNKNOWN"

    @staticmethod
    def of(value: bool) -> Truth:
        return Truth.TRUE if value else Truth.FALSE

    def __invert__(self) -> Truth:
        if self is Truth.TRUE:
            return Truth.FALSE
        if self is Truth.FALSE:
            return Truth.TRUE
        return Truth.UNKNOWN

    def __and__(self, other: Truth) -> Truth:
        if self is Truth.FALSE or other is Truth.FALSE:
            return Truth.FALSE
        if self is Truth.TRUE and other is Truth.TRUE:
            return Truth.TRUE
        return Truth.UNKNOWN

    def __or__(self, other: Truth) -> Truth:
        if self is Truth.TRUE or other is Truth.TRUE:
            return Truth.TRUE
        if self is Truth.FALSE and other is Truth.FALSE:
            return Truth.FALSE
        return Truth.UNKNOWN

    @property
    def decided(self) -> bool:
        return self is not Truth.UNKNOWN


TRUE, FALSE, UNKNOWN = Truth.TRUE, Truth.FALSE, Truth.UNKNOWN


@dataclass(frozen=True)
class Verdict3:
    value: Truth
    horizon: int = 0
    witness: object = field(default=None, compare=False)
    # set when the verdict only holds relative to the bounded domain
    relative: bool = False

    def __str__(self) -> str:
        text = f"{self.value.value} (horizon {self.horizon}"
        if self.relative:
            text += ", relative"
        text += ")"
        if self.witness is not None:
            text += f" witness: {self.witness}"
        return text


class GapTag(enum.Enum):
    UNBOUNDED_GAPS = "UNBOUNDED_GAPS"
    BOUNDED_GAPS = "BOUNDED_GAPS"
    NONE = "NONE"


class EncodingUndefined(ValueError):
    """Raised when (R, I) does not encode a sequence."""


class TagMismatch(ValueError):
    """A declared asymptotic tag is contradicted by the prefix."""


# ---------------------------------------------------------------------------
# generators


class Generator:
    """Deterministic strictly increasing enumeration of an infinite (or, for
    derived sets, possibly finite) set of naturals."""

    tag: GapTag = GapTag.NONE
    gap_bound: int | None = None
    # True when the set is known to be infinite
    infinite: bool | None = True

    def compute_bits(self, n: int) -> np.ndarray:
        raise NotImplementedError

    def bits(self, n: int) -> np.ndarray:
        return _cached_bits(self, _round_up(n))[:n]

    def residues(self, modulus: int) -> tuple[int, frozenset[int]] | None:
        """Return ``(threshold, residues)`` such that every member at or past
        ``threshold`` has its residue mod ``modulus`` in ``residues`` and each
        residue is hit infinitely often. ``None`` when not known."""
        return None

    def count_tag(self, other: OmegaSet) -> GapTag | None:
        """Asymptotics of the number of ``other``-members between consecutive
        members of this set, when known together with disjointness."""
        return None

    def text(self) -> str:
        return repr(self)


def _round_up(n: int) -> int:
    return max(64, 1 << max(0, (n - 1)).bit_length())


@lru_cache(maxsize=4096)
def _cached_bits(gen: Generator, n: int) -> np.ndarray:
    out = np.asarray(gen.compute_bits(n), dtype=bool)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Pow2(Generator):
    """{2^n : n >= 0}"""

    tag = GapTag.UNBOUNDED_GAPS

    def compute_bits(self, n):
        out = np.zeros(n, dtype=bool)
        k = 1
        while k < n:
            out[k] = True
            k *= 2
        return out

    def residues(self, modulus):
        start = max(1, modulus.bit_length() + 1)
        hits = {pow(2, e, modulus) for e in range(start, start + modulus + 1)}
        return 1 << start, frozenset(hits)

    def text(self):
        return "proc{name=pow2}"


@dataclass(frozen=True)
class Squares(Generator):
    tag = GapTag.UNBOUNDED_GAPS

    def compute_bits(self, n):
        out = np.zeros(n, dtype=bool)
        roots = np.arange(math.isqrt(max(n - 1, 0)) + 1)
        out[roots * roots] = True
        return out

    def residues(self, modulus):
        return 0, frozenset((k * k) % modulus for k in range(modulus))

    def text(self):
        return "proc{name=squares}"


@dataclass(frozen=True)
class Multiples(Generator):
    k: int = 1
    tag = GapTag.BOUNDED_GAPS

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("multiples needs k >= 1")

    @property
    def gap_bound(self):
        return self.k

    def compute_bits(self, n):
        out = np.zeros(n, dtype=bool)
        out[:: self.k] = True
        return out

    def as_lasso(self):
        return OmegaSet.lasso("", "1" + "0" * (self.k - 1))

    def residues(self, modulus):
        return 0, frozenset((self.k * j) % modulus for j in range(modulus))

    def text(self):
        return f"proc{{name=multiples;k={self.k}}}"


@lru_cache(maxsize=8)
def pi_digits(count: int) -> str:
    """First ``count`` digits after the decimal point of pi."""
    import mpmath

    with mpmath.workdps(count + 20):
        text = mpmath.nstr(mpmath.mp.pi, count + 10, strip_zeros=False)
    return text[2 : 2 + count]


@dataclass(frozen=True)
class PiDigits(Generator):
    """{10m + d_m : m >= 1} with d_m the m-th digit after the point of pi
    (d_1 = 1, d_2 = 4, ...)."""

    tag = GapTag.BOUNDED_GAPS
    gap_bound = 19

    def compute_bits(self, n):
        count = n // 10 + 1
        digits = np.frombuffer(pi_digits(_round_up(count)).encode(), dtype=np.uint8)[:count] - ord("0")
        pos = 10 * np.arange(1, count + 1) + digits
        out = np.zeros(n, dtype=bool)
        out[pos[pos < n]] = True
        return out

    def text(self):
        return "proc{name=pidigits}"


REGISTRY: dict[str, Callable[..., Generator]] = {
    "pow2": Pow2,
    "squares": Squares,
    "multiples": lambda k=10: Multiples(int(k)),
    "pidigits": PiDigits,
}


@dataclass(frozen=True)
class Derived(Generator):
    """Pointwise combination of other sets."""

    op: str
    args: tuple
    tag = GapTag.NONE

    @property
    def infinite(self):
        if self.op == "not":
            (a,) = self.args
            # a set with unbounded gaps has infinitely many non-members
            if a.tag is GapTag.UNBOUNDED_GAPS or a.is_infinite() is FALSE:
                return True
        if self.op == "or" and any(a.is_infinite() is TRUE for a in self.args):
            return True
        return None

    def compute_bits(self, n):
        fn = _DERIVED_OPS[self.op]
        return fn(n, *self.args)

    def text(self):
        return f"{self.op}({', '.join(a.text() if hasattr(a, 'text') else str(a) for a in self.args)})"


_DERIVED_OPS: dict[str, Callable] = {
    "not": lambda n, a: ~a.bits(n),
    "and": lambda n, a, b: a.bits(n) & b.bits(n),
    "or": lambda n, a, b: a.bits(n) | b.bits(n),
}


def register_derived(name: str, fn: Callable) -> None:
    _DERIVED_OPS[name] = fn


# ---------------------------------------------------------------------------
# the set type


@dataclass(frozen=True)
class Finite:
    pass


@dataclass(frozen=True)
class Periodic:
    pattern: str


@dataclass(frozen=True)
class Procedural:
    gen: Generator
    tag: GapTag = GapTag.NONE


@dataclass(frozen=True)
class OmegaSet:
    prefix: str = ""
    tail: Finite | Periodic | Procedural = Finite()

    def __post_init__(self):
        if self.prefix.strip("01"):
            raise ValueError("prefix must be a bit string")
        if isinstance(self.tail, Periodic) and (not self.tail.pattern or self.tail.pattern.strip("01")):
            raise ValueError("periodic pattern must be a nonempty bit string")

    # constructors
    @staticmethod
    def finite(members) -> OmegaSet:
        members = sorted(set(int(m) for m in members))
        if members and members[0] < 0:
            raise ValueError("members must be natural numbers")
        bits = ["0"] * (members[-1] + 1 if members else 0)
        for m in members:
            bits[m] = "1"
        return OmegaSet("".join(bits), Finite())

    @staticmethod
    def lasso(prefix: str, period: str) -> OmegaSet:
        return OmegaSet(prefix, Periodic(period))

    @staticmethod
    def procedural(gen: Generator, tag: GapTag | None = None) -> OmegaSet:
        return OmegaSet("", Procedural(gen, gen.tag if tag is None else tag))

    @staticmethod
    def from_bits(bits, period_bits=None) -> OmegaSet:
        prefix = _bit_text(bits)
        if period_bits is None:
            return OmegaSet(prefix, Finite())
        return OmegaSet(prefix, Periodic(_bit_text(period_bits)))

    @staticmethod
    def everything() -> OmegaSet:
        return OmegaSet("", Periodic("1"))

    @staticmethod
    def empty() -> OmegaSet:
        return OmegaSet("", Finite())

    # structure
    @property
    def is_lasso(self) -> bool:
        return not isinstance(self.tail, Procedural)

    @property
    def stem(self) -> int:
        return len(self.prefix)

    @property
    def period(self) -> int:
        return len(self.tail.pattern) if isinstance(self.tail, Periodic) else 1

    @property
    def gen(self) -> Generator | None:
        return self.tail.gen if isinstance(self.tail, Procedural) else None

    @property
    def tag(self) -> GapTag:
        return self.tail.tag if isinstance(self.tail, Procedural) else GapTag.NONE

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if isinstance(self.tail, Procedural):
            return bool(self.tail.gen.bits(n + 1)[n])
        if n < len(self.prefix):
            return self.prefix[n] == "1"
        if isinstance(self.tail, Finite):
            return False
        pattern = self.tail.pattern
        return pattern[(n - len(self.prefix)) % len(pattern)] == "1"

    def bits(self, n: int) -> np.ndarray:
        """Membership of the positions 0..n-1."""
        if isinstance(self.tail, Procedural):
            return self.tail.gen.bits(n)
        return _lasso_bits(self.prefix, self.tail.pattern if isinstance(self.tail, Periodic) else None, n)

    def members_below(self, n: int) -> np.ndarray:
        return np.flatnonzero(self.bits(n))

    # exact asymptotic facts, three-valued for procedural sets
    def is_infinite(self) -> Truth:
        if isinstance(self.tail, Finite):
            return FALSE
        if isinstance(self.tail, Periodic):
            return Truth.of("1" in self.tail.pattern)
        inf = self.tail.gen.infinite
        return UNKNOWN if inf is None else Truth.of(inf)

    def is_empty(self, horizon: int = 4096) -> Truth:
        if self.is_lasso:
            return Truth.of("1" not in self.prefix and (isinstance(self.tail, Finite) or "1" not in self.tail.pattern))
        if self.bits(horizon).any():
            return FALSE
        if self.is_infinite() is TRUE:
            return FALSE
        return UNKNOWN

    def max_member(self) -> int | None:
        """Largest member of a finite lasso set (None when empty)."""
        assert self.is_infinite() is FALSE
        if isinstance(self.tail, Procedural):
            raise ValueError("max_member needs a lasso set")
        idx = self.prefix.rfind("1")
        return None if idx < 0 else idx

    def lasso_shape(self) -> tuple[int, int]:
        if isinstance(self.tail, Procedural):
            raise ValueError("not a lasso set")
        return len(self.prefix), self.period

    # boolean algebra
    def complement(self) -> OmegaSet:
        if isinstance(self.tail, Procedural):
            gen = self.tail.gen
            if isinstance(gen, Derived) and gen.op == "not":
                return gen.args[0]
            own = getattr(gen, "complement", None)
            if own is not None and (other := own()) is not None:
                return OmegaSet.procedural(other)
            return OmegaSet.procedural(Derived("not", (self,)))
        pattern = self.tail.pattern if isinstance(self.tail, Periodic) else "0"
        return OmegaSet(_flip(self.prefix), Periodic(_flip(pattern)))

    def _combine(self, other: OmegaSet, op: str) -> OmegaSet:
        if self.is_lasso and other.is_lasso:
            stem = max(self.stem, other.stem)
            period = math.lcm(self.period, other.period)
            fn = np.logical_and if op == "and" else np.logical_or
            bits = fn(self.bits(stem + period), other.bits(stem + period))
            finite = isinstance(self.tail, Finite) and isinstance(other.tail, Finite)
            if op == "and":
                finite = isinstance(self.tail, Finite) or isinstance(other.tail, Finite)
            return _normalise(bits[:stem], None if finite else bits[stem:])
        for a, b in ((self, other), (other, self)):
            hook = getattr(a.gen, "combine", None)
            if hook is not None and (out := hook(b, op)) is not None:
                return out
            if not a.is_lasso:
                continue
            if op == "and" and isinstance(a.tail, Finite):
                return _normalise(a.bits(a.stem) & b.bits(a.stem), None)
            if a.is_empty() is TRUE:
                return b if op == "or" else a
            if a.complement().is_empty() is TRUE:
                return a if op == "or" else b
        return OmegaSet.procedural(Derived(op, (self, other)))

    def __and__(self, other: OmegaSet) -> OmegaSet:
        return self._combine(other, "and")

    def __or__(self, other: OmegaSet) -> OmegaSet:
        return self._combine(other, "or")

    def __sub__(self, other: OmegaSet) -> OmegaSet:
        return self & other.complement()

    def __invert__(self) -> OmegaSet:
        return self.complement()

    def same_as(self, other: OmegaSet) -> Truth:
        """Exact equality for lasso sets; structural or prefix refutation otherwise."""
        if self is other or self == other:
            return TRUE
        if self.is_lasso and other.is_lasso:
            stem = max(self.stem, other.stem)
            period = math.lcm(self.period, other.period)
            return Truth.of(bool(np.array_equal(self.bits(stem + period), other.bits(stem + period))))
        n = 4096
        if not np.array_equal(self.bits(n), other.bits(n)):
            return FALSE
        return UNKNOWN

    def text(self) -> str:
        return format_set(self)

    def __repr__(self) -> str:
        return f"OmegaSet({format_set(self)})"


@lru_cache(maxsize=4096)
def _lasso_bits(prefix: str, pattern: str | None, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=bool)
    head = np.frombuffer(prefix[:n].encode(), dtype=np.uint8) == ord("1")
    out[: len(head)] = head
    if pattern is not None and n > len(prefix):
        cyc = np.frombuffer(pattern.encode(), dtype=np.uint8) == ord("1")
        reps = -(-(n - len(prefix)) // len(cyc))
        out[len(prefix) :] = np.tile(cyc, reps)[: n - len(prefix)]
    out.setflags(write=False)
    return out


def _flip(bits: str) -> str:
    return bits.translate(str.maketrans("01", "10"))


def _bit_text(bits) -> str:
    return (np.asarray(bits, dtype=np.uint8) + ord("0")).tobytes().decode()


def _normalise(stem_bits, period_bits) -> OmegaSet:
    prefix = _bit_text(stem_bits)
    if period_bits is None or not np.any(period_bits):
        return OmegaSet(prefix.rstrip("0"), Finite())
    pattern = _bit_text(period_bits)
    # shortest period
    for d in range(1, len(pattern) + 1):
        if len(pattern) % d == 0 and pattern == pattern[:d] * (len(pattern) // d):
            pattern = pattern[:d]
            break
    # absorb stem suffix that already follows the pattern
    while prefix and prefix[-1] == pattern[-1]:
        prefix = prefix[:-1]
        pattern = pattern[-1] + pattern[:-1]
    return OmegaSet(prefix, Periodic(pattern))


def canonical(s: OmegaSet) -> OmegaSet:
    if not s.is_lasso:
        return s
    stem, period = s.lasso_shape()
    bits = s.bits(stem + period)
    return _normalise(bits[:stem], None if isinstance(s.tail, Finite) else bits[stem:])


def lasso_frame(*sets: OmegaSet) -> tuple[int, int]:
    """Common (stem, period) after which every lasso set in ``sets`` repeats."""
    stem, period = 0, 1
    for s in sets:
        a, b = s.lasso_shape()
        stem = max(stem, a)
        period = math.lcm(period, b)
    return stem, period


# ---------------------------------------------------------------------------
# text format

_SET_RE = re.compile(r"\s*(finite|lasso|proc)\s*\{(.*)\}\s*$")


def parse_set(text: str) -> OmegaSet:
    """Parse ``finite{3,5,8}``, ``lasso{prefix=0110;period=10}`` or
    ``proc{name=multiples;k=10}``."""
    m = _SET_RE.match(text)
    if m is None:
        raise ValueError(f"malformed set {text!r}")
    kind, body = m.group(1), m.group(2).strip()
    if kind == "finite":
        items = [t for t in body.replace(" ", "").split(",") if t]
        return OmegaSet.finite(int(t) for t in items)
    fields = {}
    for part in body.split(";"):
        if not part.strip():
            continue
        key, _, value = part.partition("=")
        fields[key.strip()] = value.strip()
    if kind == "lasso":
        period = fields.get("period", "")
        if not period:
            raise ValueError("lasso needs a nonempty period")
        return OmegaSet.lasso(fields.get("prefix", ""), period)
    name = fields.pop("name", None)
    if name not in REGISTRY:
        raise ValueError(f"unknown generator {name!r}")
    return OmegaSet.procedural(REGISTRY[name](**fields))


def format_set(s: OmegaSet) -> str:
    if isinstance(s.tail, Finite):
        return "finite{" + ",".join(str(i) for i, b in enumerate(s.prefix) if b == "1") + "}"
    if isinstance(s.tail, Periodic):
        return f"lasso{{prefix={s.prefix};period={s.tail.pattern}}}"
    return s.tail.gen.text()
