"""Set-to-sequence encodings and the combinatorics of vector sequences.

Exact answers are given whenever the inputs are lasso sets; procedural inputs
are answered from their declared tags, cross-checked against the prefix.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from itertools import product

import numpy as np

from .omegaset import (
    FALSE,
    TRUE,
    UNKNOWN,
    Derived,
    EncodingUndefined,
    GapTag,
    Generator,
    OmegaSet,
    Periodic,
    TagMismatch,
    Truth,
    Verdict3,
    canonical,
    lasso_frame,
    register_derived,
)

DEFAULT_HORIZON = 4096


@dataclass(frozen=True)
class NumberSeqPrefix:
    values: tuple[int, ...]
    horizon: int = 0
    # set when fewer than two separators were seen at the horizon
    flag: str | None = None

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class VectorSeqPrefix:
    vectors: tuple[tuple[int, ...], ...]
    horizon: int = 0
    flag: str | None = None

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]


def numseq(values: Sequence[int], horizon: int = 0) -> NumberSeqPrefix:
    return NumberSeqPrefix(tuple(int(v) for v in values), horizon)


def vecseq(vectors, horizon: int = 0) -> VectorSeqPrefix:
    return VectorSeqPrefix(tuple(tuple(int(c) for c in v) for v in vectors), horizon)


# ---------------------------------------------------------------------------
# decoding


def _separators(R: OmegaSet, I: OmegaSet, H: int) -> tuple[np.ndarray, np.ndarray]:
    rb, ib = R.bits(H), I.bits(H)
    clash = np.flatnonzero(rb & ib)
    if clash.size:
        raise EncodingUndefined(f"R and I share position {int(clash[0])}")
    return np.flatnonzero(rb), ib


def decode_vecseq(R: OmegaSet, I: OmegaSet, H: int = DEFAULT_HORIZON) -> VectorSeqPrefix:
    """Vector i lists the lengths of the maximal I-intervals strictly between
    the i-th and (i+1)-th members of R."""
    rs, ib = _separators(R, I, H)
    if rs.size < 2:
        return VectorSeqPrefix((), H, "fewer than two members of R below the horizon")
    vectors = []
    for a, b in zip(rs[:-1], rs[1:]):
        vectors.append(_runs(ib[a + 1 : b]))
    return VectorSeqPrefix(tuple(vectors), H)


def _runs(bits: np.ndarray) -> tuple[int, ...]:
    if not bits.any():
        return ()
    padded = np.concatenate(([False], bits, [False])).astype(np.int8)
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return tuple(int(x) for x in ends - starts)


def decode_numseq(R: OmegaSet, I: OmegaSet, H: int = DEFAULT_HORIZON) -> NumberSeqPrefix:
    rs, ib = _separators(R, I, H)
    if rs.size < 2:
        return NumberSeqPrefix((), H, "fewer than two members of R below the horizon")
    counts = np.add.reduceat(ib.astype(np.int64), rs)[:-1] - ib[rs[:-1]]
    return NumberSeqPrefix(tuple(int(c) for c in counts), H)


def dims(v: VectorSeqPrefix) -> NumberSeqPrefix:
    return NumberSeqPrefix(tuple(len(x) for x in v), v.horizon)


def gaps(X: OmegaSet, H: int) -> np.ndarray:
    return np.diff(X.members_below(H))


# ---------------------------------------------------------------------------
# W and U2


def _cross_check_tag(X: OmegaSet, H: int) -> None:
    gen = X.gen
    g = gaps(X, H)
    if X.tag is GapTag.BOUNDED_GAPS and gen.gap_bound is not None and g.size and g.max() > gen.gap_bound:
        raise TagMismatch(f"{X.text()} declares gaps <= {gen.gap_bound} but has gap {int(g.max())}")
    if X.tag is GapTag.UNBOUNDED_GAPS and g.size >= 3:
        ends = X.members_below(H)[1:]
        early = g[ends < H // 2]
        late = g[ends >= H // 2]
        if early.size and late.size and late.max() <= early.max():
            raise TagMismatch(f"{X.text()} declares unbounded gaps but records stop growing below {H}")


def check_W(X: OmegaSet, horizon: int = DEFAULT_HORIZON) -> Verdict3:
    """Consecutive members of X occur at arbitrarily large distances."""
    if X.is_lasso:
        # a finite set has finitely many consecutive pairs; a periodic one has
        # gaps bounded by its period
        return Verdict3(FALSE, horizon, witness=_lasso_gap_witness(X))
    tag = X.tag
    if tag is GapTag.NONE:
        return Verdict3(UNKNOWN, horizon)
    _cross_check_tag(X, horizon)
    if tag is GapTag.BOUNDED_GAPS:
        return Verdict3(FALSE, horizon, witness=f"gaps bounded by {X.gen.gap_bound}")
    g = gaps(X, horizon)
    return Verdict3(TRUE, horizon, witness=f"largest gap below horizon {int(g.max()) if g.size else 0}")


def _lasso_gap_witness(X: OmegaSet) -> str:
    if X.is_infinite() is FALSE:
        return "finite set"
    return f"gaps bounded by {X.stem + 2 * X.period}"


def horizon_W(X: OmegaSet, H: int) -> bool:
    """Prefix heuristic: gap records still grow in the second half of [0, H)."""
    members = X.members_below(H)
    if members.size < 3:
        return False
    g = np.diff(members)
    ends = members[1:]
    early, late = g[ends < H // 2], g[ends >= H // 2]
    if not late.size:
        return H - members[-1] > (early.max() if early.size else 0)
    return bool(late.max() > (early.max() if early.size else 0))


def _growth_witness(values: Sequence[int], length: int = 3) -> list[int] | None:
    """Indices of a strictly increasing run of records, if long enough."""
    records, best = [], -1
    for i, v in enumerate(values):
        if v > best:
            records.append(i)
            best = v
    return records if len(records) >= length else None


def _disjoint_certificate(R: OmegaSet, I: OmegaSet, horizon: int) -> Truth:
    if R.is_lasso and I.is_lasso:
        stem, period = lasso_frame(R, I)
        n = stem + period
        return Truth.of(not np.any(R.bits(n) & I.bits(n)))
    if np.any(R.bits(horizon) & I.bits(horizon)):
        return FALSE
    proc, las = (R, I) if I.is_lasso else (I, R) if R.is_lasso else (None, None)
    if proc is None:
        if _is_complement(I, R) or _is_complement(R, I):
            return TRUE
        return UNKNOWN
    stem, period = las.lasso_shape()
    cert = proc.gen.residues(period)
    if cert is None:
        return UNKNOWN
    threshold, residues = cert
    start = max(threshold, stem)
    start += (-(start - stem)) % period
    if np.any(R.bits(start + 1) & I.bits(start + 1)):
        return FALSE
    pattern = las.tail.pattern if isinstance(las.tail, Periodic) else "0"
    for r in residues:
        if pattern[(r - stem) % period] == "1":
            return FALSE
    return TRUE


def _is_complement(a: OmegaSet, b: OmegaSet) -> bool:
    gen = a.gen
    return gen is not None and isinstance(gen, Derived) and gen.op == "not" and gen.args[0] == b


def check_U2(R: OmegaSet, I: OmegaSet, horizon: int = DEFAULT_HORIZON) -> Verdict3:
    """The number sequence encoded by (R, I) is defined and unbounded."""
    if R.is_infinite() is FALSE:
        return Verdict3(FALSE, horizon, witness="R is finite")
    clash = np.flatnonzero(R.bits(horizon) & I.bits(horizon))
    if clash.size:
        return Verdict3(FALSE, horizon, witness=f"R and I share position {int(clash[0])}")
    if R.is_lasso:
        # gaps of R bounded by its period, so are the counts
        return Verdict3(FALSE, horizon, witness="R is ultimately periodic")
    if R.tag is GapTag.BOUNDED_GAPS:
        _cross_check_tag(R, horizon)
        return Verdict3(FALSE, horizon, witness=f"gaps of R bounded by {R.gen.gap_bound}")
    if _is_complement(I, R):
        inner = check_W(R, horizon)
        return Verdict3(inner.value, horizon, witness="I is the complement of R; counts are gaps minus one")
    counts = decode_numseq(R, I, horizon).values
    tag = R.gen.count_tag(I)
    if tag is not None:
        if tag is GapTag.BOUNDED_GAPS:
            return Verdict3(FALSE, horizon, witness="declared bounded counts")
        grow = _growth_witness(counts)
        return Verdict3(TRUE if grow else UNKNOWN, horizon, witness=grow)
    if I.is_lasso and R.tag is GapTag.UNBOUNDED_GAPS:
        if I.is_infinite() is FALSE:
            return Verdict3(FALSE, horizon, witness="I is finite")
        disjoint = _disjoint_certificate(R, I, horizon)
        if disjoint is FALSE:
            return Verdict3(FALSE, horizon, witness="R and I intersect")
        grow = _growth_witness(counts)
        if disjoint is TRUE and grow:
            _cross_check_tag(R, horizon)
            return Verdict3(TRUE, horizon, witness=grow)
    return Verdict3(UNKNOWN, horizon)


def horizon_U2(R: OmegaSet, I: OmegaSet, H: int) -> bool:
    try:
        counts = decode_numseq(R, I, H).values
    except EncodingUndefined:
        return False
    if len(counts) < 3:
        return False
    half = len(counts) // 2
    return max(counts[half:]) > max(counts[:half])


# ---------------------------------------------------------------------------
# local transformations of sets


def _isolate_bits(n: int, I: OmegaSet) -> np.ndarray:
    ib = I.bits(n + 1)
    out = ib[:n].copy()
    left = np.concatenate(([False], ib[: n - 1])) if n else ib[:0]
    right = ib[1 : n + 1]
    even = (np.arange(n) % 2) == 0
    out[even & (left | right)] = False
    return out


def _complete_bits(n: int, R: OmegaSet, I: OmegaSet) -> np.ndarray:
    look = max(2 * n, 64)
    ib = I.bits(look)
    # extend until a member of I past n is seen (or give up at a fixed cap)
    while not ib[n:].any() and look < (1 << 22) and I.is_infinite() is not FALSE:
        look *= 2
        ib = I.bits(look)
    rb = R.bits(look)
    out = ib.copy()
    members = np.flatnonzero(ib)
    rcum = np.concatenate(([0], np.cumsum(rb)))
    for x, y in zip(members[:-1], members[1:]):
        if x >= n:
            break
        if y - x > 2 and rcum[y] - rcum[x + 1] == 0:
            out[x + 1 : y - 1] = True
    return out[:n]


def _adjacency_bits(n: int, Rp: OmegaSet, Ip: OmegaSet) -> np.ndarray:
    ib = Ip.bits(n + 1)
    near = ib[:n].copy()
    near[1:] |= ib[: n - 1]
    near |= ib[1 : n + 1]
    return Rp.bits(n) | ~near


register_derived("isolate", _isolate_bits)
register_derived("complete", _complete_bits)
register_derived("adjacency", _adjacency_bits)


def _lasso_local(fn, sets: Sequence[OmegaSet], reach: int, even: bool = False) -> OmegaSet:
    """Apply a window-``reach`` pointwise rule to lasso sets exactly."""
    stem, period = lasso_frame(*sets)
    if even and period % 2:
        period *= 2
    start = stem + reach + 1
    if even and start % 2:
        start += 1
    bits = fn(start + period, *sets)
    return canonical(OmegaSet.from_bits(bits[:start], bits[start:]))


def isolate(I: OmegaSet) -> OmegaSet:
    """Remove every even member 2x of I that has a neighbour 2x-1 or 2x+1 in I."""
    if I.is_lasso:
        return _lasso_local(_isolate_bits, [I], 1, even=True)
    return OmegaSet.procedural(Derived("isolate", (I,)))


def complete(R: OmegaSet, I: OmegaSet, horizon: int = DEFAULT_HORIZON) -> OmegaSet:
    """Fill the space between consecutive I-members with no R-member in
    between, except the position just before the later member."""
    if np.any(R.bits(horizon) & I.bits(horizon)):
        raise EncodingUndefined("R and I intersect")
    if R.is_lasso and I.is_lasso:
        stem, period = lasso_frame(R, I)
        if I.is_infinite() is FALSE:
            last = I.max_member() or 0
            return canonical(OmegaSet.from_bits(_complete_bits(last + 1, R, I)))
        # once past the stem, each point only depends on the neighbouring
        # I-members, which lie within one period
        start = stem + period + 1
        bits = _complete_bits(start + period, R, I)
        return canonical(OmegaSet.from_bits(bits[:start], bits[start:]))
    return OmegaSet.procedural(Derived("complete", (R, I)))


def satisfies_star(R: OmegaSet, I: OmegaSet, H: int) -> bool:
    """Between consecutive I-members: an R-member or at most one non-member."""
    rb, ib = R.bits(H), I.bits(H)
    members = np.flatnonzero(ib)
    rcum = np.concatenate(([0], np.cumsum(rb)))
    for x, y in zip(members[:-1], members[1:]):
        if y - x - 1 > 1 and rcum[y] - rcum[x + 1] == 0:
            return False
    return True


def adjacency_set(Rp: OmegaSet, Ip: OmegaSet) -> OmegaSet:
    """Rp together with every position at distance >= 2 from Ip."""
    if Rp.is_lasso and Ip.is_lasso:
        return _lasso_local(_adjacency_bits, [Rp, Ip], 1)
    return OmegaSet.procedural(Derived("adjacency", (Rp, Ip)))


# ---------------------------------------------------------------------------
# encoding a vector sequence given by a function


@dataclass(frozen=True)
class Encoded(Generator):
    """One half of the standard encoding of i -> fn(i): an R-position, then
    for every coordinate c a run of c I-positions followed by one blank."""

    fn: Callable
    part: str
    # declared asymptotics of the coordinate sums (trusted, checked at horizon)
    counts: GapTag | None = None

    def _layout(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        R, I = np.zeros(n, dtype=bool), np.zeros(n, dtype=bool)
        pos, i = 0, 0
        while pos < n:
            R[pos] = True
            pos += 1
            for c in self.fn(i):
                if c < 1:
                    raise ValueError("coordinates must be positive")
                I[pos : pos + c] = True
                pos += c + 1
            i += 1
        return R, I

    def compute_bits(self, n):
        R, I = self._layout(n)
        return R if self.part == "reset" else I

    @property
    def infinite(self):
        return True if self.part == "reset" else None

    def count_tag(self, other):
        gen = other.gen
        if self.part == "reset" and isinstance(gen, Encoded) and gen.fn is self.fn and gen.part == "inc":
            return self.counts
        return None

    def text(self):
        return f"encoded({getattr(self.fn, '__name__', 'fn')}).{self.part}"


def encode_vecseq(fn: Callable[[int], Sequence[int]], counts: GapTag | None = None) -> tuple[OmegaSet, OmegaSet]:
    """(R, I) encoding the vector sequence i -> fn(i)."""
    return (
        OmegaSet.procedural(Encoded(fn, "reset", counts)),
        OmegaSet.procedural(Encoded(fn, "inc", counts)),
    )


def encode_numseq(fn: Callable[[int], int], counts: GapTag | None = None) -> tuple[OmegaSet, OmegaSet]:
    """(R, I) with exactly one run of fn(i) I-positions in the i-th gap."""

    def vec(i, fn=fn):
        return (fn(i),) if fn(i) > 0 else ()

    vec.__name__ = getattr(fn, "__name__", "fn")
    return encode_vecseq(vec, counts)


# ---------------------------------------------------------------------------
# relations between vector-sequence prefixes


class Relation(enum.Enum):
    SUBSEQUENCE = "SUBSEQUENCE"
    EXTRACTION = "EXTRACTION"
    INTERVAL_CLOSED_EXTRACTION = "INTERVAL_CLOSED_EXTRACTION"
    ONE_EXTRACTION = "ONE_EXTRACTION"
    STRICT_EXTRACTION = "STRICT_EXTRACTION"
    SUB_EXTRACTION = "SUB_EXTRACTION"


@dataclass(frozen=True)
class Embedding:
    """index_map[j] is the vector of the larger sequence that vector j comes
    from; selections[j] the coordinates kept from it."""

    index_map: tuple[int, ...]
    selections: tuple[tuple[int, ...], ...]


def _subsequence_positions(small: tuple, big: tuple, contiguous: bool) -> tuple[int, ...] | None:
    if contiguous:
        k = len(small)
        for start in range(len(big) - k + 1):
            if big[start : start + k] == small:
                return tuple(range(start, start + k))
        return None
    picks, j = [], 0
    for i, c in enumerate(big):
        if j < len(small) and c == small[j]:
            picks.append(i)
            j += 1
    return tuple(picks) if j == len(small) else None


def relation_check(a: VectorSeqPrefix, b: VectorSeqPrefix, rel: Relation) -> tuple[bool, Embedding | None]:
    """Does a witness exist that ``a`` is ``rel`` of ``b`` on the prefixes?"""
    rel = Relation(rel)
    if rel in (Relation.SUBSEQUENCE, Relation.SUB_EXTRACTION):
        index_map, selections, i = [], [], 0
        for vec in a:
            while i < len(b):
                if rel is Relation.SUBSEQUENCE:
                    sel = tuple(range(len(vec))) if b[i] == vec else None
                else:
                    sel = _subsequence_positions(vec, b[i], False) if vec else None
                i += 1
                if sel is not None:
                    index_map.append(i - 1)
                    selections.append(sel)
                    break
            else:
                return False, None
        return True, Embedding(tuple(index_map), tuple(selections))
    n = min(len(a), len(b))
    selections = []
    for i in range(n):
        small, big = a[i], b[i]
        if not small:
            return False, None
        if rel is Relation.ONE_EXTRACTION and len(small) != 1:
            return False, None
        if rel is Relation.STRICT_EXTRACTION and len(small) >= len(big):
            return False, None
        contiguous = rel in (Relation.INTERVAL_CLOSED_EXTRACTION, Relation.ONE_EXTRACTION)
        sel = _subsequence_positions(small, big, contiguous)
        if sel is None:
            return False, None
        selections.append(sel)
    return True, Embedding(tuple(range(n)), tuple(selections))


def dominates(a: VectorSeqPrefix, b: VectorSeqPrefix) -> bool:
    """a <= b: same dimensions and coordinatewise smaller or equal."""
    for vec in (*a, *b):
        if any(c <= 0 for c in vec):
            raise ValueError("domination needs positive coordinates")
    for x, y in zip(a, b):
        if len(x) != len(y) or any(p > q for p, q in zip(x, y)):
            return False
    return True


def restrict(f: NumberSeqPrefix, M: OmegaSet) -> NumberSeqPrefix:
    keep = M.bits(len(f))
    return NumberSeqPrefix(tuple(v for v, k in zip(f, keep) if k), f.horizon)


# ---------------------------------------------------------------------------
# asymptotics of number sequences


@dataclass(frozen=True)
class Profile:
    """Asymptotic tag of a number sequence: for each residue class of the
    index modulo ``len(classes)``, whether the values on that class tend to
    infinity (``True``) or stay bounded (``False``)."""

    classes: tuple[bool, ...]

    def at(self, i: int) -> bool:
        return self.classes[i % len(self.classes)]


def profile_consistent(f: NumberSeqPrefix, p: Profile) -> bool:
    m = len(p.classes)
    for r, grows in enumerate(p.classes):
        vals = f.values[r::m]
        if len(vals) < 4:
            continue
        half = len(vals) // 2
        if grows and max(vals[half:]) <= max(vals[:half]):
            return False
    return True


def asym_equiv_check(f: NumberSeqPrefix, pf: Profile | None, g: NumberSeqPrefix, pg: Profile | None) -> Verdict3:
    """Are f and g bounded on exactly the same index sets?"""
    horizon = min(len(f), len(g))
    if pf is not None and pg is not None:
        for seq, prof in ((f, pf), (g, pg)):
            if not profile_consistent(seq, prof):
                raise TagMismatch("profile contradicted by the prefix")
        m = math.lcm(len(pf.classes), len(pg.classes))
        for r in range(m):
            if pf.at(r) != pg.at(r):
                witness = OmegaSet.lasso("", "".join("1" if i == r else "0" for i in range(m)))
                return Verdict3(FALSE, horizon, witness=witness)
        return Verdict3(TRUE, horizon, witness="matching profiles")
    if f.values == g.values and pf == pg and (pf is not None or f is g):
        return Verdict3(TRUE, horizon, witness="identical")
    return Verdict3(UNKNOWN, horizon)


# ---------------------------------------------------------------------------
# tends to infinity


@dataclass(frozen=True)
class VecFacts:
    """Declared asymptotic facts about a vector sequence (trusted, then
    cross-checked on the prefix)."""

    ttoinf: bool | None = None
    periodic: bool = False
    dim_bound: int | None = None
    dims_unbounded: bool | None = None
    coord_bound: int | None = None


def tends_to_infinity(v: VectorSeqPrefix, facts: VecFacts | None = None) -> Verdict3:
    """Every natural number occurs in only finitely many vectors."""
    horizon = len(v)
    if facts is None:
        return Verdict3(UNKNOWN, horizon)
    if facts.periodic or facts.coord_bound is not None:
        late = v.vectors[len(v) // 2 :]
        seen: dict[int, int] = {}
        for i, vec in enumerate(late):
            for c in set(vec):
                if c in seen:
                    return Verdict3(FALSE, horizon, witness=f"value {c} repeats in vectors {seen[c]} and {i}")
                seen[c] = i
        return Verdict3(UNKNOWN, horizon)
    if facts.ttoinf:
        mins = [min(vec) for vec in v if vec]
        if len(mins) >= 2 and mins[-1] <= mins[0]:
            raise TagMismatch("declared tending to infinity but minimum coordinates do not grow")
        return Verdict3(TRUE, horizon, witness=f"minimum coordinate reaches {mins[-1] if mins else 0}")
    return Verdict3(UNKNOWN, horizon)


# ---------------------------------------------------------------------------
# witness constructions


def beta_prime(g: VectorSeqPrefix) -> VectorSeqPrefix:
    """Drop the last coordinate and cap the j-th coordinate (1-based) at j."""
    out = []
    for vec in g:
        if len(vec) < 2:
            raise ValueError("beta_prime needs vectors of dimension >= 2")
        if any(c <= 0 for c in vec):
            raise ValueError("beta_prime needs positive coordinates")
        out.append(tuple(min(c, j) for j, c in enumerate(vec[:-1], start=1)))
    return VectorSeqPrefix(tuple(out), g.horizon)


def drop_last(g: VectorSeqPrefix) -> VectorSeqPrefix:
    return VectorSeqPrefix(tuple(vec[:-1] for vec in g), g.horizon)


def match_one_extraction(bp: VectorSeqPrefix, g: NumberSeqPrefix) -> NumberSeqPrefix:
    """For each i, the largest coordinate of bp[i] that is <= g[i]."""
    if len(bp) != len(g):
        raise ValueError("lengths differ")
    out = []
    for i, (vec, bound) in enumerate(zip(bp, g)):
        admissible = [c for c in vec if c <= bound]
        if not admissible:
            raise ValueError(f"vector {i} has no coordinate <= {bound}")
        out.append(max(admissible))
    return NumberSeqPrefix(tuple(out), g.horizon)


@dataclass(frozen=True)
class BlockWitness:
    """Kept vectors (by index) and the [start, end) block kept in each."""

    kept: tuple[int, ...]
    blocks: tuple[tuple[int, int], ...]
    result: VectorSeqPrefix
    bound: int
    # the sub-sequence of the input made of the kept vectors
    source: VectorSeqPrefix


def lemma32_witness(a: VectorSeqPrefix, N: int) -> BlockWitness | None:
    """Mark coordinates <= N and keep, per vector, the leftmost longest block of
    consecutive marked coordinates; vectors without marks are dropped."""
    kept, blocks, result = [], [], []
    for i, vec in enumerate(a):
        best = None
        start = None
        for j, c in enumerate((*vec, N + 1)):
            if c <= N:
                if start is None:
                    start = j
            elif start is not None:
                if best is None or j - start > best[1] - best[0]:
                    best = (start, j)
                start = None
        if best is None:
            continue
        kept.append(i)
        blocks.append(best)
        result.append(vec[best[0] : best[1]])
    if not kept:
        return None
    source = VectorSeqPrefix(tuple(a[i] for i in kept), a.horizon)
    return BlockWitness(tuple(kept), tuple(blocks), VectorSeqPrefix(tuple(result), a.horizon), N, source)


def condition1_witness(a: VectorSeqPrefix, thresholds: Sequence[int]) -> BlockWitness | None:
    """Sub-extraction keeping the coordinates of vector i above thresholds[i]
    (a rising threshold makes the kept part tend to infinity)."""
    kept, blocks, result = [], [], []
    for i, vec in enumerate(a):
        sel = tuple(c for c in vec if c > thresholds[i])
        if sel:
            kept.append(i)
            blocks.append((0, len(vec)))
            result.append(sel)
    if not kept:
        return None
    source = VectorSeqPrefix(tuple(a[i] for i in kept), a.horizon)
    return BlockWitness(tuple(kept), tuple(blocks), VectorSeqPrefix(tuple(result), a.horizon), -1, source)


def dims_verdict(v: VectorSeqPrefix, facts: VecFacts | None) -> Verdict3:
    """Unboundedness of the dimension sequence from declared facts."""
    d = dims(v).values
    if facts is not None and facts.dim_bound is not None:
        if d and max(d) > facts.dim_bound:
            raise TagMismatch("dimension exceeds declared bound")
        return Verdict3(FALSE, len(v), witness=f"dimensions bounded by {facts.dim_bound}")
    if facts is not None and facts.dims_unbounded:
        grow = _growth_witness(d)
        return Verdict3(TRUE if grow else UNKNOWN, len(v), witness=grow)
    return Verdict3(UNKNOWN, len(v))


def prefix_growth(values: Sequence[int], records: int = 3) -> bool:
    """At least ``records`` strict record increases, the last one in the
    second half of the prefix."""
    grow = _growth_witness(values, records + 1)
    return bool(grow) and grow[-1] >= len(values) // 2


# ---------------------------------------------------------------------------
# asymptotic mix


@dataclass(frozen=True)
class MixFacts:
    coord_bound: int | None = None
    ttoinf: bool = False


def ladder_certificate(a: VectorSeqPrefix, b: VectorSeqPrefix, slope: float = 0.5, slack: int = 1) -> bool:
    """b[i] contains every value 1..m_i with m_i >= slope * max(a[i]) - slack.

    Under this condition the maximal coordinate of b[i] below any f_i (with
    f a 1-extraction of a) is at least min(f_i, slope*f_i - slack), which is
    the argument used for the explicit beta-prime construction."""
    for x, y in zip(a, b):
        values = set(y)
        m = 0
        while m + 1 in values:
            m += 1
        if m == 0 or m < slope * max(x) - slack:
            return False
    return True


def asymptotic_mix_check(
    a: VectorSeqPrefix,
    b: VectorSeqPrefix,
    budget: int = 12,
    facts_a: MixFacts | None = None,
    facts_b: MixFacts | None = None,
) -> Verdict3:
    """Is every 1-extraction of a asymptotically equivalent to some
    1-extraction of b? Only certificates and counterexamples are reported."""
    for vec in (*a, *b):
        if not vec:
            raise ValueError("asymptotic mix is undefined with empty vectors")
    n = min(len(a), len(b), max(budget, 1))
    a_, b_ = VectorSeqPrefix(a.vectors[:n], a.horizon), VectorSeqPrefix(b.vectors[:n], b.horizon)
    if a_.vectors == b_.vectors and facts_a == facts_b:
        return Verdict3(TRUE, n, witness="identity: pick the same coordinate")
    fa, fb = facts_a or MixFacts(), facts_b or MixFacts()
    for bounded, growing, bseq, gseq in ((fa, fb, a_, b_), (fb, fa, b_, a_)):
        if bounded.coord_bound is not None and growing.ttoinf:
            if max(max(v) for v in bseq) > bounded.coord_bound:
                raise TagMismatch("coordinate exceeds declared bound")
            mins = [min(v) for v in gseq]
            if mins[-1] > bounded.coord_bound and mins[-1] > mins[0]:
                return Verdict3(FALSE, n, witness="one side bounded, every 1-extraction of the other tends to infinity")
    if ladder_certificate(a_, b_):
        return Verdict3(TRUE, n, witness="ladder: match each value by the largest smaller coordinate")
    return Verdict3(UNKNOWN, n)


def one_extractions(a: VectorSeqPrefix, limit: int = 10**5):
    """Enumerate 1-extractions of a prefix (at most ``limit``)."""
    count = 0
    for choice in product(*a.vectors):
        yield NumberSeqPrefix(tuple(choice), a.horizon)
        count += 1
        if count >= limit:
            return
