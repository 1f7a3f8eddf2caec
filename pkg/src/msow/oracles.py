"""Brute-force oracles and the seeded property suites built on them.

The oracles here are deliberately naive (plain Python loops over explicit
members) so that they share no code with the vectorised operations they check.
"""

from __future__ import annotations

import bisect
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .omegaset import FALSE, TRUE, UNKNOWN, GapTag, OmegaSet, Verdict3
from .vecseq import (
    Relation,
    VecFacts,
    VectorSeqPrefix,
    asymptotic_mix_check,
    beta_prime,
    check_U2,
    check_W,
    complete,
    condition1_witness,
    decode_numseq,
    decode_vecseq,
    dims,
    dims_verdict,
    dominates,
    drop_last,
    encode_numseq,
    isolate,
    lemma32_witness,
    match_one_extraction,
    numseq,
    prefix_growth,
    relation_check,
    satisfies_star,
    vecseq,
)
from .words import (
    FLAT,
    LassoWord,
    PaddedWord,
    check_up_ignoring_flats,
    gap_function,
    pad_word,
    project,
    ult_const_dim,
)

DEFAULT_SEED = 42

# the worked beta-prime example
GAMMA = vecseq([(2, 1), (3, 2, 1), (4, 3, 2, 1), (5, 4, 3, 2, 1), (6, 5, 4, 3, 2, 1)])
BETA_PRIME = vecseq([(1,), (1, 2), (1, 2, 2), (1, 2, 3, 2), (1, 2, 3, 3, 2)])
GAMMA_LOW = vecseq([(1, 1), (2, 1, 1), (3, 2, 1, 1), (4, 3, 2, 1, 1), (5, 4, 3, 2, 1, 1)])
G_EXAMPLE = numseq([1, 2, 1, 4, 1])
H_EXAMPLE = numseq([1, 2, 1, 3, 1])


# ---------------------------------------------------------------------------
# naive reference implementations


def brute_counts(R: set[int], I: set[int], H: int) -> list[int]:
    rs = sorted(r for r in R if r < H)
    return [sum(1 for x in range(a + 1, b) if x in I) for a, b in zip(rs, rs[1:])]


def brute_vectors(R: set[int], I: set[int], H: int) -> list[tuple[int, ...]]:
    rs = sorted(r for r in R if r < H)
    out = []
    for a, b in zip(rs, rs[1:]):
        runs, run = [], 0
        for x in range(a + 1, b):
            if x in I:
                run += 1
            elif run:
                runs.append(run)
                run = 0
        if run:
            runs.append(run)
        out.append(tuple(runs))
    return out


def brute_isolate(I: set[int]) -> set[int]:
    return {x for x in I if not (x % 2 == 0 and (x + 1 in I or x - 1 in I))}


def brute_complete(R: set[int], I: set[int]) -> set[int]:
    J = set(I)
    members = sorted(I)
    rs = sorted(R)
    for x, y in zip(members, members[1:]):
        k = bisect.bisect_right(rs, x)
        if k == len(rs) or rs[k] >= y:
            J.update(range(x + 1, y - 1))
    return J


def intervals(S: set[int]) -> list[tuple[int, int]]:
    """Maximal runs of consecutive members as (start, length)."""
    out = []
    for x in sorted(S):
        if out and out[-1][0] + out[-1][1] == x:
            out[-1] = (out[-1][0], out[-1][1] + 1)
        else:
            out.append((x, 1))
    return out


def brute_pad(w: LassoWord, f: Callable[[int], int], H: int) -> list[str]:
    """w_1 flat^f(0) w_2 flat^f(1) ... cut at length H."""
    out, i = [], 0
    while len(out) < H:
        out.append(w.letter_at(i))
        out.extend([FLAT] * f(i))
        i += 1
    return out[:H]


def members(s: OmegaSet, H: int) -> set[int]:
    return {int(x) for x in s.members_below(H)}


# ---------------------------------------------------------------------------
# reporting


@dataclass
class PropertyResult:
    name: str
    passed: int = 0
    total: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, detail: str = "") -> None:
        self.total += 1
        if ok:
            self.passed += 1
        elif len(self.failures) < 3:
            self.failures.append(detail)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def text(self) -> str:
        line = f"  {'PASS' if self.ok else 'FAIL'} {self.name}: {self.passed}/{self.total}"
        for f in self.failures:
            line += f"\n      {f}"
        return line


@dataclass
class SuiteReport:
    suite: str
    seed: int
    results: list[PropertyResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def text(self) -> str:
        head = f"suite {self.suite} (seed {self.seed}): {'PASS' if self.ok else 'FAIL'}"
        return "\n".join([head, *(r.text() for r in self.results)])


# ---------------------------------------------------------------------------
# random inputs


def random_pair(rng: np.random.Generator, H: int) -> tuple[set[int], set[int]]:
    """Disjoint finite R, I below H with a few R-members and dense I."""
    pr = rng.uniform(0.005, 0.1)
    pi = rng.uniform(0.2, 0.95)
    rb = rng.random(H) < pr
    rb[0] = rb[0] or rng.random() < 0.5
    ib = (rng.random(H) < pi) & ~rb
    return set(np.flatnonzero(rb).tolist()), set(np.flatnonzero(ib).tolist())


def random_lasso_set(rng: np.random.Generator, max_stem: int = 8, max_period: int = 8) -> OmegaSet:
    stem = "".join(rng.choice(["0", "1"], size=int(rng.integers(0, max_stem + 1))))
    period = "".join(rng.choice(["0", "1"], size=int(rng.integers(1, max_period + 1))))
    return OmegaSet.lasso(stem, period)


def random_lasso_word(rng: np.random.Generator, alphabet=("a", "b", "c"), max_stem: int = 6, max_loop: int = 6) -> LassoWord:
    stem = "".join(rng.choice(list(alphabet), size=int(rng.integers(0, max_stem + 1))))
    loop = "".join(rng.choice(list(alphabet), size=int(rng.integers(1, max_loop + 1))))
    return LassoWord.of(stem, loop, alphabet)


# ---------------------------------------------------------------------------
# encoding consistency (decode, isolation, completion)


def encoding_suite(seed: int = DEFAULT_SEED, count: int = 500, H: int = 2000) -> SuiteReport:
    rng = np.random.default_rng(seed)
    p_decode = PropertyResult("decode matches brute-force interval scan")
    p_sums = PropertyResult("coordinate sums equal decoded counts")
    p_iso_rule = PropertyResult("isolate equals the direct removal rule")
    p_iso_ones = PropertyResult("isolation yields all-1 coordinates")
    p_iso_density = PropertyResult("isolation keeps max(1, floor(l/2)) per interval")
    p_iso_odd = PropertyResult("isolation keeps ceil(l/2) per odd-start interval")
    p_comp_rule = PropertyResult("complete equals the direct filling rule")
    p_comp_star = PropertyResult("completion satisfies (*)")
    p_comp_dims = PropertyResult("completion preserves dimensions")
    for _ in range(count):
        Rm, Im = random_pair(rng, H)
        R, I = OmegaSet.finite(Rm), OmegaSet.finite(Im)
        v = decode_vecseq(R, I, H)
        n = decode_numseq(R, I, H)
        p_decode.record(list(v.vectors) == brute_vectors(Rm, Im, H) and list(n.values) == brute_counts(Rm, Im, H))
        p_sums.record([sum(x) for x in v] == list(n.values))

        Ip = isolate(I - R)
        ipm = members(Ip, H + 2)
        p_iso_rule.record(ipm == brute_isolate(Im - Rm))
        vi = decode_vecseq(R, Ip, H)
        p_iso_ones.record(all(c == 1 for x in vi for c in x))
        dense = odd = True
        for start, length in intervals(Im - Rm):
            kept = sum(1 for x in range(start, start + length) if x in ipm)
            dense &= kept >= max(1, length // 2)
            if start % 2:
                odd &= kept >= math.ceil(length / 2)
        p_iso_density.record(dense)
        p_iso_odd.record(odd)

        J = complete(R, I, H)
        jm = members(J, H + 2)
        p_comp_rule.record(jm == brute_complete(Rm, Im))
        p_comp_star.record(satisfies_star(R, J, H))
        p_comp_dims.record(dims(decode_vecseq(R, J, H)).values == dims(v).values)
    results = [p_decode, p_sums, p_iso_rule, p_iso_ones, p_iso_density, p_iso_odd, p_comp_rule, p_comp_star, p_comp_dims]
    return SuiteReport("encoding", seed, results)


def literal_isolation_density(seed: int = DEFAULT_SEED, count: int = 500, H: int = 2000) -> PropertyResult:
    """The ceil(l/2) density bound on every interval, regardless of where it
    starts. An even-start interval of odd length keeps only floor(l/2)."""
    rng = np.random.default_rng(seed)
    res = PropertyResult("isolation keeps ceil(l/2) on every interval")
    for _ in range(count):
        Rm, Im = random_pair(rng, H)
        ipm = brute_isolate(Im - Rm)
        bad = [
            (s, ln)
            for s, ln in intervals(Im - Rm)
            if sum(1 for x in range(s, s + ln) if x in ipm) < math.ceil(ln / 2)
        ]
        res.record(not bad, f"interval (start, length) {bad[0]}" if bad else "")
    return res


# ---------------------------------------------------------------------------
# U versus U2


def star_construction(witness: Callable[[int, int], set[int]], rounds: int) -> tuple[set[int], set[int], list[set[int]]]:
    """x_0 = 0 and x_{n+1} = max X_{n+1} where X_{n+1} has >= n members past
    x_n; I collects the members of X_{n+1} strictly between x_n and x_{n+1}."""
    xs, I, used = [0], set(), []
    for n in range(rounds):
        X = witness(n, xs[-1])
        if sum(1 for x in X if x > xs[-1]) < n:
            raise ValueError("witness too small")
        nxt = max(X)
        I.update(x for x in X if xs[-1] < x < nxt)
        used.append(X)
        xs.append(nxt)
    return set(xs), I, used


def _letter_witness(word: LassoWord, letter: str) -> Callable[[int, int], set[int]]:
    def witness(n, after):
        out, x = set(), after + 1
        while len(out) < n + 1:
            if word.letter_at(x) == letter:
                out.add(x)
            x += 1
        return out

    return witness


def lemma21_suite(seed: int = DEFAULT_SEED, count: int = 60) -> SuiteReport:
    rng = np.random.default_rng(seed)
    p_defined = PropertyResult("(*) witness: R infinite-like and disjoint from I")
    p_cover = PropertyResult("(*) witness: I-positions of each R-gap lie in one witness set")
    p_phi = PropertyResult("(*) witness: every used set satisfies phi")
    p_grow = PropertyResult("(*) witness: counts reach n in gap n")
    p_u2 = PropertyResult("check_U2 on encoded growing/bounded counts")
    p_lasso = PropertyResult("check_U2 is FALSE on lasso pairs")
    for _ in range(count):
        word = random_lasso_word(rng)
        letter = word.loop[int(rng.integers(0, len(word.loop)))]
        R, I, used = star_construction(_letter_witness(word, letter), 12)
        rs = sorted(R)
        p_defined.record(not (R & I) and len(rs) == 13)
        cover = phi = True
        for n, (a, b) in enumerate(zip(rs, rs[1:])):
            gap = {x for x in I if a < x < b}
            cover &= gap <= used[n]
            phi &= all(word.letter_at(x) == letter for x in used[n])
        p_cover.record(cover)
        p_phi.record(phi)
        p_grow.record(all(c >= n for n, c in enumerate(brute_counts(R, I, rs[-1] + 1))))

        slope = int(rng.integers(1, 4))
        k = int(rng.integers(1, 6))
        Rg, Ig = encode_numseq(lambda i, s=slope: s * i, GapTag.UNBOUNDED_GAPS)
        Rb, Ib = encode_numseq(lambda i, k=k: i % k + 1, GapTag.BOUNDED_GAPS)
        p_u2.record(check_U2(Rg, Ig, 2000).value is TRUE and check_U2(Rb, Ib, 2000).value is FALSE)

        A, B = random_lasso_set(rng), random_lasso_set(rng)
        p_lasso.record(check_U2(A, B - A, 2000).value is FALSE)
    return SuiteReport("lemma21", seed, [p_defined, p_cover, p_phi, p_grow, p_u2, p_lasso])


# ---------------------------------------------------------------------------
# W versus U2 and the isolation step


def lemma22_suite(seed: int = DEFAULT_SEED, count: int = 200, H: int = 1000) -> SuiteReport:
    rng = np.random.default_rng(seed)
    report = encoding_suite(seed, count, H)
    keep = {
        "isolate equals the direct removal rule",
        "isolation yields all-1 coordinates",
        "isolation keeps max(1, floor(l/2)) per interval",
        "isolation keeps ceil(l/2) per odd-start interval",
        "coordinate sums equal decoded counts",
    }
    results = [r for r in report.results if r.name in keep]
    p_sum_dim = PropertyResult("after isolation dimension = coordinate sum >= count/3")
    p_w = PropertyResult("W(X) agrees with U2(X, complement of X)")
    p_gap = PropertyResult("counts of the complement are gaps minus one")
    for _ in range(count):
        Rm, Im = random_pair(rng, H)
        R, I = OmegaSet.finite(Rm), OmegaSet.finite(Im)
        counts = decode_numseq(R, I, H).values
        v = decode_vecseq(R, isolate(I), H)
        p_sum_dim.record(all(len(x) == sum(x) and 3 * len(x) >= c for x, c in zip(v, counts)))
    sets = [OmegaSet.procedural(g) for g in _registry_sets()] + [random_lasso_set(rng) for _ in range(count // 4)]
    for X in sets:
        w = check_W(X, 4096).value
        u = check_U2(X, X.complement(), 4096).value
        p_w.record(w is u or UNKNOWN in (w, u), f"{X.text()}: W={w.name} U2={u.name}")
        m = sorted(members(X, 4096))
        comp = OmegaSet.finite(set(range(4096)) - set(m))
        gaps = [b - a - 1 for a, b in zip(m, m[1:])]
        p_gap.record(list(decode_numseq(OmegaSet.finite(m), comp, 4096).values) == gaps)
    return SuiteReport("lemma22", seed, [*results, p_sum_dim, p_w, p_gap])


def _registry_sets():
    from .omegaset import Multiples, PiDigits, Pow2, Squares

    return [Pow2(), Squares(), Multiples(10), Multiples(3), PiDigits()]


# ---------------------------------------------------------------------------
# dimension witnesses on families of vector sequences


@dataclass(frozen=True)
class Family:
    kind: str
    prefix: VectorSeqPrefix
    facts: VecFacts
    # the bound used by condition (2), when the family has one
    bound: int | None = None


def make_family(kind: str, rng: np.random.Generator, length: int) -> Family:
    if kind == "bounded_dim":
        D = int(rng.integers(1, 5))
        rate = int(rng.integers(1, 4))
        vecs = [
            tuple(int(rate * i + 1 + rng.integers(0, 3)) for _ in range(int(rng.integers(1, D + 1))))
            for i in range(length)
        ]
        return Family(kind, vecseq(vecs, length), VecFacts(dim_bound=D, ttoinf=True))
    if kind == "growing_dim":
        B = int(rng.integers(1, 5))
        step = int(rng.integers(1, 3))
        vecs = [tuple(int(rng.integers(1, B + 1)) for _ in range(1 + i // step)) for i in range(length)]
        return Family(kind, vecseq(vecs, length), VecFacts(dims_unbounded=True, coord_bound=B), bound=B)
    # mixed: bounded coordinates interleaved with coordinates above i; the
    # bounded ones come in runs whose length grows only in some variants
    B = int(rng.integers(1, 4))
    runs = bool(rng.integers(0, 2))
    vecs = []
    for i in range(length):
        vec = []
        for _ in range(1 + i // 2):
            if runs:
                vec.extend(int(rng.integers(1, B + 1)) for _ in range(1 + i // 4))
            else:
                vec.append(int(rng.integers(1, B + 1)))
            vec.append(int(B + 1 + i + rng.integers(0, 3)))
        vecs.append(tuple(vec))
    return Family(kind, vecseq(vecs, length), VecFacts(dims_unbounded=True), bound=B)


FAMILY_KINDS = ("bounded_dim", "growing_dim", "mixed")


def lemma32_verdicts(fam: Family) -> tuple[Verdict3, Verdict3, list]:
    """(dimension unbounded, a witness for condition (1) or (2) exists,
    the witnesses constructed)."""
    v = fam.prefix
    dim = dims_verdict(v, fam.facts)
    built = []
    if fam.facts.dim_bound is not None:
        # every sub-extraction has dimension at most that of its source
        return dim, Verdict3(FALSE, len(v), witness="dimension bounded"), built
    verdict = Verdict3(UNKNOWN, len(v))
    if fam.bound is not None:
        w2 = lemma32_witness(v, fam.bound)
        if w2 is not None:
            built.append(w2)
            if prefix_growth(dims(w2.result).values):
                verdict = Verdict3(TRUE, len(v), witness=f"condition (2) with bound {fam.bound}")
    if verdict.value is UNKNOWN:
        thresholds = [fam.bound if fam.bound is not None else 0] * len(v)
        w1 = condition1_witness(v, thresholds)
        if w1 is not None:
            built.append(w1)
            mins = [min(x) for x in w1.result]
            half = len(mins) // 2
            if prefix_growth(dims(w1.result).values) and half and min(mins[half:]) > min(mins[:half]):
                verdict = Verdict3(TRUE, len(v), witness="condition (1) above the bound")
    return dim, verdict, built


def lemma32_suite(seed: int = DEFAULT_SEED, count: int = 200, length: int = 24) -> SuiteReport:
    rng = np.random.default_rng(seed)
    p_agree = PropertyResult("dimension verdict and witness verdict never contradict")
    p_closed = PropertyResult("lemma32_witness is an interval-closed sub-extraction")
    p_bound = PropertyResult("lemma32_witness coordinates are <= N")
    p_longest = PropertyResult("lemma32_witness keeps a longest marked block")
    p_decided = PropertyResult("families with known truth get decided verdicts")
    for i in range(count):
        fam = make_family(FAMILY_KINDS[i % 3], rng, length)
        dim, wit, _ = lemma32_verdicts(fam)
        p_agree.record({dim.value, wit.value} != {TRUE, FALSE}, f"{fam.kind}: {dim.value.name} vs {wit.value.name}")
        p_decided.record(dim.value is not UNKNOWN and wit.value is dim.value, fam.kind)
        N = int(rng.integers(1, 6))
        w = lemma32_witness(fam.prefix, N)
        if w is None:
            ok = all(c > N for x in fam.prefix for c in x)
            p_closed.record(ok)
            p_bound.record(ok)
            p_longest.record(ok)
            continue
        ok, _ = relation_check(w.result, w.source, Relation.INTERVAL_CLOSED_EXTRACTION)
        p_closed.record(ok)
        p_bound.record(all(c <= N for x in w.result for c in x))
        p_longest.record(all(len(r) == _longest_run(s, N) for r, s in zip(w.result, w.source)))
    return SuiteReport("lemma32", seed, [p_agree, p_closed, p_bound, p_longest, p_decided])


def _longest_run(vec, N):
    best = run = 0
    for c in vec:
        run = run + 1 if c <= N else 0
        best = max(best, run)
    return best


# ---------------------------------------------------------------------------
# the explicit beta-prime construction


def random_gamma(rng: np.random.Generator, length: int) -> VectorSeqPrefix:
    """Dimensions and every coordinate grow with the index."""
    vecs = []
    for i in range(length):
        d = 2 + i + int(rng.integers(0, 2))
        vecs.append(tuple(int(i + 1 + rng.integers(0, 4)) for _ in range(d)))
    return vecseq(vecs, length)


def lemma34_suite(seed: int = DEFAULT_SEED, count: int = 100, length: int = 10) -> SuiteReport:
    rng = np.random.default_rng(seed)
    p_worked = PropertyResult("worked example arrays reproduced")
    p_dom = PropertyResult("beta_prime is dominated by the drop-last extraction")
    p_cap = PropertyResult("beta_prime coordinate j equals min(original, j)")
    p_strict = PropertyResult("drop-last is a strict extraction")
    p_match_le = PropertyResult("match is pointwise <= its argument")
    p_match_in = PropertyResult("match values are coordinates of beta_prime")
    p_threshold = PropertyResult("match reaches N wherever dimension, coordinates and f reach N")
    p_mix = PropertyResult("asymptotic mix never refuted for gamma' <= gamma")

    p_worked.record(beta_prime(GAMMA).vectors == BETA_PRIME.vectors)
    p_worked.record(match_one_extraction(BETA_PRIME, G_EXAMPLE).values == H_EXAMPLE.values)
    p_worked.record(dominates(GAMMA_LOW, GAMMA))
    p_worked.record(asymptotic_mix_check(GAMMA_LOW, BETA_PRIME).value is TRUE)

    for _ in range(count):
        g = random_gamma(rng, length)
        bp = beta_prime(g)
        p_dom.record(dominates(bp, drop_last(g)))
        p_cap.record(all(bp[i][j - 1] == min(g[i][j - 1], j) for i in range(len(g)) for j in range(1, len(g[i]))))
        p_strict.record(relation_check(drop_last(g), g, Relation.STRICT_EXTRACTION)[0])
        low = vecseq([tuple(int(rng.integers(1, c + 1)) for c in x) for x in g], length)
        f = numseq([x[int(rng.integers(0, len(x)))] for x in low])
        h = match_one_extraction(bp, f)
        p_match_le.record(all(a <= b for a, b in zip(h, f)))
        p_match_in.record(all(a in x for a, x in zip(h, bp)))
        ok = True
        for i in range(len(g)):
            for N in range(1, max(f) + 1):
                if len(bp[i]) >= N and min(g[i]) >= N and f[i] >= N:
                    ok &= h[i] >= N
        p_threshold.record(ok)
        p_mix.record(asymptotic_mix_check(low, bp).value is not FALSE)
    return SuiteReport("lemma34", seed, [p_worked, p_dom, p_cap, p_strict, p_match_le, p_match_in, p_threshold, p_mix])


# ---------------------------------------------------------------------------
# padding and projection


def padding_suite(seed: int = DEFAULT_SEED, count: int = 100, H: int = 600) -> SuiteReport:
    rng = np.random.default_rng(seed)
    p_direct = PropertyResult("pad_word matches direct construction")
    p_identity = PropertyResult("project(pad_word(w, f)) = w")
    p_positions = PropertyResult("letter positions strictly increase")
    p_ucd = PropertyResult("ult_const_dim TRUE on (letters, flats) for identity and pow2")
    p_up = PropertyResult("check_up_ignoring_flats on periodic and power-of-two images")
    for _ in range(count):
        w = random_lasso_word(rng)
        k = int(rng.integers(0, 4))
        for name in ("constant", "identity", "pow2"):
            f = gap_function(name, k)
            padded = pad_word(w, f, H)
            p_direct.record(list(padded) == brute_pad(w, f, H))
            proj = project(padded).letters
            p_identity.record(proj == w.prefix(len(proj)) and len(proj) >= 1)
            pw = PaddedWord(w, f)
            pos = [pw.position(i) for i in range(len(proj))]
            p_positions.record(all(a < b for a, b in zip(pos, pos[1:])) and [padded[p] != FLAT for p in pos] == [True] * len(pos))
            if name != "constant":
                R = pw.letters_set(frozenset(w.alphabet))
                I = pw.letter_set(FLAT)
                p_ucd.record(ult_const_dim(R, I).value is TRUE, f"{pw.text()}")
                periodic = pw.image(OmegaSet.lasso("", "01"))
                pow2 = pw.image(OmegaSet.procedural(_registry_sets()[0]))
                p_up.record(
                    check_up_ignoring_flats(pw, periodic).value is TRUE
                    and check_up_ignoring_flats(pw, pow2).value is FALSE
                    and check_up_ignoring_flats(pw, I).value is FALSE
                )
    return SuiteReport("padding", seed, [p_direct, p_identity, p_positions, p_ucd, p_up])


SUITES = {
    "lemma21": lemma21_suite,
    "lemma22": lemma22_suite,
    "lemma32": lemma32_suite,
    "lemma34": lemma34_suite,
    "padding": padding_suite,
    "encoding": encoding_suite,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](seed)
