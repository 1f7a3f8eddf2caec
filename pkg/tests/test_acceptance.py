"""One test per acceptance criterion, each at its stated tolerance. Every test
prints a PASS/FAIL line; the lines are repeated in the terminal summary."""

import time

import numpy as np
import pytest

from msow.corpus import differential_corpus, mutation_report, random_formulas
from msow.evaluator import EvalConfig
from msow.formula import (
    U2,
    Dialect,
    QuantP,
    QuantU,
    W,
    dialect_of,
    free_variables,
    is_sentence,
    iter_nodes,
)
from msow.omegaset import FALSE, TRUE, UNKNOWN, parse_set
from msow.oracles import (
    BETA_PRIME,
    FAMILY_KINDS,
    G_EXAMPLE,
    GAMMA,
    H_EXAMPLE,
    encoding_suite,
    lemma32_verdicts,
    lemma32_witness,
    literal_isolation_density,
    make_family,
    padding_suite,
)
from msow.rewrite import REWRITES, TARGET
from msow.vecseq import (
    Relation,
    beta_prime,
    check_W,
    match_one_extraction,
    relation_check,
)

SEED = 42

W_GOLDEN = [
    ("multiples of 10", "proc{name=multiples;k=10}", FALSE),
    ("powers of two", "proc{name=pow2}", TRUE),
    ("pi digits", "proc{name=pidigits}", FALSE),
]

BASE_CFG = EvalConfig(H=4096, P=64, F=64, budget=8_000)


def _w_verdicts(horizon):
    return {name: check_W(parse_set(text), horizon).value for name, text, _ in W_GOLDEN}


def test_criterion_1_w_golden(criterion):
    start = time.perf_counter()
    got = _w_verdicts(10**6)
    seconds = time.perf_counter() - start
    ok = all(got[name] is expected for name, _, expected in W_GOLDEN) and seconds < 5
    detail = ", ".join(f"{k}={v.name}" for k, v in got.items()) + f"; {seconds:.2f}s"
    assert criterion("1 W-predicate golden tests at horizon 10^6", ok, detail)


def test_criterion_2_beta_prime_arrays(criterion):
    bp = beta_prime(GAMMA)
    h = match_one_extraction(BETA_PRIME, G_EXAMPLE)
    ok = bp.vectors == BETA_PRIME.vectors and h.values == H_EXAMPLE.values
    assert criterion("2 beta-prime and matching arrays exact", ok, f"{list(bp.vectors)}; {list(h.values)}")


def test_criterion_3_encoding_suite(criterion):
    start = time.perf_counter()
    report = encoding_suite(SEED, count=500, H=2000)
    seconds = time.perf_counter() - start
    ok = report.ok and seconds < 10
    failed = [r.name for r in report.results if not r.ok]
    detail = f"{len(report.results)} properties x 500 prefixes, {seconds:.1f}s" + (f"; failed: {failed}" if failed else "")
    assert criterion("3 encoding consistency suite", ok, detail)


def test_criterion_3_literal_interval_bound(criterion):
    # The criterion also asks for ceil(l/2) kept points on every interval of
    # I. The removal rule keeps only floor(l/2) on an odd-length interval
    # starting at an even position ({4,5,6} keeps {5}), so this line stays red.
    res = literal_isolation_density(SEED, count=500, H=2000)
    detail = f"{res.passed}/{res.total} prefixes; first counterexample {res.failures[0] if res.failures else '-'}"
    assert criterion("3 isolation keeps ceil(l/2) on every interval (literal)", res.ok, detail)


def _lemma32_run(length):
    out = []
    for i in range(200):
        fam = make_family(FAMILY_KINDS[i % 3], np.random.default_rng([SEED, i]), length)
        out.append((fam, *lemma32_verdicts(fam)))
    return out


@pytest.fixture(scope="module")
def lemma32_base():
    return _lemma32_run(24)


def test_criterion_4_lemma32_oracle(criterion, lemma32_base):
    agree = closed = bounded = 0
    for fam, dim, wit, _ in lemma32_base:
        agree += {dim.value, wit.value} != {TRUE, FALSE}
        N = fam.bound if fam.bound is not None else 3
        w = lemma32_witness(fam.prefix, N)
        if w is None:
            ok = all(c > N for x in fam.prefix for c in x)
            closed += ok
            bounded += ok
            continue
        closed += relation_check(w.result, w.source, Relation.INTERVAL_CLOSED_EXTRACTION)[0]
        bounded += all(c <= N for x in w.result for c in x)
    n = len(lemma32_base)
    ok = agree == closed == bounded == n
    detail = f"no contradiction {agree}/{n}, interval-closed {closed}/{n}, bounded {bounded}/{n}"
    assert criterion("4 dimension vs witness verdicts and witness shape", ok, detail)


FORBIDDEN = {
    "u_to_u2": (QuantU,),
    "u2_to_u": (U2,),
    "w_to_u2": (W,),
    "u2_to_w": (U2, QuantU),
    "w_to_p": (W,),
    "p_to_u_padded": (QuantP,),
}


def test_criterion_5_rewrite_contracts(criterion):
    bad = []
    total = 0
    for name, fn in REWRITES.items():
        for f in random_formulas(name, count=200, seed=SEED):
            total += 1
            g = fn(f, ("a", "b", "c")) if name == "p_to_u_padded" else fn(f)
            dialect_ok = dialect_of(g) in (TARGET[name], Dialect.MSO)
            if name == "p_to_u_padded":
                vars_ok = is_sentence(f) and is_sentence(g)
            else:
                vars_ok = free_variables(g) == free_variables(f)
            clean = not any(isinstance(n, FORBIDDEN[name]) for n in iter_nodes(g))
            if not (dialect_ok and vars_ok and clean):
                bad.append(name)
    detail = f"{total - len(bad)}/{total} outputs meet dialect, variable and node contracts"
    assert criterion("5 rewrite dialect and variable contracts", not bad, detail)


@pytest.fixture(scope="module")
def differential_base():
    start = time.perf_counter()
    cases = differential_corpus(BASE_CFG, seed=SEED, count=30)
    return cases, time.perf_counter() - start


def test_criterion_6_differential_soundness(criterion, differential_base):
    cases, seconds = differential_base
    formulas = {c.formula for c in cases}
    instances = min(len(c.report.rows) for c in cases)
    contradictions = sum(len(c.report.contradictions) for c in cases)
    decided = sum(len(c.report.agreements) for c in cases)
    rows = sum(len(c.report.rows) for c in cases)
    mutant = mutation_report(BASE_CFG, seed=SEED, count=30)
    ok = (
        len(formulas) >= 20
        and instances >= 30
        and contradictions == 0
        and len(mutant.contradictions) > 0
        and seconds < 300
    )
    detail = (
        f"{len(formulas)} formulas x {instances} instances, {contradictions} contradictions, "
        f"{decided}/{rows} rows decided on both sides, mutant caught {len(mutant.contradictions)} times, {seconds:.0f}s"
    )
    assert criterion("6 differential soundness of every rewrite", ok, detail)


def test_criterion_7_padding(criterion):
    report = padding_suite(SEED, count=100)
    by_name = {r.name: r for r in report.results}
    detail = "; ".join(f"{r.name} {r.passed}/{r.total}" for r in report.results)
    ok = report.ok and by_name["project(pad_word(w, f)) = w"].total == 300
    assert criterion("7 padding, projection and ult_const_dim", ok, detail)


def _flipped(a, b):
    return {a, b} == {TRUE, FALSE}


def test_criterion_8_doubling_is_monotone(criterion, lemma32_base, differential_base):
    flips = []
    w_base, w_double = _w_verdicts(10**6), _w_verdicts(2 * 10**6)
    flips += [f"W {k}" for k in w_base if _flipped(w_base[k], w_double[k])]

    resolved = 0
    for (fam, dim, wit, _), (fam2, dim2, wit2, _) in zip(lemma32_base, _lemma32_run(48)):
        assert fam2.prefix.vectors[: len(fam.prefix)] == fam.prefix.vectors
        for a, b in ((dim.value, dim2.value), (wit.value, wit2.value)):
            if _flipped(a, b):
                flips.append(f"lemma32 {fam.kind}")
            resolved += a is UNKNOWN and b is not UNKNOWN

    cases, _ = differential_base
    doubled = differential_corpus(BASE_CFG.doubled(), seed=SEED, count=30)
    for base, again in zip(cases, doubled):
        for r1, r2 in zip(base.report.rows, again.report.rows):
            for a, b in ((r1.left.value, r2.left.value), (r1.right.value, r2.right.value)):
                if _flipped(a, b):
                    flips.append(f"{base.formula} {base.edge}")
                resolved += a is UNKNOWN and b is not UNKNOWN
        flips += [f"{again.formula} {again.edge} contradiction" for _ in again.report.contradictions]
    detail = f"{len(flips)} flips, {resolved} unknowns resolved" + (f"; {flips[:3]}" if flips else "")
    assert criterion("8 doubled horizons never flip a decided verdict", not flips, detail)
