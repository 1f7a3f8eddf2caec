import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msow.omegaset import (
    FALSE,
    TRUE,
    UNKNOWN,
    EncodingUndefined,
    GapTag,
    OmegaSet,
    TagMismatch,
    parse_set,
)
from msow.oracles import (
    BETA_PRIME,
    G_EXAMPLE,
    GAMMA,
    GAMMA_LOW,
    H_EXAMPLE,
    brute_complete,
    brute_counts,
    brute_isolate,
    brute_vectors,
    members,
)
from msow.vecseq import (
    MixFacts,
    Profile,
    Relation,
    VecFacts,
    adjacency_set,
    asym_equiv_check,
    asymptotic_mix_check,
    beta_prime,
    check_U2,
    check_W,
    complete,
    decode_numseq,
    decode_vecseq,
    dims,
    dominates,
    drop_last,
    encode_numseq,
    encode_vecseq,
    isolate,
    lemma32_witness,
    match_one_extraction,
    numseq,
    relation_check,
    restrict,
    satisfies_star,
    tends_to_infinity,
    vecseq,
)

H = 300


def fin(*xs):
    return OmegaSet.finite(xs)


@st.composite
def disjoint_pairs(draw, size=H):
    bits = draw(st.lists(st.sampled_from("RI.."), min_size=size, max_size=size))
    R = {i for i, c in enumerate(bits) if c == "R"}
    I = {i for i, c in enumerate(bits) if c == "I"}
    return R, I


vectors = st.lists(st.lists(st.integers(1, 9), min_size=1, max_size=6).map(tuple), min_size=1, max_size=8).map(vecseq)


# -- decoding ---------------------------------------------------------------


def test_decode_examples():
    assert decode_vecseq(fin(0, 10), fin(1, 2, 3, 5, 6, 9), 11).vectors == ((3, 2, 1),)
    assert decode_numseq(fin(0, 3, 5), fin(1, 2, 4), 6).values == (2, 1)
    assert decode_vecseq(fin(0, 3), fin(), 4).vectors == ((),)
    # odd numbers from 3 on, since 1 is itself a power of two
    odd = OmegaSet.lasso("000", "10")
    assert decode_numseq(parse_set("proc{name=pow2}"), odd, 2**10).values[:6] == (0, 1, 2, 4, 8, 16)


def test_decode_errors_and_flags():
    with pytest.raises(EncodingUndefined):
        decode_numseq(fin(1, 4), fin(4), 10)
    assert decode_vecseq(fin(3), fin(), 10).flag


@settings(max_examples=150, deadline=None)
@given(disjoint_pairs())
def test_decode_matches_brute(pair):
    R, I = pair
    Rs, Is = OmegaSet.finite(R), OmegaSet.finite(I)
    v = decode_vecseq(Rs, Is, H)
    n = decode_numseq(Rs, Is, H)
    if len(R) >= 2:
        assert list(v.vectors) == brute_vectors(R, I, H)
        assert list(n.values) == brute_counts(R, I, H)
        assert [sum(x) for x in v] == list(n)
        assert all(c > 0 for x in v for c in x)


def test_dims_examples():
    assert dims(vecseq([(2, 1), (3, 2, 1)])).values == (2, 3)
    assert dims(vecseq([()])).values == (0,)


# -- W and U2 ---------------------------------------------------------------


def test_check_W_examples():
    assert check_W(parse_set("proc{name=multiples;k=10}")).value is FALSE
    assert check_W(parse_set("proc{name=pow2}")).value is TRUE
    assert check_W(parse_set("proc{name=pidigits}")).value is FALSE
    assert check_W(OmegaSet.empty()).value is FALSE
    assert check_W(fin(1, 5, 200)).value is FALSE
    assert check_W(OmegaSet.lasso("", "0000000001")).value is FALSE


def test_check_U2_examples():
    assert check_U2(fin(1, 2), fin(2)).value is FALSE
    assert check_U2(OmegaSet.lasso("", "100"), OmegaSet.lasso("", "010")).value is FALSE
    # b-positions and a-positions of (ac)b(acac)b(acacac)b...
    R, I = encode_numseq(lambda i: i + 1, GapTag.UNBOUNDED_GAPS)
    assert check_U2(R, I).value is TRUE
    R, I = encode_numseq(lambda i: 3, GapTag.BOUNDED_GAPS)
    assert check_U2(R, I).value is FALSE


def test_encoders_round_trip():
    R, I = encode_vecseq(lambda i: tuple(range(i + 1, 0, -1)))
    v = decode_vecseq(R, I, 400)
    assert v.vectors[:4] == ((1,), (2, 1), (3, 2, 1), (4, 3, 2, 1))
    R, I = encode_numseq(lambda i: 2 * i)
    assert decode_numseq(R, I, 400).values[:4] == (0, 2, 4, 6)


# -- isolation and completion ----------------------------------------------


def test_isolate_examples():
    assert set(isolate(fin(4, 5, 6)).members_below(20)) == {5}
    odd = fin(1, 5, 9)
    assert set(isolate(odd).members_below(20)) == {1, 5, 9}


@settings(max_examples=150, deadline=None)
@given(disjoint_pairs())
def test_isolate_matches_brute(pair):
    _, I = pair
    got = members(isolate(OmegaSet.finite(I)), H + 2)
    assert got == brute_isolate(I)
    assert all(x - 1 not in got and x + 1 not in got for x in got)


def test_isolate_lasso_tail():
    I = OmegaSet.lasso("0110", "111000")
    got = isolate(I)
    assert got.is_lasso
    assert members(got, 400) == brute_isolate(members(I, 402)) & set(range(400))


def test_complete_examples():
    assert set(complete(fin(), fin(1, 5), 20).members_below(20)) == {1, 2, 3, 5}
    star = fin(1, 2, 3, 5)
    assert set(complete(fin(), star, 20).members_below(20)) == {1, 2, 3, 5}


@settings(max_examples=150, deadline=None)
@given(disjoint_pairs())
def test_complete_matches_brute(pair):
    R, I = pair
    Rs, Is = OmegaSet.finite(R), OmegaSet.finite(I)
    J = complete(Rs, Is, H)
    assert members(J, H) == brute_complete(R, I) & set(range(H))
    assert satisfies_star(Rs, J, H)
    if len(R) >= 2:
        assert dims(decode_vecseq(Rs, J, H)) .values == dims(decode_vecseq(Rs, Is, H)).values


def test_adjacency_set():
    assert adjacency_set(fin(), fin()).members_below(10).tolist() == list(range(10))
    R, I = OmegaSet.lasso("", "1000"), OmegaSet.lasso("", "0110")
    assert check_W(adjacency_set(R, I)).value is FALSE


# -- relations ----------------------------------------------------------------


def test_relation_examples():
    beta = drop_last(GAMMA)
    assert relation_check(beta, GAMMA, Relation.STRICT_EXTRACTION)[0]
    assert relation_check(GAMMA, GAMMA, Relation.EXTRACTION)[0]
    a, b = vecseq([(1,), (1, 2)]), vecseq([(2, 1), (3, 2, 1)])
    assert not relation_check(a, b, Relation.ONE_EXTRACTION)[0]
    ok, emb = relation_check(vecseq([(3, 1)]), vecseq([(3, 2, 1)]), Relation.SUB_EXTRACTION)
    assert ok and emb.selections == ((0, 2),)
    assert not relation_check(vecseq([(3, 1)]), vecseq([(3, 2, 1)]), Relation.INTERVAL_CLOSED_EXTRACTION)[0]


@settings(max_examples=100, deadline=None)
@given(vectors)
def test_relation_reflexive(a):
    for rel in (Relation.SUBSEQUENCE, Relation.EXTRACTION, Relation.INTERVAL_CLOSED_EXTRACTION, Relation.SUB_EXTRACTION):
        assert relation_check(a, a, rel)[0]
    assert not relation_check(a, a, Relation.STRICT_EXTRACTION)[0]


def test_dominates():
    assert dominates(GAMMA_LOW, GAMMA)
    assert dominates(GAMMA, GAMMA)
    assert not dominates(vecseq([(1,)]), vecseq([(1, 1)]))
    with pytest.raises(ValueError):
        dominates(vecseq([(0,)]), vecseq([(1,)]))


def test_restrict():
    f = numseq([1, 1, 3, 1, 5, 1])
    assert restrict(f, OmegaSet.lasso("", "10")).values == (1, 3, 5)
    assert restrict(f, OmegaSet.everything()).values == f.values
    # composition: keep evens, then every second of those = indices 0 mod 4
    assert restrict(restrict(f, OmegaSet.lasso("", "10")), OmegaSet.lasso("", "10")).values == restrict(
        f, OmegaSet.lasso("", "1000")
    ).values


def test_asym_equiv():
    f = numseq([1, 1, 3, 1, 5, 1, 7, 1])
    g = numseq([2, 1, 4, 1, 6, 1, 8, 1])
    h = numseq([1, 3, 1, 5, 1, 7, 1, 9])
    alt, alt_shift = Profile((True, False)), Profile((False, True))
    assert asym_equiv_check(f, alt, g, alt).value is TRUE
    neq = asym_equiv_check(f, alt, h, alt_shift)
    assert neq.value is FALSE
    assert list(neq.witness.members_below(6)) in ([0, 2, 4], [1, 3, 5])
    assert asym_equiv_check(f, None, f, None).value is TRUE
    assert asym_equiv_check(f, None, g, None).value is UNKNOWN
    with pytest.raises(TagMismatch):
        asym_equiv_check(numseq([5, 1, 4, 1, 3, 1, 2, 1]), alt, g, alt)


def test_tends_to_infinity():
    assert tends_to_infinity(GAMMA, VecFacts(periodic=True)).value is FALSE
    assert tends_to_infinity(vecseq([(n,) for n in range(1, 20)]), VecFacts(ttoinf=True)).value is TRUE
    assert tends_to_infinity(GAMMA).value is UNKNOWN


# -- lemma-level constructions ------------------------------------------------


def test_beta_prime_and_match():
    assert beta_prime(GAMMA).vectors == BETA_PRIME.vectors
    assert beta_prime(vecseq([(1, 1)])).vectors == ((1,),)
    assert match_one_extraction(BETA_PRIME, G_EXAMPLE).values == H_EXAMPLE.values
    with pytest.raises(ValueError):
        beta_prime(vecseq([(3,)]))
    big = numseq([100] * 5)
    assert match_one_extraction(BETA_PRIME, big).values == tuple(max(v) for v in BETA_PRIME)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.lists(st.integers(1, 9), min_size=2, max_size=6).map(tuple), min_size=1, max_size=8))
def test_beta_prime_properties(vs):
    g = vecseq(vs)
    bp = beta_prime(g)
    assert dominates(bp, drop_last(g))
    assert all(v[0] == 1 for v in bp)
    bound = numseq([len(v) for v in vs])
    out = match_one_extraction(bp, bound)
    assert all(o <= b and o in v for o, b, v in zip(out, bound, bp))


def test_lemma32_examples():
    w = lemma32_witness(vecseq([(7, 1, 1, 1, 9, 1, 1)]), 3)
    assert w.result.vectors == ((1, 1, 1),) and w.blocks == ((1, 4),)
    assert lemma32_witness(vecseq([(7, 8)]), 3) is None


@settings(max_examples=150, deadline=None)
@given(vectors, st.integers(1, 9))
def test_lemma32_properties(a, N):
    w = lemma32_witness(a, N)
    if w is None:
        assert all(min(v) > N for v in a)
        return
    assert relation_check(w.result, w.source, Relation.INTERVAL_CLOSED_EXTRACTION)[0]
    assert all(c <= N for v in w.result for c in v)
    for i, (s, e) in zip(w.kept, w.blocks):
        longest = max(len(r) for r in "".join("x" if c <= N else " " for c in a[i]).split())
        assert e - s == longest


def test_asymptotic_mix():
    assert asymptotic_mix_check(GAMMA_LOW, BETA_PRIME).value is TRUE
    assert asymptotic_mix_check(GAMMA, GAMMA).value is TRUE
    ones = vecseq([(1, 1)] * 10)
    grow = vecseq([(n,) for n in range(2, 12)])
    v = asymptotic_mix_check(ones, grow, facts_a=MixFacts(coord_bound=1), facts_b=MixFacts(ttoinf=True))
    assert v.value is FALSE
    with pytest.raises(ValueError):
        asymptotic_mix_check(vecseq([()]), ones)
