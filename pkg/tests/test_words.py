import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msow.omegaset import FALSE, TRUE, OmegaSet, parse_set
from msow.oracles import brute_pad
from msow.words import (
    FLAT,
    BlockWord,
    LassoWord,
    PaddedWord,
    PaddingImage,
    WordError,
    check_up_ignoring_flats,
    gap_function,
    pad_word,
    parse_word,
    project,
    ult_const_dim,
    word_text,
)

H = 400

lasso_words = st.builds(
    LassoWord.of,
    st.text(alphabet="abc", max_size=6),
    st.text(alphabet="abc", min_size=1, max_size=6),
    st.just(("a", "b", "c")),
)


def test_lasso_word_basics():
    w = LassoWord.of("ab", "ba")
    assert "".join(w.prefix(7)) == "abbabab"
    assert list(w.letter_set("a").members_below(8)) == [0, 3, 5, 7]
    assert w.lasso_shape() == (2, 2)
    with pytest.raises(WordError):
        LassoWord.of("ab", "")
    with pytest.raises(WordError):
        LassoWord.of("ad", "a", ["a", "b"])


def test_pad_example():
    w = LassoWord.of("", "ab")
    got = pad_word(w, "identity", 10)
    # f(0) = 0 flats after the first letter, then 1, 2, ...
    assert got == ("a", "b", FLAT, "a", FLAT, FLAT, "b", FLAT, FLAT, FLAT)
    assert pad_word(w, gap_function("constant", 1), 6) == ("a", FLAT, "b", FLAT, "a", FLAT)
    with pytest.raises(WordError):
        pad_word(LassoWord.of("", "a", ["a", FLAT]), "identity", 4)


@settings(max_examples=100, deadline=None)
@given(lasso_words, st.sampled_from(["identity", "pow2", "constant"]))
def test_pad_matches_brute_and_projects_back(w, gen):
    g = gap_function(gen, 2)
    padded = pad_word(w, g, H)
    assert list(padded) == brute_pad(w, g, H)
    proj = project(padded)
    assert proj.letters == w.prefix(len(proj.letters))
    for n in (1, 17, 90, H):
        assert project(padded[:n]).letters == w.prefix(len(project(padded[:n]).letters))


def test_padded_positions():
    pw = PaddedWord(LassoWord.of("", "abc"), gap_function("pow2"))
    pos = pw.positions_below(200)
    assert all(pw.prefix(200)[p] != FLAT for p in pos)
    assert [pw.position(i) for i in range(len(pos))] == pos
    flats = pw.letter_set(FLAT).bits(200)
    assert not flats[pos].any() and flats.sum() + len(pos) == 200


def test_ult_const_dim_on_padded_words():
    for gen in ("identity", "pow2"):
        pw = PaddedWord(LassoWord.of("a", "bc"), gap_function(gen))
        sigma = pw.letter_set("a") | pw.letter_set("b") | pw.letter_set("c")
        assert ult_const_dim(sigma, pw.letter_set(FLAT)).value is TRUE


def test_ult_const_dim_lasso_cases():
    R = OmegaSet.lasso("", "100")
    assert ult_const_dim(R, OmegaSet.lasso("", "010")).value is FALSE
    assert ult_const_dim(R, OmegaSet.finite([1, 4])).value is TRUE
    assert ult_const_dim(OmegaSet.finite([0, 5]), OmegaSet.empty()).value is FALSE
    assert ult_const_dim(R, OmegaSet.lasso("", "100")).value is FALSE


def test_check_up_ignoring_flats():
    pw = PaddedWord(LassoWord.of("", "ab"), gap_function("identity"))
    flats = pw.letter_set(FLAT)
    assert check_up_ignoring_flats(pw, flats).value is FALSE
    assert check_up_ignoring_flats(pw, OmegaSet.finite([0, 1])).value is TRUE
    assert check_up_ignoring_flats(pw, OmegaSet.lasso("", "1")).value is FALSE
    # image of a periodic set of letter indices
    img = OmegaSet.procedural(PaddingImage(pw, OmegaSet.lasso("", "10")))
    assert check_up_ignoring_flats(pw, img).value is TRUE
    img = OmegaSet.procedural(PaddingImage(pw, parse_set("proc{name=pow2}")))
    assert check_up_ignoring_flats(pw, img).value is FALSE


def test_block_word():
    w = BlockWord(("a", "c"), ("b",), gap_function("identity"))
    assert "".join(w.prefix(20)) == "acbacacbacacacbacaca"
    text = word_text(w)
    assert parse_word(text).prefix(60) == w.prefix(60)


def test_parse_word_round_trip():
    for text in ["lasso{stem=ab;loop=ba}", "pad{word=lasso{stem=;loop=ab};gen=pow2}", "blocks{unit=ac;sep=b;gen=identity}"]:
        w = parse_word(text)
        assert parse_word(word_text(w)).prefix(80) == w.prefix(80)
    with pytest.raises(WordError):
        parse_word("nonsense")


def test_letter_sets_partition():
    pw = PaddedWord(LassoWord.of("ab", "c"), gap_function("identity"))
    total = np.zeros(H, dtype=int)
    for letter in pw.alphabet:
        total += pw.letter_set(letter).bits(H)
    assert (total == 1).all()
