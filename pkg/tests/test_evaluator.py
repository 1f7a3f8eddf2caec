import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msow.evaluator import (
    Assignment,
    EvalConfig,
    EvalError,
    EvalMode,
    Instance,
    differential_check,
    eval_formula,
    parse_assignment,
    parse_corpus,
)
from msow.formula import (
    And,
    Exists1,
    Forall1,
    Less,
    Letter,
    Not,
    Or,
    Succ,
    parse_formula,
)
from msow.omegaset import FALSE, TRUE, UNKNOWN, OmegaSet, parse_set
from msow.words import LassoWord, parse_word

SETS = {
    "pow2": parse_set("proc{name=pow2}"),
    "m10": parse_set("proc{name=multiples;k=10}"),
    "pi": parse_set("proc{name=pidigits}"),
    "lasso": OmegaSet.lasso("", "0000000001"),
}


def ev(text, word="lasso{stem=ab;loop=cab}", cfg=None, **sets):
    env = Assignment(sets={k: SETS.get(v, v) if isinstance(v, str) else v for k, v in sets.items()})
    return eval_formula(parse_formula(text), parse_word(word), env, cfg).value


def test_w_examples():
    assert ev("W(X)", X="pow2") is TRUE
    assert ev("W(X)", X="m10") is FALSE
    assert ev("W(X)", X="pi") is FALSE
    assert ev("W(X)", X="lasso") is FALSE


def test_first_order_examples():
    assert ev("ex1 x. c(x)") is TRUE
    assert ev("all1 x. ex1 y. (x < y & c(y))") is TRUE
    assert ev("ex1 x. all1 y. (x < y -> ~c(y))") is FALSE
    assert ev("all1 x. (a(x) -> ex1 y. (succ(x, y) & b(y)))") is TRUE
    assert ev("ex1 x. (b(x) & ex1 y. (succ(x, y) & b(y)))") is FALSE


def test_second_order_examples():
    assert ev("U X. all1 x. (x in X -> a(x))") is TRUE
    assert ev("U X. all1 x. (x in X -> a(x))", word="lasso{stem=ab;loop=c}") is FALSE
    assert ev("P X. ex1 x. x in X") is FALSE
    assert ev("ex2 X. (all1 x. (x in X <-> a(x))) & ~(P Y. ~(X = Y))") is TRUE
    R, I = parse_set("proc{name=pow2}"), OmegaSet.lasso("000", "10")
    assert ev("U2(R, I)", R=R, I=I) is TRUE
    assert ev("U2(R, I)", R=OmegaSet.lasso("", "100"), I=OmegaSet.lasso("", "010")) is FALSE


def test_free_position_variables():
    w = parse_word("lasso{stem=ab;loop=c}")
    f = parse_formula("a(x)")
    assert eval_formula(f, w, Assignment(positions={"x": 0})).value is TRUE
    assert eval_formula(f, w, Assignment(positions={"x": 9})).value is FALSE


def test_input_errors():
    with pytest.raises(EvalError):
        ev("W(X)")
    with pytest.raises(EvalError):
        ev("ex1 x. d(x)")
    with pytest.raises(ValueError):
        EvalConfig(H=8, P=16)


def test_budget_gives_unknown():
    f = "all2 X. all2 Y. all2 Z. ex1 x. (x in X | x in Y | x in Z | a(x))"
    assert ev(f, cfg=EvalConfig(budget=5)) is UNKNOWN


# -- three-valued laws over random first-order sentences ---------------------


def fo_formulas():
    names = ["x", "y", "z"]

    def build(depth, bound):
        atoms = [st.builds(Letter, st.sampled_from("abc"), st.sampled_from(bound))] if bound else []
        if len(bound) >= 1:
            atoms.append(st.builds(Less, st.sampled_from(bound), st.sampled_from(bound)))
            atoms.append(st.builds(Succ, st.sampled_from(bound), st.sampled_from(bound)))
        fresh = next((n for n in names if n not in bound), None)
        if depth == 0 or fresh is None:
            if not atoms:
                return st.just(Exists1("x", Letter("a", "x")))
            return st.one_of(atoms)
        inner = build(depth - 1, bound + [fresh])
        same = build(depth - 1, bound)
        options = [
            st.builds(lambda b, v=fresh: Exists1(v, b), inner),
            st.builds(lambda b, v=fresh: Forall1(v, b), inner),
            st.builds(Not, same),
            st.builds(And, same, same),
            st.builds(Or, same, same),
        ]
        return st.one_of(options + atoms)

    return build(3, [])


lasso_words = st.builds(
    LassoWord.of,
    st.text(alphabet="abc", max_size=4),
    st.text(alphabet="abc", min_size=1, max_size=4),
    st.just(("a", "b", "c")),
)

CFG = EvalConfig(H=512, P=16, F=16, budget=20_000)


@settings(max_examples=80, deadline=None)
@given(fo_formulas(), lasso_words)
def test_first_order_is_decided(f, w):
    assert eval_formula(f, w, cfg=CFG).value is not UNKNOWN


@settings(max_examples=80, deadline=None)
@given(fo_formulas(), fo_formulas(), lasso_words)
def test_kleene_laws(f, g, w):
    a = eval_formula(f, w, cfg=CFG).value
    b = eval_formula(g, w, cfg=CFG).value
    assert eval_formula(Not(f), w, cfg=CFG).value is ~a
    assert eval_formula(And(f, g), w, cfg=CFG).value is (a & b)
    assert eval_formula(Or(f, g), w, cfg=CFG).value is (a | b)


@settings(max_examples=80, deadline=None)
@given(fo_formulas(), lasso_words, st.integers(1, 4))
def test_representation_invariance(f, w, k):
    # the same omega-word written with a longer stem and an unrolled loop
    other = LassoWord(w.stem + w.loop, w.loop * k, w.alphabet)
    assert eval_formula(f, w, cfg=CFG).value is eval_formula(f, other, cfg=CFG).value


@settings(max_examples=40, deadline=None)
@given(fo_formulas(), lasso_words)
def test_doubling_never_flips(f, w):
    a = eval_formula(f, w, cfg=CFG).value
    b = eval_formula(f, w, cfg=CFG.doubled()).value
    assert a is UNKNOWN or b is a


def test_bounded_domain_mode():
    cfg = EvalConfig(H=64, P=8, F=8, mode=EvalMode.BOUNDED_DOMAIN)
    assert ev("ex1 x. c(x)", cfg=cfg) is TRUE


# -- assignments, corpora and differential checks ----------------------------


def test_parse_assignment():
    env = parse_assignment("X = proc{name=pow2}  # comment\nx = 3\n")
    assert env.positions == {"x": 3} and set(env.sets) == {"X"}
    with pytest.raises(EvalError):
        parse_assignment("X = nope{}")
    with pytest.raises(EvalError):
        parse_assignment("just text")


def test_differential_check():
    corpus = parse_corpus(
        "# W examples\n"
        "word=lasso{stem=;loop=a} X=proc{name=pow2}\n"
        "word=lasso{stem=;loop=a} X=proc{name=multiples;k=10}\n"
        "word=lasso{stem=;loop=a} X=proc{name=pidigits}\n"
    )
    same = differential_check(parse_formula("W(X)"), parse_formula("W(X) & W(X)"), corpus)
    assert not same.contradictions and same.exit_status == 0
    bad = differential_check(parse_formula("W(X)"), parse_formula("~W(X)"), corpus)
    assert len(bad.contradictions) == 3 and bad.exit_status == 1
    with pytest.raises(EvalError):
        differential_check(parse_formula("W(X)"), parse_formula("W(Y)"), corpus)


def test_instance_text_round_trip():
    inst = Instance(parse_word("lasso{stem=a;loop=b}"), parse_assignment("X = finite{1,2}\nx = 4"))
    back = parse_corpus(inst.text())[0]
    assert back.word == inst.word and back.env.positions == inst.env.positions
