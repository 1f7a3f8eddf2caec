import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msow.formula import (
    U2,
    And,
    Dialect,
    Exists1,
    Exists2,
    Forall1,
    Forall2,
    Iff,
    Implies,
    Less,
    Letter,
    Macro,
    Member,
    Not,
    Or,
    OrderError,
    ParseError,
    QuantP,
    QuantU,
    Succ,
    UnknownLetterError,
    W,
    all_names,
    alpha_equal,
    dialect_of,
    free_variables,
    node_count,
    parse_formula,
    print_formula,
    rename_apart,
)

FO = ["x", "y", "z"]
SO = ["X", "Y", "R", "I"]


def atoms():
    fo, so = st.sampled_from(FO), st.sampled_from(SO)
    return st.one_of(
        st.builds(Member, fo, so),
        st.builds(Less, fo, fo),
        st.builds(Succ, fo, fo),
        st.builds(Letter, st.sampled_from("abc"), fo),
        st.builds(W, so),
        st.builds(U2, so, so),
        st.builds(lambda a, b: Macro("UltConstDim", (a, b)), so, so),
    )


def formulas():
    def extend(children):
        fo, so = st.sampled_from(FO), st.sampled_from(SO)
        return st.one_of(
            st.builds(Not, children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Implies, children, children),
            st.builds(Iff, children, children),
            st.builds(Exists1, fo, children),
            st.builds(Forall1, fo, children),
            st.builds(Exists2, so, children),
            st.builds(Forall2, so, children),
            st.builds(QuantU, so, children),
            st.builds(QuantP, so, children),
        )

    return st.recursive(atoms(), extend, max_leaves=40)


def test_parse_examples():
    assert parse_formula("ex2 X. W(X)") == Exists2("X", W("X"))
    with pytest.raises(OrderError):
        parse_formula("W(x)")


def test_set_equality_expands():
    f = parse_formula("ex2 X. (all1 x. (x in X <-> a(x))) & ~(P Y. ~(X = Y))")
    assert dialect_of(f) is Dialect.MSO_P
    inner = parse_formula("all1 z. (z in X <-> z in Y)")
    g = parse_formula("X = Y")
    assert alpha_equal(g, inner)


def test_print_examples():
    assert print_formula(W("X")) == "W(X)"
    assert print_formula(And(W("X"), Not(W("Y")))) == "(W(X) & ~W(Y))"


def test_precedence():
    assert parse_formula("a(x) | b(x) & c(x)") == Or(Letter("a", "x"), And(Letter("b", "x"), Letter("c", "x")))
    assert parse_formula("~a(x) & b(x)") == And(Not(Letter("a", "x")), Letter("b", "x"))
    f = parse_formula("a(x) -> b(x) <-> c(x)")
    assert isinstance(f, Iff) and isinstance(f.left, Implies)
    # quantifier scope extends to the right
    g = parse_formula("ex1 x. a(x) & b(x)")
    assert isinstance(g, Exists1) and isinstance(g.body, And)


def test_errors_carry_location():
    with pytest.raises(ParseError) as info:
        parse_formula("ex1 x.\n  (a(x) &")
    assert info.value.line == 2
    with pytest.raises(UnknownLetterError):
        parse_formula("d(x)", ["a", "b"])
    with pytest.raises(OrderError):
        parse_formula("ex1 X. a(X)")
    with pytest.raises(ParseError):
        parse_formula("Foo(X)")


def test_free_variables():
    assert free_variables(U2("R", "I")) == (frozenset(), frozenset({"R", "I"}))
    assert free_variables(parse_formula("U X. (x in X)")) == (frozenset({"x"}), frozenset())
    assert free_variables(parse_formula("P X. ex2 Y. (x in Y & y in X)")) == (frozenset({"x", "y"}), frozenset())


def test_dialects():
    assert dialect_of(parse_formula("ex2 X. W(X)")) is Dialect.MSO_W
    assert dialect_of(parse_formula("U X. (x in X)")) is Dialect.MSO_U
    assert dialect_of(parse_formula("W(X) & U2(R,I)")) is Dialect.MIXED
    assert dialect_of(parse_formula("U2(R,I)")) is Dialect.MSO_U2
    assert dialect_of(parse_formula("ex1 x. a(x)")) is Dialect.MSO
    assert dialect_of(parse_formula("UltConstDim(R, I)")) is Dialect.MSO_U
    assert dialect_of(parse_formula("UltConstDim(R, I) & U X. W(X)")) is Dialect.MIXED


@settings(max_examples=150, deadline=None)
@given(formulas())
def test_round_trip(f):
    assert parse_formula(print_formula(f)) == f


def test_round_trip_large():
    f = Letter("a", "x")
    i = 0
    while node_count(f) < 500:
        i += 1
        kind = i % 4
        if kind == 0:
            f = And(f, Member("y", "X"))
        elif kind == 1:
            f = Exists1("y", Or(Not(f), Less("x", "y")))
        elif kind == 2:
            f = QuantU("X", Iff(f, W("X")))
        else:
            f = Implies(U2("R", "I"), f)
    assert node_count(f) >= 500
    assert parse_formula(print_formula(f)) == f


@settings(max_examples=150, deadline=None)
@given(formulas(), st.sets(st.sampled_from(FO + SO)))
def test_rename_apart(f, reserved):
    g = rename_apart(f, reserved)
    assert free_variables(g) == free_variables(f)
    assert alpha_equal(f, g)
    assert alpha_equal(rename_apart(g, reserved), g)
    bound = [n.var for n in _binders(g)]
    assert len(bound) == len(set(bound))
    assert not set(bound) & set(reserved)


def _binders(f):
    from msow.formula import iter_nodes

    return [n for n in iter_nodes(f) if isinstance(n, (Exists1, Forall1, Exists2, Forall2, QuantU, QuantP))]


@settings(max_examples=100, deadline=None)
@given(formulas())
def test_dialect_monotone_under_removal(f):
    # replacing any subformula by an MSO atom never moves an MSO formula out of MSO
    from msow.formula import iter_nodes

    if dialect_of(f) is Dialect.MSO:
        for node in iter_nodes(f):
            if hasattr(node, "body"):
                assert dialect_of(node.body) is Dialect.MSO


def test_rename_apart_example():
    f = parse_formula("ex2 X. W(X)")
    g = rename_apart(f, {"X"})
    assert g.var != "X" and alpha_equal(f, g)
    assert "X" not in all_names(g)
