import pytest
from hypothesis import example, given
from hypothesis import strategies as st

from consfree.syntax import (
    BOOL,
    LIST,
    Apply,
    Arrow,
    Choose,
    Constructor,
    FunSymbol,
    If,
    Pair,
    PairExpr,
    ParseError,
    Sort,
    Var,
    parse_data,
    parse_expr,
    parse_program,
    parse_type,
    pretty_expr,
    pretty_program,
    pretty_type,
    pretty_value,
    spine,
    subexpressions,
)
from consfree.library import corpus_names, corpus_path
from consfree.values import from_bits

SCOPE = parse_program(
    "data nat = z | s nat\n"
    "f : nat => nat => nat\n"
    "g : bool => bool\n"
    "f x y = x\n"
    "g b = b\n"
)

NAT = Sort("nat")

types = st.recursive(
    st.sampled_from([BOOL, LIST, NAT]),
    lambda inner: st.one_of(st.builds(Pair, inner, inner), st.builds(Arrow, inner, inner)),
    max_leaves=8,
)


def _exprs():
    leaves = st.one_of(
        st.sampled_from([Var("x"), Var("y"), Var("F"), FunSymbol("f"), FunSymbol("g")]),
        st.sampled_from([Constructor("true"), Constructor("false"), Constructor("nil"), Constructor("z")]),
    )

    def grow(inner):
        return st.one_of(
            st.builds(lambda a, b: Constructor("cons", (a, b)), inner, inner),
            st.builds(lambda a: Constructor("s", (a,)), inner),
            st.builds(If, inner, inner, inner),
            st.builds(lambda xs: Choose(tuple(xs)), st.lists(inner, min_size=1, max_size=3)),
            st.builds(PairExpr, inner, inner),
            st.builds(Apply, inner, inner),
        )

    return st.recursive(leaves, grow, max_leaves=12)


@given(types)
def test_type_round_trip(t):
    assert parse_type(pretty_type(t)) == t


@given(_exprs())
@example(Apply(Constructor("true"), Var("x")))
def test_expression_round_trip(e):
    assert parse_expr(pretty_expr(e), SCOPE) == e


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_program_round_trip(name):
    program = parse_program(corpus_path(name).read_text())
    assert parse_program(pretty_program(program)) == program


def test_arrows_associate_to_the_right():
    assert parse_type("bool => list => bool") == Arrow(BOOL, Arrow(LIST, BOOL))
    assert parse_type("(bool => list) => bool") == Arrow(Arrow(BOOL, LIST), BOOL)


def test_product_binds_tighter_than_arrow():
    assert parse_type("bool * list => bool") == Arrow(Pair(BOOL, LIST), BOOL)


def test_list_literal_sugar():
    e = parse_expr("true::false::[]", SCOPE)
    assert e == Constructor("cons", (Constructor("true"), Constructor("cons", (Constructor("false"), Constructor("nil")))))


def test_tuples_nest_to_the_right():
    assert parse_data("(true, false, [])", SCOPE) == parse_data("(true, (false, []))", SCOPE)


def test_parse_data_values():
    assert parse_data("true::false::[]", SCOPE) == from_bits([True, False])
    assert pretty_value(parse_data("s (s z)", SCOPE)) == "s (s z)"


def test_spine_and_subexpressions():
    e = parse_expr("f (s x) y", SCOPE)
    head, args = spine(e)
    assert head == FunSymbol("f") and args == [Constructor("s", (Var("x"),)), Var("y")]
    assert Var("x") in subexpressions(e)


def test_program_structure():
    p = parse_program("data nat = z | s nat\nmain : nat => bool\nmain z = true\nmain (s n) = false\n")
    assert p.main == "main"
    assert p.constructors["s"] == ((NAT,), "nat")
    assert "nat" in p.sorts and "bool" in p.sorts
    assert len(p.clauses_of("main")) == 2


@pytest.mark.parametrize(
    "text",
    [
        "main : bool => bool\nmain x = (x\n",
        "main : bool => bool\nmain x = choose()\n",
        "main : bool => bool\nmain main = true\n",
        "main : bool => bool\nmain : bool => bool\nmain x = x\n",
        "main : bool => widget\nmain x = x\n",
        "main : bool => bool\n",
        "main : bool => bool\nmain x = x $ x\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_program(text)


def test_parse_error_carries_location():
    with pytest.raises(ParseError) as info:
        parse_program("main : bool => bool\nmain x = (x\n")
    assert info.value.line >= 2


def test_data_rejects_function_symbols():
    with pytest.raises(ParseError):
        parse_data("f z z", SCOPE)


def test_data_checks_constructor_arity():
    with pytest.raises(ParseError):
        parse_data("s", SCOPE)
