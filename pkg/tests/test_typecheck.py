import pytest
from hypothesis import given
from hypothesis import strategies as st

from consfree.library import load
from consfree.syntax import BOOL, LIST, Arrow, Pair, parse_program, parse_type
from consfree.typecheck import (
    TypeCheckError,
    analyze,
    check_cons_free,
    check_program,
    is_unitary_type,
    type_depth,
    type_length,
    type_metrics,
    type_order,
)


def typed(text: str):
    return check_program(parse_program(text))


# (type, order, arrow depth, length) worked out by hand
METRICS = [
    ("bool", 0, 0, 1),
    ("bool * list", 0, 0, 2),
    ("bool => bool", 1, 1, 2),
    ("bool * list => bool", 1, 1, 3),
    ("bool => bool => bool", 1, 2, 3),
    ("(bool => bool) => bool", 2, 2, 3),
    ("(list => bool) => list => list => bool", 2, 3, 5),
    ("((bool => bool) => bool) => bool", 3, 3, 4),
    ("(bool => bool) * list", 1, 1, 3),
]


@pytest.mark.parametrize("text,order,depth,length", METRICS)
def test_type_metrics(text, order, depth, length):
    assert type_metrics(parse_type(text)) == (order, depth, length)


@pytest.mark.parametrize(
    "text,unitary",
    [
        ("bool", True),
        ("bool * list", True),
        ("bool => bool", True),
        ("bool * list => bool", True),
        ("(bool => bool) => bool", True),
        ("bool => bool => bool", False),
        ("bool => bool * (bool => bool)", False),
    ],
)
def test_unitary_types(text, unitary):
    assert is_unitary_type(parse_type(text)) is unitary


types = st.recursive(
    st.sampled_from([BOOL, LIST]),
    lambda inner: st.one_of(st.builds(Pair, inner, inner), st.builds(Arrow, inner, inner)),
    max_leaves=10,
)


@given(types)
def test_order_never_exceeds_depth(t):
    assert type_order(t) <= type_depth(t) < type_length(t)


@given(types, types)
def test_arrow_metrics_compose(a, b):
    t = Arrow(a, b)
    assert type_order(t) == max(type_order(a) + 1, type_order(b))
    assert type_depth(t) == 1 + max(type_depth(a), type_depth(b))
    assert type_length(t) == type_length(a) + type_length(b)


# ---------------------------------------------------------------- well-formedness

REJECTED = [
    ("ill-typed", "main : bool => bool\nmain x = x::[]\n"),
    ("ill-typed", "main : bool => bool\nmain [] = true\n"),
    ("ill-typed", "main : bool => bool\nmain x y = x\n"),
    ("unbound-variable", "main : bool => bool\nmain x = y\n"),
    ("nonlinear-pattern", "main : bool => bool => bool\nmain x x = x\n"),
    ("constructor-type", "data box = wrap (bool => bool)\nmain : bool => bool\nmain x = x\n"),
    ("no-clauses", "main : bool => bool\nother : bool => bool\nmain x = x\n"),
    ("main-type", "main : (bool => bool) => bool\nmain f = f true\n"),
    ("inconsistent-arity", "main : bool => bool => bool\nmain true x = x\nmain false = main true\n"),
]


@pytest.mark.parametrize("rule,text", REJECTED, ids=[r for r, _ in REJECTED])
def test_rejections_name_the_rule(rule, text):
    with pytest.raises(TypeCheckError) as info:
        typed(text)
    assert info.value.rule == rule


def test_partial_application_is_typed_by_its_remaining_arguments():
    tp = typed("main : bool => bool\nk : bool => bool => bool\nmain x = k x x\nk x = if x then k true else k false\n")
    assert tp.arities == {"main": 1, "k": 1}
    assert tp.clause_types[1] == parse_type("bool => bool")


def test_variable_environments():
    tp = load("fsucc")
    env = tp.clause_envs[1]  # fsucc F [] = ...
    assert env["F"] == parse_type("list => bool")


# ---------------------------------------------------------------- cons-freeness


@pytest.mark.parametrize(
    "clause,ok",
    [
        ("f (x::xs) = x::xs", True),
        ("f xs = true::false::[]", True),
        ("f xs = xs", True),
        ("f xs = true::xs", False),
        ("f (x::xs) = x::[]", False),
        ("f (x::xs) = true::xs", False),
    ],
)
def test_cons_free_clauses(clause, ok):
    tp = typed(f"f : list => list\n{clause}\n")
    assert check_cons_free(tp)[0] is ok


def test_offenders_point_at_the_clause():
    tp = load("succ")
    ok, offenders = check_cons_free(tp)
    assert not ok
    assert sorted({i for i, _, _ in offenders}) == [1, 2]


# ---------------------------------------------------------------- analysis


@pytest.mark.parametrize(
    "name,cons_free,det,order,depth,unitary",
    [
        ("succ", False, True, 0, 0, True),
        ("fsucc", True, True, 1, 1, True),
        ("choosexy", True, False, 0, 0, True),
        ("fstsnd", True, False, 0, 0, True),
        ("curried", True, True, 1, 2, False),
        ("order2", True, True, 2, 2, True),
        ("bitlist", True, False, 1, 1, True),
    ],
)
def test_analysis(name, cons_free, det, order, depth, unitary):
    rep = analyze(load(name))
    assert (rep.cons_free, rep.deterministic, rep.data_order, rep.data_arrow_depth, rep.unitary) == (
        cons_free, det, order, depth, unitary,
    )


def test_report_text():
    text = analyze(load("fsucc")).to_text()
    assert "data_order: 1" in text and "cons_free: yes" in text
