import itertools

import pytest
from hypothesis import assume, example, given, settings
from hypothesis import strategies as st

from consfree.extensional import (
    TooLarge,
    Universe,
    below_exp2,
    cardinality_bound,
    count_ext,
    enumerate_ext,
    exp2,
    ext_apply,
    ext_geq,
    maximal,
    relation_is_function,
    within_cardinality_bound,
)
from consfree.syntax import BOOL, Arrow, Pair, Program, parse_type
from consfree.typecheck import type_order
from consfree.values import FALSE, NIL, TRUE, Relation

BOOLS = [TRUE, FALSE]
SIZES = {"bool": 2, "list": 1}
EMPTY = Program((), (), ())

small_types = st.recursive(
    st.sampled_from([BOOL, parse_type("list")]),
    lambda inner: st.one_of(st.builds(Pair, inner, inner), st.builds(Arrow, inner, inner)),
    max_leaves=4,
)


@settings(max_examples=80, deadline=None)
@given(small_types, st.sampled_from(["det", "nondet"]))
def test_enumeration_matches_the_closed_form(t, mode):
    n = count_ext(SIZES, t, mode)
    assume(n <= 20_000)
    values = enumerate_ext(BOOLS + [NIL], t, mode)
    assert len(values) == len(set(values)) == n


def test_small_counts_by_hand():
    b2b = parse_type("bool => bool")
    assert count_ext({"bool": 2}, b2b, "det") == 9  # 3 choices per key
    assert count_ext({"bool": 2}, b2b, "nondet") == 16  # subsets of 4 pairs
    assert count_ext({"bool": 2}, parse_type("bool * bool"), "det") == 4


def test_deterministic_values_are_partial_functions():
    for r in enumerate_ext(BOOLS, parse_type("bool => bool => bool"), "det"):
        assert relation_is_function(r)
        assert all(relation_is_function(v) for _, v in r.pairs)


def test_ceiling():
    with pytest.raises(TooLarge):
        enumerate_ext(BOOLS, parse_type("(bool => bool) => bool => bool"), "nondet", ceiling=1000)


def test_universe_membership():
    u = Universe(EMPTY, BOOLS, "det")
    t = parse_type("bool => bool")
    assert u.contains(Relation(t, [(TRUE, FALSE)]), t)
    assert not u.contains(Relation(t, [(TRUE, FALSE), (TRUE, TRUE)]), t)
    assert not u.contains(NIL, BOOL)
    assert Universe(EMPTY, BOOLS, "nondet").contains(Relation(t, [(TRUE, FALSE), (TRUE, TRUE)]), t)


# ---------------------------------------------------------------- the information order

ORDER_CASES = [
    ("det", "bool"),
    ("det", "bool => bool"),
    ("det", "bool * (bool => bool)"),
    ("det", "(bool => bool) => bool"),
    ("det", "bool => bool => bool"),
    ("nondet", "bool => bool"),
    ("nondet", "bool * (bool => bool)"),
    ("nondet", "bool => bool * bool"),
]


@pytest.mark.parametrize("mode,text", ORDER_CASES)
def test_information_order_is_a_preorder(mode, text):
    values = enumerate_ext(BOOLS, parse_type(text), mode)
    values = values[:: len(values) // 40 + 1]
    for a in values:
        assert ext_geq(a, a)
    for a, b, c in itertools.product(values, repeat=3):
        if ext_geq(a, b) and ext_geq(b, c):
            assert ext_geq(a, c)


@pytest.mark.parametrize("text", ["bool => bool", "bool * bool => bool"])
@pytest.mark.parametrize("mode", ["det", "nondet"])
def test_first_order_relations_are_ordered_by_inclusion(text, mode):
    values = enumerate_ext(BOOLS, parse_type(text), mode)
    for a, b in itertools.product(values, repeat=2):
        assert ext_geq(a, b) == (b.pairs <= a.pairs)


def test_equivalent_but_different_relations_exist_at_higher_type():
    inner = parse_type("bool => bool")
    small = Relation(inner, [(TRUE, TRUE)])
    big = Relation(inner, [(TRUE, TRUE), (FALSE, FALSE)])
    t = Arrow(BOOL, inner)
    a = Relation(t, [(TRUE, small), (TRUE, big)])
    b = Relation(t, [(TRUE, big)])
    assert a != b and ext_geq(a, b) and ext_geq(b, a)
    assert len(maximal([a, b])) == 1


MAXIMAL_POOLS = {
    text: enumerate_ext(BOOLS, parse_type(text), "det")
    for text in ["bool => bool", "(bool => bool) => bool", "bool => bool => bool"]
}


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_maximal_keeps_one_cover_per_class(data):
    universe = MAXIMAL_POOLS[data.draw(st.sampled_from(sorted(MAXIMAL_POOLS)))]
    chosen = data.draw(st.lists(st.sampled_from(universe), min_size=1, max_size=12))
    top = maximal(chosen)
    assert top <= set(chosen)
    assert all(any(ext_geq(m, v) for m in top) for v in chosen)
    for m1, m2 in itertools.permutations(top, 2):
        assert not ext_geq(m1, m2)


def test_application():
    t = parse_type("bool => bool => bool")
    inner = parse_type("bool => bool")
    f = Relation(t, [(TRUE, Relation(inner, [(FALSE, TRUE), (FALSE, FALSE)]))])
    assert ext_apply(f, [TRUE, FALSE]) == {TRUE, FALSE}
    assert ext_apply(f, [FALSE, FALSE]) == set()
    assert ext_apply(f, [TRUE]) == {Relation(inner, [(FALSE, TRUE), (FALSE, FALSE)])}


# ---------------------------------------------------------------- towers


def test_exp2_values():
    assert [exp2(k, 2) for k in range(4)] == [2, 4, 16, 65536]
    assert exp2(0, 9) == 9 and exp2(1, 9) == 512


@given(st.integers(0, 3), st.integers(0, 4), st.integers(-3, 2**70))
@example(0, 0, -1)
def test_below_exp2_agrees_with_the_tower(k, n, count):
    assert below_exp2(count, k, n) == (count < exp2(k, n))


def test_below_exp2_handles_huge_towers():
    assert below_exp2(2**1000, 3, 5)  # 2 ** 2 ** 32
    assert not below_exp2(2**65536, 4, 2)  # exactly the tower
    assert below_exp2(2**65536 - 1, 4, 2)


@pytest.mark.parametrize(
    "text,n,metric,bound",
    [
        ("bool", 3, "order", 3),
        ("bool => bool", 3, "order", 2**9),
        ("bool => bool => bool", 3, "order", 2**27),
        ("bool => bool => bool", 2, "depth", 2**256),
    ],
)
def test_cardinality_bound(text, n, metric, bound):
    assert cardinality_bound(parse_type(text), n, metric) == bound


def test_bound_holds_for_a_larger_universe():
    # |B| = 3 < N = 4
    sizes = {"bool": 3}
    for text in ["bool => bool", "bool * bool => bool", "(bool => bool) => bool", "bool => bool => bool"]:
        t = parse_type(text)
        assert within_cardinality_bound(count_ext(sizes, t, "det"), t, 4, "order")
        assert within_cardinality_bound(count_ext(sizes, t, "nondet"), t, 4, "depth")
        assert type_order(t) >= 1
