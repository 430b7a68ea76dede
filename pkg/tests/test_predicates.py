import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specdebug.errors import DecompositionError, TraceError
from specdebug.formula import Always, And, Atom, Eventually, Not, Or, format_formula
from specdebug.intervals import Interval
from specdebug.monitor import evaluate
from specdebug.parser import parse
from specdebug.predicates import (INF, AtomTable, PredicateAtom, Span, abstract_formula,
                                  build_atom_table, decompose_pair, generate_mutex_predicates,
                                  normalize, region_complement, region_contains,
                                  region_difference, region_intersect, region_union)
from specdebug.trace import TimedTrace, abstract_trace

from oracles import predicate_signature, sample_points
from strategies import predicates_on, real_traces

F = Fraction


def pred(text):
    return parse(text)


def regions(table):
    return {name: tuple(str(s) for s in a.region) for name, a in table.atoms.items()}


# ---------------------------------------------------------------- region algebra

def test_region_algebra_basics():
    a = (Span(F(0), F(2), False, True),)
    b = (Span(F(1), F(3), False, True),)
    assert region_intersect(a, b) == (Span(F(1), F(2), False, True),)
    assert region_difference(a, b) == (Span(F(0), F(1), False, True),)
    assert region_union(a, b) == (Span(F(0), F(3), False, True),)
    assert region_complement(()) == (Span(-INF, INF, False, False),)
    assert region_complement(a) == (Span(-INF, F(0), False, True), Span(F(2), INF, False, False))


def test_normalize_merges_touching_spans():
    s = normalize([Span(F(1), F(2), True, False), Span(F(2), F(3), True, True),
                   Span(F(5), F(5), False, True)])
    assert s == (Span(F(1), F(3), True, True),)
    assert normalize([Span(F(0), F(1), True, False), Span(F(1), F(2), False, True)]) == \
        (Span(F(0), F(1), True, False), Span(F(1), F(2), False, True))


span_st = st.builds(
    lambda lo, w, lc, hc: Span(F(lo), F(lo + w), lc, hc),
    st.integers(-3, 3), st.integers(0, 3), st.booleans(), st.booleans())
region_st = st.lists(span_st, max_size=3).map(normalize)


@settings(max_examples=300, deadline=None)
@given(region_st, region_st)
def test_region_ops_match_pointwise_membership(a, b):
    pts = [F(k, 2) for k in range(-10, 15)]
    for x in pts:
        ia, ib = region_contains(a, x), region_contains(b, x)
        assert region_contains(region_intersect(a, b), x) == (ia and ib)
        assert region_contains(region_union(a, b), x) == (ia or ib)
        assert region_contains(region_difference(a, b), x) == (ia and not ib)
        assert region_contains(region_complement(a), x) == (not ia)


# ---------------------------------------------------------------- decomposition

def test_decompose_pair_examples():
    a = PredicateAtom.from_predicate(pred("speed > 100"))
    b = PredicateAtom.from_predicate(pred("speed > 80"))
    assert sorted(str(p.region[0]) for p in decompose_pair(a, b)) == ["(100,inf)", "(80,100]"]
    v = PredicateAtom.from_predicate(pred("v > 0"))
    assert [str(p.region[0]) for p in decompose_pair(v, v)] == ["(0,inf)"]
    x = PredicateAtom("x", "v", (Span(F(0), F(2), False, True),))
    y = PredicateAtom("y", "v", (Span(F(1), F(3), False, True),))
    assert [str(p.region[0]) for p in decompose_pair(x, y)] == ["(1,2]", "(0,1]", "(2,3]"]


def test_decompose_pair_errors():
    a = PredicateAtom.from_predicate(pred("v > 1"))
    with pytest.raises(DecompositionError):
        decompose_pair(a, PredicateAtom.from_predicate(pred("w > 1")))
    with pytest.raises(DecompositionError):
        decompose_pair(a, PredicateAtom.from_predicate(pred("v < 0")))
    with pytest.raises(DecompositionError):
        PredicateAtom("e", "v", ())


def test_generate_speed_rpm_example():
    table = generate_mutex_predicates([pred("speed > 100"), pred("speed > 80"), pred("rpm > 4000")])
    assert regions(table) == {"rpm_0": ("(4000,inf)",), "speed_0": ("(80,100]",),
                              "speed_1": ("(100,inf)",)}
    assert table.rewrites == {"rpm > 4000": ("rpm_0",), "speed > 100": ("speed_1",),
                              "speed > 80": ("speed_0", "speed_1")}
    assert [g.members for g in table.mutex] == [("speed_0", "speed_1")]
    assert not table.mutex[0].exhaustive


def test_generate_trivial_and_chain():
    single = generate_mutex_predicates([pred("v > 0")])
    assert list(single.atoms) == ["v_0"] and single.mutex == []
    table = generate_mutex_predicates([pred("v > 0"), pred("v > 1"), pred("v > 2")])
    assert regions(table) == {"v_0": ("(0,1]",), "v_1": ("(1,2]",), "v_2": ("(2,inf)",)}
    assert table.rewrites["v > 1"] == ("v_1", "v_2")


def test_exhaustive_groups():
    table = generate_mutex_predicates([pred("x < 1"), pred("x >= 1")])
    assert table.mutex[0].exhaustive
    # disjoint predicates on one variable are still mutually exclusive
    table = generate_mutex_predicates([pred("x < 1"), pred("x > 1")])
    assert [g.members for g in table.mutex] == [("x_0", "x_1")]
    assert not table.mutex[0].exhaustive


@settings(max_examples=300, deadline=None)
@given(st.lists(predicates_on(), min_size=1, max_size=5))
def test_partition_against_cell_oracle(preds):
    table = generate_mutex_predicates(preds)
    uniq = {p.key: p for p in preds}
    cells = list(table.atoms.values())
    pts = sample_points([p.threshold for p in preds])
    # pairwise disjoint
    for a, b in itertools.combinations(cells, 2):
        assert not region_intersect(a.region, b.region)
    for x in pts:
        holding = [c.name for c in cells if c.holds(x)]
        assert len(holding) <= 1
        for key, p in uniq.items():
            assert p.holds(x) == any(n in holding for n in table.rewrites[key])
        if table.mutex and table.mutex[0].exhaustive:
            assert holding
    # every cell has one membership signature
    for c in cells:
        sigs = {predicate_signature(list(uniq.values()), x) for x in pts if c.holds(x)}
        assert len(sigs) == 1
    assert len(cells) <= 2 * len(uniq) - 1
    exhaustive = all(any(c.holds(x) for c in cells) for x in pts)
    if len(cells) > 1:
        assert table.mutex[0].exhaustive == exhaustive


def test_names_are_deterministic():
    a = generate_mutex_predicates([pred("s > 80"), pred("s > 100")])
    b = generate_mutex_predicates([pred("s > 100"), pred("s > 80")])
    assert a.to_json() == b.to_json()


def test_table_json_round_trip():
    table = generate_mutex_predicates([pred("x < 1"), pred("x >= 1/3"), pred("y > 2.5")])
    doc = table.to_json()
    back = AtomTable.from_json(doc)
    assert back.to_json() == doc
    assert back.atoms == table.atoms
    assert back.mutex == table.mutex


# ---------------------------------------------------------------- abstraction

def test_abstract_formula_examples():
    f = parse("F[0,10]((speed > 100) || F[0,10](speed > 80))")
    table = build_atom_table(f)
    a, c = Atom("speed_1"), Atom("speed_0")
    assert abstract_formula(f, table) == \
        Eventually(Interval(0, 10), Or(a, Eventually(Interval(0, 10), Or(c, a))))
    g = parse("F[0,1] p")
    assert abstract_formula(g, table) == g
    h = parse("G[0,40](speed > 80)")
    assert format_formula(abstract_formula(h, table)) == "G[0,40] (speed_0 || speed_1)"


def test_abstract_trace_examples():
    table = generate_mutex_predicates([pred("speed > 100"), pred("speed > 80")])
    s = TimedTrace((0,), {"speed": (110,)}, 10)
    b = abstract_trace(s, table)
    assert b.column("speed_1") == (True,) and b.column("speed_0") == (False,)
    s2 = TimedTrace((0, F(11, 2)), {"speed": (90, 110)}, 10)
    b2 = abstract_trace(s2, table)
    assert b2.column("speed_0") == (True, False)
    assert b2.column("speed_1") == (False, True)
    empty = abstract_trace(s, AtomTable())
    assert empty.signals == []
    with pytest.raises(TraceError):
        abstract_trace(TimedTrace((0,), {"v": (1,)}, 1), table)


def _stl_formulas():
    leaf = predicates_on()

    def extend(children):
        iv = st.builds(lambda lo, w: Interval(lo, lo + w), st.integers(0, 2), st.integers(1, 2))
        return st.one_of(st.builds(Or, children, children),
                         st.builds(Eventually, iv, children),
                         st.builds(Always, iv, children),
                         st.builds(And, children, children),
                         st.builds(Not, children))
    return st.recursive(leaf, extend, max_leaves=4)


@settings(max_examples=300, deadline=None)
@given(_stl_formulas(), real_traces())
def test_abstraction_commutes_with_monitoring(f, trace):
    table = build_atom_table(f)
    for t in range(int(trace.duration) + 1):
        assert evaluate(trace, f, t) == evaluate(abstract_trace(trace, table),
                                                 abstract_formula(f, table), t)
