from fractions import Fraction

import pytest
from hypothesis import given, settings

from specdebug.errors import IntervalError, NotNNFError, OccurrenceError
from specdebug.formula import (FALSE, TRUE, Always, And, Atom, Eventually, Implies, Not, Or,
                               LiteralOccurrence, annotate_effective_intervals, format_formula,
                               horizon, is_nnf, iter_nodes, lit_occurrences, negate,
                               subformula_at, substitute_occurrence, to_nnf, to_unicode)
from specdebug.intervals import ZERO, Interval, format_number, interval_add, to_fraction
from specdebug.monitor import evaluate
from specdebug.parser import parse
from specdebug.trace import TimedTrace

from strategies import formulas, nnf_formulas, traces

p, q = Atom("p"), Atom("q")


def iv(lo, hi, lc=True, hc=True):
    return Interval(lo, hi, lc, hc)


# ---------------------------------------------------------------- intervals

def test_interval_sum_examples():
    assert interval_add(ZERO, iv(1, 2)) == iv(1, 2)
    assert interval_add(iv(1, 2), iv(4, 6)) == iv(5, 8)
    assert interval_add(iv(0, 1), iv(0, 2, False, True)) == iv(0, 3, False, True)


def test_interval_validation():
    with pytest.raises(IntervalError):
        Interval(3, 2)
    with pytest.raises(IntervalError):
        Interval(-1, 2)
    with pytest.raises(IntervalError):
        Interval(1, 1, False, True)
    assert Interval(0, 0).singular


def test_interval_contains_respects_openness():
    i = iv(0, Fraction(1, 25), False, True)
    assert not i.contains(0)
    assert i.contains(Fraction(1, 25))
    assert i.contains("0.01")


def test_exact_numbers():
    assert to_fraction("0.04") == Fraction(1, 25)
    assert to_fraction("1/3") == Fraction(1, 3)
    with pytest.raises(TypeError):
        to_fraction(0.1)
    assert format_number(Fraction(55, 2)) == "27.5"
    assert format_number(Fraction(1, 3)) == "1/3"
    assert format_number(Fraction(-1, 8)) == "-0.125"


# ---------------------------------------------------------------- NNF

def test_nnf_examples():
    assert to_nnf(Not(Eventually(iv(0, 10), p))) == Always(iv(0, 10), Not(p))
    assert to_nnf(Implies(p, q)) == Or(Not(p), q)
    assert to_nnf(Not(Not(p))) == p
    assert to_nnf(Not(TRUE)) == FALSE


def test_negate_examples():
    assert negate(p) == Not(p)
    assert negate(TRUE) == FALSE
    p1 = Atom("p1")
    f = Eventually(iv(0, 30), Or(Not(p1), Always(iv(0, 20), p1)))
    assert negate(f) == Always(iv(0, 30), And(p1, Eventually(iv(0, 20), Not(p1))))


@settings(max_examples=300, deadline=None)
@given(formulas(closed=False), traces())
def test_nnf_preserves_meaning(f, trace):
    g = to_nnf(f)
    assert is_nnf(g)
    assert evaluate(trace, f) == evaluate(trace, g)


@settings(max_examples=300, deadline=None)
@given(formulas(closed=False), traces())
def test_negate_is_complement(f, trace):
    assert evaluate(trace, negate(f)) == (not evaluate(trace, f))


@settings(max_examples=200, deadline=None)
@given(formulas(closed=False))
def test_horizon_invariant_under_nnf(f):
    assert horizon(to_nnf(f)) == horizon(f)


# ---------------------------------------------------------------- occurrences

def test_lit_occurrences_order():
    f = Or(Or(And(Not(p), q), Eventually(iv(0, 10), p)), Always(iv(0, 10), q))
    assert [o.literal for o in lit_occurrences(f)] == ["!p", "q", "p", "q"]
    assert [o.literal for o in lit_occurrences(p)] == ["p"]
    assert lit_occurrences(TRUE) == []


def test_lit_occurrences_requires_nnf():
    with pytest.raises(NotNNFError):
        lit_occurrences(Implies(p, q))


def test_substitution_examples():
    p1, p2, p3 = Atom("p1"), Atom("p2"), Atom("p3")
    f = Eventually(iv(0, 40), And(Implies(Or(p1, p3), Eventually(iv(0, 20), p2)),
                                  Always(iv(0, 30), p1)))
    occ = LiteralOccurrence((0, 0, 0, 1), "positive", "p3")
    expected = Eventually(iv(0, 40), And(Implies(Or(p1, FALSE), Eventually(iv(0, 20), p2)),
                                         Always(iv(0, 30), p1)))
    assert substitute_occurrence(f, occ, FALSE) == expected
    assert substitute_occurrence(p, lit_occurrences(p)[0], FALSE) == FALSE
    a, b = Atom("a"), Atom("b")
    g = And(a, Eventually(iv(0, 2), b))
    assert substitute_occurrence(g, lit_occurrences(g)[0], TRUE) == And(TRUE, Eventually(iv(0, 2), b))


def test_substitution_rejects_bad_paths():
    f = And(p, q)
    with pytest.raises(OccurrenceError):
        substitute_occurrence(f, LiteralOccurrence((), "positive", "p"), FALSE)
    with pytest.raises(OccurrenceError):
        substitute_occurrence(f, LiteralOccurrence((0,), "negative", "p"), FALSE)
    with pytest.raises(OccurrenceError):
        substitute_occurrence(f, LiteralOccurrence((5,), "positive", "p"), FALSE)


@settings(max_examples=200, deadline=None)
@given(nnf_formulas())
def test_occurrence_paths_resolve(f):
    for occ in lit_occurrences(f):
        node = subformula_at(f, occ.path)
        assert (node == Atom(occ.atom)) if occ.polarity == "positive" else (node == Not(Atom(occ.atom)))


@settings(max_examples=300, deadline=None)
@given(nnf_formulas(closed=False), traces())
def test_mutation_monotonicity(f, trace):
    for occ in lit_occurrences(f):
        if evaluate(trace, substitute_occurrence(f, occ, FALSE)):
            assert evaluate(trace, f)
        if not evaluate(trace, substitute_occurrence(f, occ, TRUE)):
            assert not evaluate(trace, f)


def test_true_mutation_can_rescue_a_falsified_formula():
    # monotonicity runs one way only: replacing a literal by true can turn a
    # false formula true, so "f false implies f[l <- true] false" does not hold
    f = Atom("a")
    trace = TimedTrace((0,), {"a": (False,)}, 1)
    assert not evaluate(trace, f)
    assert evaluate(trace, substitute_occurrence(f, lit_occurrences(f)[0], TRUE))


# ---------------------------------------------------------------- effective intervals

def test_effective_interval_example():
    f = parse("G[1,2]((F[3,5] b) -> G[4,6](c -> F[0,2] d))")
    g = annotate_effective_intervals(f)
    assert g.effective_interval == ZERO
    assert subformula_at(g, (0, 0)).effective_interval == iv(1, 2)      # F[3,5] b
    assert subformula_at(g, (0, 1, 0, 0)).effective_interval == iv(5, 8)  # c
    h = annotate_effective_intervals(parse("F[0,10] G[0,20] p"))
    assert subformula_at(h, (0, 0)).effective_interval == iv(0, 30)
    assert annotate_effective_intervals(p).effective_interval == ZERO


def test_annotation_does_not_mutate_or_affect_equality():
    f = parse("F[0,1] p")
    g = annotate_effective_intervals(f)
    assert f.effective_interval is None
    assert g == f


@settings(max_examples=200, deadline=None)
@given(formulas(closed=False))
def test_effective_interval_propagation(f):
    g = annotate_effective_intervals(f)
    assert g.effective_interval == ZERO
    for _, node in iter_nodes(g):
        for child in node.children:
            if isinstance(node, (Eventually, Always)):
                assert child.effective_interval == interval_add(node.effective_interval, node.interval)
            else:
                assert child.effective_interval == node.effective_interval


def test_horizon_examples():
    assert horizon(parse("F[0,30](p1 -> G[0,20] p1)")) == 50
    assert horizon(parse("p && q")) == 0
    assert horizon(parse("F[0,40](((p1 || p3) -> F[0,20] p2) && G[0,30] p1)")) == 70


def test_printing():
    f = parse("F[0,30](p1 -> G[0,20] p1)")
    assert format_formula(f) == "F[0,30] (p1 -> G[0,20] p1)"
    assert to_unicode(f) == "◇[0,30](p1 ⇒ □[0,20]p1)"
