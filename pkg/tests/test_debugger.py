from hypothesis import given, settings

from specdebug.debugger import (Status, Validity, check_redundancy, check_validity,
                                check_vacuity, conjunction_chains, debug_pipeline)
from specdebug.formula import TRUE, And, format_formula, replace_at, subformula_at, to_nnf
from specdebug.parser import parse
from specdebug.predicates import MutexGroup
from specdebug.sat import entails

from strategies import nnf_formulas

P13 = [MutexGroup("", ("p1", "p3"))]

PHI = {
    1: "F[0,30] p1 && F[0,20] p1",
    2: "F[0,30](p1 -> G[0,20] p1)",
    3: "F[0,40](((p1 || p3) -> F[0,20] p2) && G[0,30] p1)",
    4: "G[0,40] p1 && G[0,40] F[0,10] p1",
    5: "F[0,40](p1 || p3) && F[0,40] p2 && F[0,40] G[0,30] p1",
}


def run(text, **kw):
    return debug_pipeline(parse(text), extra_mutex=P13, **kw)


def texts(findings):
    return [format_formula(x.conjunct) for x in findings]


# ---------------------------------------------------------------- validity

def test_validity_examples():
    assert check_validity(parse(PHI[2])) is Validity.TAUTOLOGY
    assert check_validity(parse("p && !p")) is Validity.UNSATISFIABLE
    assert check_validity(parse("F[0,30] p1")) is Validity.VALID


# ---------------------------------------------------------------- redundancy

def test_redundancy_examples():
    r = check_redundancy(parse(PHI[1]))
    assert [(format_formula(x.conjunct), x.enclosing_path) for x in r] == [("F[0,30] p1", ())]
    r = check_redundancy(parse("F[0,10](p && G[0,10] p)"))
    assert [(format_formula(x.conjunct), format_formula(x.enclosing)) for x in r] == \
        [("p", "(p && G[0,10] p)")]
    r = check_redundancy(parse("F[0,10](p && q) && F[0,10] p && G[0,10] q"))
    assert sorted(format_formula(x.conjunct) for x in r) == ["F[0,10] (p && q)", "F[0,10] p"]


def test_duplicate_conjunct_reports_the_second_copy():
    r = check_redundancy(parse("F[0,2] a && F[0,2] a"))
    assert [x.conjunct_path for x in r] == [(1,)]


def test_conjunction_chains_are_maximal():
    f = parse("a && (b && F[0,1](c && d)) && e")
    chains = conjunction_chains(f)
    assert len(chains) == 2 and chains[0] == ()
    assert isinstance(replace_at(f, chains[1], TRUE), And)
    assert format_formula(subformula_at(f, chains[1])) == "(c && d)"


def test_early_stop_returns_first_redundancy():
    f = parse("F[0,10](p && q) && F[0,10] p && G[0,10] q")
    assert len(check_redundancy(f, early_stop=True)) == 1


# ---------------------------------------------------------------- vacuity

def test_vacuity_examples():
    v = check_vacuity(parse("p || F[0,10] p"))
    assert [x.occurrence.path for x in v] == [(0,)]
    assert format_formula(v[0].mutated) == "(false || F[0,10] p)"
    assert check_vacuity(parse("F[0,10](a || F[0,10] b)")) == []
    # the antecedent is negated by NNF, so the p3 occurrence is the literal !p3
    v = check_vacuity(parse(PHI[3]), P13)
    assert [x.occurrence.literal for x in v] == ["!p1", "!p3"]
    p3 = v[1]
    assert p3.occurrence.atom == "p3"
    assert "false" in format_formula(p3.mutated) and "p3" not in format_formula(p3.mutated)


# ---------------------------------------------------------------- pipeline

def test_case_study_formulas():
    r = {k: run(t) for k, t in PHI.items()}
    assert r[1].status is Status.FAILED_REDUNDANCY
    assert texts(r[1].of_kind("RedundantConjunct")) == ["F[0,30] p1"]
    assert r[2].status is Status.FAILED_VALIDITY
    assert [x.kind for x in r[2].findings] == ["Tautology"]
    assert r[3].status is Status.FAILED_VACUITY
    assert "p3" in [x.occurrence.atom for x in r[3].findings]
    assert r[4].status is Status.FAILED_REDUNDANCY
    assert texts(r[4].of_kind("RedundantConjunct")) == ["G[0,40] F[0,10] p1"]
    assert r[5].status is Status.FAILED_REDUNDANCY
    assert "F[0,40] (p1 || p3)" in texts(r[5].of_kind("RedundantConjunct"))


def test_pipeline_examples():
    r = run(PHI[2])
    assert r.stages_run == ["validity"]
    r = run("F[0,30] p1")
    assert r.status is Status.PASSED and r.findings == []
    assert r.stages_run == ["validity", "redundancy", "vacuity"]


def test_early_stop_skips_vacuity():
    f = "F[0,30] p1 && F[0,20] p1 && (q || F[0,5] q)"
    full = run(f)
    short = run(f, early_stop=True)
    assert full.of_kind("VacuousOccurrence")
    assert short.stages_run == ["validity", "redundancy"]
    assert len(short.findings) == 1
    assert len(short.checks) < len(full.checks)


def test_predicates_are_abstracted():
    r = debug_pipeline(parse("G[0,10](speed > 100) && G[0,10](speed > 80)"))
    assert format_formula(r.checked) == "(G[0,10] speed_1 && G[0,10] (speed_0 || speed_1))"
    assert r.status is Status.FAILED_REDUNDANCY
    assert texts(r.of_kind("RedundantConjunct")) == ["G[0,10] (speed_0 || speed_1)"]
    assert r.to_json()["atomTable"]["atoms"]


def test_no_mutex_reproduces_naive_substitution():
    f = parse("F[0,10]((speed > 100) || F[0,10](speed > 80))")
    with_mutex = debug_pipeline(f)
    naive = debug_pipeline(f, mutex_enabled=False)
    assert with_mutex.config["mutex"] and not naive.config["mutex"]
    assert with_mutex.status is naive.status is Status.FAILED_VACUITY


def test_fast_path_does_not_change_verdicts():
    for text in PHI.values():
        a, b = run(text), run(text, fast_path=False)
        assert a.to_json()["findings"] == b.to_json()["findings"]
        assert b.to_json()["stats"]["fastPathAnswers"] == 0


def test_report_json_shape():
    doc = run(PHI[1]).to_json()
    assert set(doc) >= {"formula", "checked", "status", "findings", "stats", "config"}
    f = doc["findings"][0]
    assert f == {"kind": "RedundantConjunct", "stage": "redundancy", "conjunct": "F[0,30] p1",
                 "enclosing": f"({PHI[1]})",
                 "conjunctPath": [0]}
    assert doc["config"]["mutexGroups"] == [["p1", "p3"]]


def _strip(doc):
    doc["stats"].pop("seconds")
    for c in doc["stats"]["checks"]:
        c.pop("seconds")
    return doc


def test_determinism():
    for text in PHI.values():
        assert _strip(run(text).to_json()) == _strip(run(text).to_json())


# ---------------------------------------------------------------- properties

@settings(max_examples=60, deadline=None)
@given(nnf_formulas(names=("a", "b"), max_end=2, max_leaves=5))
def test_stage_ordering(f):
    r = debug_pipeline(f)
    if r.status is Status.FAILED_VALIDITY:
        assert [x.stage for x in r.findings] == ["validity"]
    else:
        assert check_validity(f) is Validity.VALID


def _equivalent(x, y):
    return entails(to_nnf(x), to_nnf(y)) and entails(to_nnf(y), to_nnf(x))


@settings(max_examples=60, deadline=None)
@given(nnf_formulas(names=("a", "b"), max_end=2, max_leaves=5))
def test_vacuous_mutations_are_equivalent(f):
    if check_validity(f) is not Validity.VALID:
        return
    for v in check_vacuity(f):
        assert _equivalent(f, v.mutated)


@settings(max_examples=60, deadline=None)
@given(nnf_formulas(names=("a", "b"), max_end=2, max_leaves=5))
def test_redundancy_is_sound(f):
    if check_validity(f) is not Validity.VALID:
        return
    for r in check_redundancy(f):
        assert _equivalent(f, replace_at(f, r.conjunct_path, TRUE))
