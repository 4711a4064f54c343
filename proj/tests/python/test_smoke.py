import pytest

import fuzzyhorn as fh

THEORY = """\
pred P/1
pred Q/1
const a
const b
equality on
P(a)
a == b
forall x. (P(x) -> Q(x))
"""

STRUCTURE = """\
algebra lukasiewicz
domain m
const c = m
pred P1 = (m)->1
pred P2 = (m)->9/10
pred P3 = (m)->1/2
"""


def test_classify():
    rows = fh.classify(THEORY)
    assert [r["tag"] for r in rows] == ["BasicHorn+weak", "BasicHorn+weak", "HornClause+weak"]
    assert rows[2]["rank"] == 1


def test_eval_exact():
    assert fh.eval(STRUCTURE, "P1(c) & P2(c) -> P3(c)") == "3/5"
    assert fh.eval(STRUCTURE, "~P2(c)") == "1/10"


def test_model_check():
    r = fh.model_check(STRUCTURE, "pred P1/1\npred P3/1\nconst c\nP1(c) -> P3(c)\n")
    assert r["verdict"] == "no"
    assert r["witness_value"] == "1/2"


def test_saturate():
    r = fh.saturate(THEORY, depth=0)
    assert r["consistent"] and r["complete"]
    # Atoms are stored with class-representative arguments; b collapses
    # into a's class.
    assert sorted(r["atoms"]) == ["P(a)", "Q(a)"]
    assert r["classes"] == [["a", "b"]]


def test_least_h_model():
    atoms = fh.least_h_model(
        "pred P/1\npred Q/1\nconst c\nfun f/1\nP(c)\nforall x. (P(x) -> Q(f(x)))\n",
        depth=2,
    )
    assert atoms == ["P(c)", "Q(f(c))"]


def test_free_hom():
    target = """\
algebra boolean2
domain m1
equality identity
const a = m1
const b = m1
pred P = (m1)->1
pred Q = (m1)->1
"""
    r = fh.free_hom(THEORY, target, depth=0)
    assert r["ok"]
    # Both sides are one-element crisp structures here.
    assert r["kind"] == "isomorphism"
    assert r["g"] == {"a": "m1"}


def test_algebra_op():
    assert fh.algebra_op("lukasiewicz", "conj", "3/5", "4/5") == "2/5"
    assert fh.algebra_op("godel", "residuum", "4/5", "3/5") == "3/5"


def test_errors():
    with pytest.raises(fh.ParseError):
        fh.classify("pred P/1\nP(\n")
    with pytest.raises(fh.SaturationError):
        fh.saturate("pred P/1\npred Q/1\nconst a\nP(a) \\/ Q(a)\n")
