"""End-to-end smoke tests for the Python bindings."""

import os
import sys

import pytest

sys.path.insert(0, os.environ.get("MWQ_PYMODULE_DIR", "."))
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..",
                                "python"))

import mwq  # noqa: E402

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "..", "data")


def read(*parts):
    with open(os.path.join(DATA, *parts)) as f:
        return f.read()


@pytest.fixture
def cancer():
    return mwq.load_kb(read("cancer", "kb.mwq"))


@pytest.fixture
def chemo():
    return mwq.load_kb(read("chemo", "kb.mwq"), read("chemo", "data.csv"))


def test_cancer_answers(cancer):
    answers = mwq.answer(cancer, read("cancer", "query_qb.mwq"))
    assert [t for t, _ in answers] == [("p1",), ("p2",)]
    oracle = mwq.answer(cancer, read("cancer", "query_qb.mwq"),
                        engine="oracle")
    assert answers == oracle


def test_cancer_classification(cancer):
    pairs = set(mwq.classify(cancer))
    assert ("BreastCancerPatient", "CancerPatient") in pairs
    assert ("SkinOfBreastStructure", "SkinStructure") in pairs
    assert ("CancerPatient", "BreastCancerPatient") not in pairs


def test_cancer_rewritings(cancer):
    rewritings = mwq.rewrite(cancer, read("cancer", "query_qb.mwq"))
    assert len(rewritings) == 3


def test_chemo_temporal(chemo):
    assert chemo.temporal
    answers = mwq.answer(chemo, read("chemo", "query_phi.mwq"))
    assert answers == [(("p1",), [(257, 258)])]

    saturation = mwq.saturate(chemo)
    assert saturation["p1"]["ChemotherapyPatient"] == [(0, 0), (167, 258)]
    assert saturation["p1"]["CancerPatient"] == [(0, 258)]
    assert mwq.representatives(chemo) == [-1, 0, 1, 166, 167, 168, 257, 258,
                                          259]


def test_chemo_only_tem(chemo):
    answers = mwq.answer(chemo, read("chemo", "query_phi.mwq"),
                         only_tem=True)
    assert answers == [(("p1",), [(258, 258)])]


def test_consistency():
    ok, _ = mwq.check(mwq.load_kb("A SUB B\nA(a)"))
    assert ok
    bad, witness = mwq.check(mwq.load_kb("A SUB bot\nA(a)"))
    assert not bad
    assert "A(a)" in witness


def test_parse_errors_raise():
    with pytest.raises(mwq.MwqError):
        mwq.load_kb("A SUB")


def test_bit_compare():
    assert mwq.bit_compare(3, 5, "=", 2, 8)
    assert not mwq.bit_compare(3, 5, "=", 3, 8)
    assert mwq.bit_compare(-1, 0, "=", 1, 8)
    assert "ovf" in mwq.emit_comparator_formula("=", 2, 8)


def test_fuzz_trials():
    for seed in range(5):
        assert mwq.fuzz_trial(seed, False)
        assert mwq.fuzz_trial(seed, True)
