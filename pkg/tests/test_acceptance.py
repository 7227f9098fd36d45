"""Acceptance suite runner"""

import pytest

from symloops.acceptance import CRITERIA, CriterionResult, load_parameters, run_acceptance
from symloops.errors import InputFormatError


def test_quick_suite_passes():
    results = run_acceptance(seed=3, quick=True)
    assert [r.key for r in results] == list(CRITERIA)
    for result in results:
        assert result.passed, (result.key, result.failures)
        assert result.checks > 0


def test_only_filter():
    results = run_acceptance(seed=3, quick=True, only=["milnor-k2"])
    assert [r.key for r in results] == ["milnor-k2"]


def test_same_seed_same_checks():
    a = run_acceptance(seed=11, quick=True, only=["tame-symbols", "simplicial"])
    b = run_acceptance(seed=11, quick=True, only=["tame-symbols", "simplicial"])
    assert [r.as_dict() for r in a] == [r.as_dict() for r in b]


def test_parameters_cover_every_criterion():
    quick, full = load_parameters(quick=True), load_parameters()
    assert set(quick) == set(full) == set(CRITERIA)
    assert quick["milnor-k2"]["fields"] == [2, 3, 4]


def test_bad_parameter_files(tmp_path):
    with pytest.raises(InputFormatError):
        load_parameters(tmp_path / "missing.yaml")
    partial = tmp_path / "partial.yaml"
    partial.write_text("milnor-k2:\n  quick: {fields: [2]}\n")
    with pytest.raises(InputFormatError):
        load_parameters(partial, quick=True)
    broken = tmp_path / "broken.yaml"
    broken.write_text("closed-form: [unclosed\n")
    with pytest.raises(InputFormatError):
        load_parameters(broken)


def test_timing_is_opt_in():
    result = CriterionResult("k", "title", False, 3, [f"failure {i}" for i in range(8)], 1.23456)
    doc = result.as_dict()
    assert "seconds" not in doc
    assert doc["status"] == "fail"
    assert len(doc["failures"]) == 5
    assert result.as_dict(timing=True)["seconds"] == 1.235
