import json

import pytest

from gcat.errors import UnknownSuite
from gcat.suites import SUITES, dwyer_cells, homology_cells, run_case, run_suite


@pytest.mark.parametrize("suite", list(SUITES))
def test_every_suite_passes_a_few_cases(suite):
    rep = run_suite(suite, seed=11, cases=4)
    assert rep["ok"], [r for r in rep["results"] if not r["pass"]]
    assert [r["case"] for r in rep["results"]] == sorted(r["case"] for r in rep["results"])


def test_case_shape():
    r = run_case("tensor-fixed", 5, 3)
    assert set(r) == {"case", "seed", "pass", "detail"}
    assert r["case"] == "tensor-fixed-0003"


def test_cases_depend_only_on_suite_seed_index():
    a = run_case("pushout-explicit", 9, 4)
    full = run_suite("pushout-explicit", 9, 6)["results"]
    assert full[4] == a
    assert run_case("pushout-explicit", 10, 4) != a


def test_reports_are_reproducible():
    a = json.dumps(run_suite("filtered-mono", 2, 5))
    b = json.dumps(run_suite("filtered-mono", 2, 5, jobs=2))
    assert a == b


def test_empty_suite_is_vacuous():
    rep = run_suite("pushout-fixed", 1, 0)
    assert rep["ok"] and rep["results"] == []


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope")


def test_cell_lists():
    labels = [label for label, _ in dwyer_cells()]
    assert labels[:3] == ["gen0", "gen1", "gen2"]
    assert "horn2,1->boundary" in labels and "horn1,0->delta" in labels
    expect = {label: eq for label, _, eq in homology_cells()}
    assert expect["gen2"] is False and expect["horn2,2"] is True
