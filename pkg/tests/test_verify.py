import json

import pytest

from radon_filtration.errors import ParameterError
from radon_filtration.verify import CHECKS, DISCREPANCY, FAIL, PASS, configurations, run_suite

EXPECTED_DISCREPANCIES = {
    "commuting_square_unscaled_i",
    "commuting_square_unscaled_ii",
    "nj_printed_formula",
    "pairing_printed_closed_sum",
}


def test_subset_configuration_passes_apart_from_the_singleton_sign():
    result = run_suite("subset", 5)
    assert result.ok
    assert result.summary() == {PASS: len(result.records) - 1, FAIL: 0, DISCREPANCY: 1}
    (flagged,) = result.by_status(DISCREPANCY)
    assert flagged.check == "eigenvalue_printed_singletons"
    assert flagged.witness == {"printed": [4, 1], "exact": [4, -1]}
    assert {r.check for r in result.records} >= {"composition_identity", "filtration_dims"}


def test_subspace_discrepancies_are_only_the_known_ones():
    result = run_suite("subspace", 4, 2)
    assert result.ok
    found = {r.check for r in result.by_status(DISCREPANCY)}
    assert found and found <= EXPECTED_DISCREPANCIES
    nj = [r for r in result.by_status(DISCREPANCY) if r.check == "nj_printed_formula"]
    assert {"oracle": 6, "printed": "12/1"} in [r.witness for r in nj]


def test_small_subspace_agrees_with_printed_counts():
    result = run_suite("subspace", 2, 2, ["nj_ledger", "theorem5"])
    assert result.by_status(DISCREPANCY) == []
    value = next(r for r in result.records if r.check == "pairing_value")
    assert value.witness["value"] == "1/2"


def test_check_filter_and_ids():
    result = run_suite("subset", 4, checks=["composition"])
    assert {r.check for r in result.records} == {"composition_identity"}
    ids = [r.id for r in result.records]
    assert len(ids) == len(set(ids))
    assert all(r.id.startswith(r.check + "[") for r in result.records)


def test_outputs_are_deterministic():
    a = run_suite("subspace", 3, 2)
    b = run_suite("subspace", 3, 2, jobs=2)
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())
    assert a.to_csv() == b.to_csv()
    assert a.to_csv().splitlines()[0] == "id,check,status,params,witness"


def test_configurations():
    assert configurations("subset") == [("subset", n, None) for n in range(1, 9)]
    assert configurations("subspace", 4) == [("subspace", 4, 2), ("subspace", 4, 3)]
    assert len(configurations("all")) == 15
    for bad in [("subset", 3, 2), ("subspace", 9, None), ("cube", None, None)]:
        with pytest.raises(ParameterError):
            configurations(*bad)


def test_rejects_bad_runs():
    with pytest.raises(ParameterError):
        run_suite("subset", 4, checks=["nonsense"])
    with pytest.raises(ParameterError):
        run_suite("subset", 11)
    with pytest.raises(ParameterError):
        run_suite("subspace", 7, 3)
    assert set(CHECKS) >= {"composition", "theorem5", "nj_ledger", "intertwining"}


def test_public_names_resolve():
    import radon_filtration

    assert all(hasattr(radon_filtration, name) for name in radon_filtration.__all__)
