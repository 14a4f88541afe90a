import pytest

from screewidth import corpus
from screewidth.errors import ClaimFailedError


def test_records_are_well_formed():
    records = corpus.load_records()
    assert len(records) >= 50
    ids = [r["id"] for r in records]
    assert len(set(ids)) == len(ids)
    for r in records:
        assert r["statement"]
        assert "graph" in r
        if r.get("mode") != "open":
            assert r["checks"], r["id"]


def test_filter_selects_by_id_and_group():
    assert all("petersen" in r["id"] or r.get("group") == "petersen"
               for r in corpus.load_records("petersen"))
    assert corpus.load_records("no-such-record") == []


def test_full_corpus_passes():
    report = corpus.run_corpus()
    counts = report.counts
    assert counts["fail"] == 0, report.failed_ids
    assert counts["pass"] >= 55
    assert counts["open"] == 1  # the six-cube stays open, never checked
    report.raise_if_failed()  # no-op when green


def test_open_records_are_skipped_not_run():
    results = corpus.run_corpus("hypercube-6-open").results
    assert len(results) == 1
    assert results[0].status == "open"
    assert results[0].outcomes == []


def test_failed_claim_raises_with_offenders():
    record = {
        "id": "doctored",
        "statement": "deliberately wrong value",
        "graph": {"family": "cycle", "params": [5]},
        "checks": [{"op": "scw_exact", "expect": 7}],
    }
    result = corpus.run_record(record)
    assert result.status == "fail"
    report = corpus.CorpusReport([result])
    with pytest.raises(ClaimFailedError) as err:
        report.raise_if_failed()
    assert err.value.failed_ids == ["doctored"]


def test_cited_checks_never_count_as_proven():
    for record in corpus.load_records():
        if record.get("mode") == "open":
            continue
        result = corpus.run_record(record)
        for outcome in result.outcomes:
            if outcome.op == "cited":
                assert outcome.status == "cited"


def test_report_table_and_json_shapes():
    report = corpus.run_corpus("petersen")
    table = report.to_table()
    assert "petersen-sandwich" in table and "passed" in table
    payload = report.to_json_obj()
    assert payload["counts"]["fail"] == 0
    assert all("checks" in row for row in payload["results"])
