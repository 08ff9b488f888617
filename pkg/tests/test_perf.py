import json

import perf


def test_disabled_trace_records_nothing():
    with perf.span("quiet"):
        perf.mark("hits")
    assert perf.snapshot() is None
    assert perf.dumps(None) == "{}"


def test_trace_summary_carries_spans_and_marks():
    perf.enable("run-1")
    for _ in range(2):
        with perf.span("engine.satisfy", extra={"n": 5}):
            perf.mark("oracle.nodes", 3)
    summary = json.loads(perf.dumps(perf.snapshot()))
    assert set(summary) == {"id", "total_ms", "spans", "marks"}
    assert summary["id"] == "run-1"
    assert summary["spans"]["engine.satisfy"]["count"] == 2
    assert summary["marks"] == {"oracle.nodes": 6.0}


def test_failed_span_is_tagged():
    perf.enable()
    try:
        with perf.span("boom"):
            raise KeyError("x")
    except KeyError:
        pass
    assert perf.snapshot()["spans"][0]["error"] == "KeyError"
