import csv
import io
import json

import pytest

from ppkit.errors import MissingParam
from ppkit.sweep import (
    SweepPlan,
    SweepRecord,
    check_single,
    disagreements,
    run_plan,
    summarize,
    sweep_theorem,
    write_records,
)


def test_sweep_order_and_domain():
    recs = sweep_theorem("3.2", 3, 1)
    # all deltas in F_9, gamma over F_{q^2}* for this family
    assert len(recs) == 9 * 8
    keys = [(r.delta, r.gamma) for r in recs]
    assert keys == sorted(keys)
    assert disagreements(recs) == []


def test_sweep_fq_star_domain():
    recs = sweep_theorem("3.14", 5, 1)
    assert len(recs) == 25 * 4
    assert all(1 <= r.gamma < 5 for r in recs)


def test_probe_includes_whole_field():
    recs = sweep_theorem("3.14", 3, 1, probe_hypotheses=True)
    assert len(recs) == 9 * 9
    noted = [r for r in recs if r.note]
    assert noted and all(not r.predicted for r in noted)
    # probe records never count as disagreements
    assert disagreements(recs) == []


def test_sweep_i_values():
    recs = sweep_theorem("3.13", 3, 2)
    assert {r.i for r in recs} == {1}
    assert sweep_theorem("3.13", 3, 1) == []  # no valid i when m = 1


def test_sweep_trace_form_requires_d():
    with pytest.raises(MissingParam):
        sweep_theorem("4.1", 2, 2)
    recs = sweep_theorem("4.1", 2, 2, d=1)
    assert len(recs) == 4  # gamma over all of F_4
    assert disagreements(recs) == []


def test_workers_preserve_output():
    seq = sweep_theorem("3.14", 3, 1)
    par = sweep_theorem("3.14", 3, 1, workers=3)
    assert seq == par


def test_summarize():
    recs = sweep_theorem("3.14", 3, 1)
    s = summarize(recs)
    assert s["records"] == 18 and s["disagreements"] == 0
    assert s["predicted_true"] == s["oracle_true"]


def test_write_jsonl_and_csv():
    recs = sweep_theorem("3.14", 3, 1)[:4]
    buf = io.StringIO()
    write_records(recs, buf, "jsonl")
    lines = buf.getvalue().strip().split("\n")
    assert len(lines) == 4
    row = json.loads(lines[0])
    assert row["tid"] == "3.14" and row["agree"] is True
    buf = io.StringIO()
    write_records(recs, buf, "csv")
    rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
    assert len(rows) == 4 and rows[0]["tid"] == "3.14"
    with pytest.raises(ValueError):
        write_records(recs, io.StringIO(), "xml")


def test_write_to_path(tmp_path):
    recs = sweep_theorem("3.14", 3, 1)[:2]
    out = tmp_path / "recs.jsonl"
    write_records(recs, str(out), "jsonl")
    assert len(out.read_text().strip().split("\n")) == 2


def test_plan_from_file_with_overrides(tmp_path):
    plan_file = tmp_path / "plan.json"
    plan_file.write_text(json.dumps({"tid": "3.14", "p": 3, "m": 1, "workers": 1}))
    plan = SweepPlan.from_file(str(plan_file))
    assert plan == SweepPlan(tid="3.14", p=3, m=1)
    plan = SweepPlan.from_file(str(plan_file), p=5)
    assert plan.p == 5 and plan.tid == "3.14"
    assert disagreements(run_plan(plan)) == []


def test_check_single():
    rec = check_single("3.14", 3, 1, delta=0, gamma=1)
    assert isinstance(rec, SweepRecord)
    assert rec.predicted and rec.oracle and rec.agree
    rec = check_single("4.1", 2, 2, delta=0, gamma=3, d=1)
    assert rec.agree
