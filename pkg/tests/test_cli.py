import io
import json
import subprocess
import sys

import pytest

from freeinv.cli import ResultRecord, main


def call(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_analyze_lists_admissible_patterns():
    code, out = call("analyze", "--n", "1", "--m", "2", "--l", "4")
    assert code == 0
    recs = records(out)
    assert len(recs) == 12
    assert all(r["verdict"]["status"] == "admissible" for r in recs)
    assert all(r["match"]["case"] != "unmatched" for r in recs)


def test_analyze_is_deterministic():
    assert call("analyze", "--n", "1", "--m", "2", "--l", "2", "--action", "all") == \
        call("analyze", "--n", "1", "--m", "2", "--l", "2", "--action", "all")


def test_record_roundtrip():
    _, out = call("analyze", "--n", "1", "--m", "2", "--l", "4", "--pattern", "d2(a)=t^2*1")
    line = out.strip()
    rec = ResultRecord.from_json(line)
    assert rec.to_json() == line
    assert rec.poincare == [1] * 8
    assert rec.index["cohomology_index_s"] == 1
    assert rec.schema_version == 1


def test_rejected_pattern_exits_one():
    code, out = call("analyze", "--n", "2", "--m", "2", "--l", "5",
                     "--pattern", "d2(c)=t^2*ab;d3(a)=t^3*1;d3(b)=t^3*1")
    assert code == 1
    rec = records(out)[0]
    assert rec["verdict"]["status"] == "violates_leibniz"
    assert rec["poincare"] is None


def test_swap_action_by_descriptor():
    code, out = call("analyze", "--n", "1", "--m", "2", "--l", "2", "--action", "a=a,b=c,c=b",
                     "--pattern", "d5(bc)=t^5*1")
    assert code == 1
    assert records(out)[0]["verdict"]["status"] == "violates_permanent_cocycle"


def test_verify_pass_and_usage_errors():
    code, out = call("verify", "thm3.6-1", "--n", "1", "--m", "2", "--l", "4")
    assert code == 0 and all(r["status"] == "pass" for r in records(out))
    assert call("verify", "thm9", "--n", "1", "--m", "2", "--l", "4")[0] == 2
    assert call("verify", "thm3.2", "--n", "1", "--m", "2", "--l", "4")[0] == 2


def test_oracle_command():
    code, out = call("oracle", "--n", "2", "--m", "3", "--l", "5", "--factor", "2")
    assert code == 0
    rec = records(out)[0]
    assert rec["oracle"] == rec["engine"] and rec["status"] == "pass"


@pytest.mark.parametrize("argv", [
    ["analyze", "--n", "2", "--m", "1", "--l", "3"],
    ["analyze", "--n", "1", "--m", "2", "--l", "4", "--action", "a=b,b=a,c=c"],
    ["analyze", "--n", "1", "--m", "2", "--l", "4", "--pattern", "nonsense"],
    ["oracle", "--n", "1", "--m", "2", "--l", "4", "--factor", "5"],
    [],
])
def test_usage_errors_exit_two(argv, capsys):
    assert call(*argv)[0] == 2


def test_table_format_and_env_override(monkeypatch):
    code, out = call("analyze", "--n", "1", "--m", "2", "--l", "4", "--pattern", "d2(a)=t^2*1",
                     "--format", "table")
    assert code == 0 and "dim H^k" in out and "case     thm3.6-1" in out
    monkeypatch.setenv("FREEINV_FORMAT", "table")
    _, out2 = call("analyze", "--n", "1", "--m", "2", "--l", "4", "--pattern", "d2(a)=t^2*1")
    assert out2 == out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "freeinv.cli", "oracle", "--n", "1", "--m", "1",
                           "--l", "2", "--factor", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["match"] is True
