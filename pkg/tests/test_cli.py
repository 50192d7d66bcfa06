import io
import json

import pytest

from basecert.cli import run


def call(*argv):
    buf = io.StringIO()
    status = run(list(argv), out=buf)
    return status, buf.getvalue()


def call_json(*argv):
    status, text = call(*argv, "--format", "json")
    doc = json.loads(text)
    assert doc["status"] == status
    return status, doc


def test_certify_sp8_2():
    status, doc = call_json("certify", "--family", "sp", "--n", "8", "--q", "2")
    assert status == 0
    assert doc["result"]["certified"] is True
    num, den = doc["result"]["q_upper"]
    assert num < den


def test_certify_c1_not_certified():
    status, text = call("certify", "--family", "sp", "--n", "8", "--q", "2", "--c", "1")
    assert status == 1
    assert text.rstrip().endswith("status\t1")


def test_text_envelope():
    status, text = call("eta", "--family", "sp", "--n", "8", "--q", "2")
    lines = text.splitlines()
    assert lines[0].startswith("# basecert ")
    assert lines[1] == "# verb\teta"
    assert lines.count("---") == 2
    assert lines[-1] == "status\t0"
    assert status == 0


def test_eta_value():
    _, doc = call_json("eta", "--family", "sp", "--n", "8", "--q", "2")
    assert doc["result"]["eta_upper_decimal"] == "0.380404946446"
    assert doc["result"]["rounding"] == "up"


def test_output_independent_of_threads():
    a = call("certify", "--family", "sp", "--n", "10", "--q", "3", "--threads", "1")
    b = call("certify", "--family", "sp", "--n", "10", "--q", "3", "--threads", "2")
    assert a == b


@pytest.mark.parametrize("argv", [
    ("certify", "--n", "8", "--q", "2"),
    ("certify", "--family", "sl", "--n", "8", "--q", "2"),
    ("certify", "--family", "sp", "--n", "8", "--q", "6"),
    ("nets", "--rank", "6", "--psi", "e8"),
    ("slambda", "--type", "A", "--rank", "3", "--hw", "spin"),
    ("frobnicate",),
    ("eta", "--family", "sp", "--n", "8", "--q", "2", "--threads", "0"),
])
def test_usage_errors(argv):
    status, text = call(*argv)
    assert status == 2
    assert "error\t" in text


def test_usage_error_json():
    status, doc = call_json("nets", "--rank", "6", "--psi", "zz")
    assert status == 2 and doc["error"]["reason"] == "bad-subsystem"


def test_resource_guard(monkeypatch):
    monkeypatch.setenv("BASECERT_MEM_LIMIT", "100")
    status, doc = call_json("verify-base", "--preset", "gu4", "--q", "3")
    assert status == 3 and doc["error"]["reason"] == "resource-guard"


def test_slambda_and_nets():
    _, doc = call_json("slambda", "--type", "A", "--rank", "7", "--hw", "l4")
    assert doc["result"]["bound"] == "20"
    _, doc = call_json("slambda", "--type", "D", "--rank", "6", "--hw", "spin")
    assert doc["result"]["bound"] == "8"
    _, doc = call_json("nets", "--rank", "5", "--psi", "a1a1-1")
    assert doc["result"]["nets"] == {"4": "1", "2": "4", "1": "4"}


def test_verify_base_presets():
    status, doc = call_json("verify-base", "--preset", "gu4", "--q", "2")
    assert status == 0 and doc["result"]["verdict"] == "BASE"
    status, doc = call_json("verify-base", "--preset", "gu4", "--q", "2", "--drop-last")
    assert status == 1 and doc["result"]["verdict"] == "NOT A BASE"
    status, _ = call_json("verify-base", "--preset", "adjoint", "--n", "4", "--q", "3")
    assert status == 0
    status, _ = call_json("verify-base", "--preset", "alternating", "--n", "4", "--q", "2")
    assert status == 0


def test_filter_and_oracle():
    _, doc = call_json("filter", "--family", "l", "--n", "8", "--q", "2", "--d", "100")
    assert doc["result"]["threshold"] == "260/3" and doc["result"]["survives"] is False
    status, doc = call_json("oracle", "fixed-points", "--n", "6", "--q", "2")
    assert status == 0 and doc["result"]["verdict"] == "MATCH"
    status, _ = call_json("oracle", "class-census", "--n", "4", "--q", "3")
    assert status == 0


def test_classes_listing():
    status, text = call("classes", "--family", "sp", "--n", "4", "--q", "2")
    assert status == 0 and "c2" in text


def test_report_bundle(tmp_path):
    status, _ = call("certify", "--family", "sp", "--n", "8", "--q", "3", "--out-dir", str(tmp_path))
    assert status == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["sp8_q3_c5.audit.csv", "sp8_q3_c5.cert.txt", "sp8_q3_c5.q.png", "sp8_q3_c5.ratio.png"]
