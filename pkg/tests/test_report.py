import csv

from basecert import certifier as C
from basecert.report import AUDIT_HEADER, _log10, write_report


def test_log10_of_huge_integers():
    assert abs(_log10(10**400) - 400) < 1e-9
    assert _log10(0) == float("-inf")


def test_bundle_contents(tmp_path):
    cert = C.certify_base(8, 2, 5, bits=64)
    paths = write_report(cert, tmp_path / "out")
    assert C.verify_certificate(C.certificate_from_text(paths["certificate"].read_text()))
    with open(paths["audit"]) as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == AUDIT_HEADER
    assert len(rows) == 1 + len(cert.rows)
    failing = [r for r in rows[1:] if r[-1] == "0"]
    assert [r[1] for r in failing] == ["b1"]
    for key in ("ratio", "contributions"):
        data = paths[key].read_bytes()
        assert data[:8] == b"\x89PNG\r\n\x1a\n" and len(data) > 1000
