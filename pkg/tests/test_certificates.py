import pytest

from burkhardt_core.certificates import (
    CERTIFICATES,
    canonical_json,
    digest,
    resolve_selection,
    run_certificates,
    summary_frame,
)
from burkhardt_core.errors import UnknownCertificateError
from burkhardt_core.settings import RunSettings

QUICK = ["rst-index-enumeration", "sextic-twist", "kummer-model", "singularities"]


def test_canonical_json_is_key_order_independent():
    assert canonical_json({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
    assert digest({"a": 1, "b": 2}) == digest({"b": 2, "a": 1})
    assert digest({"a": 1}).startswith("sha256:")


def test_resolve_selection():
    assert resolve_selection("all") == sorted(CERTIFICATES)
    assert resolve_selection(["all"]) == sorted(CERTIFICATES)
    assert resolve_selection(["tangent-cone", "fibration", "tangent-cone"]) == ["fibration", "tangent-cone"]
    with pytest.raises(UnknownCertificateError) as info:
        resolve_selection(["no-such-check"])
    assert "tangent-cone" in info.value.available


@pytest.mark.parametrize("name", QUICK)
def test_quick_certificates_pass(name):
    (report,) = run_certificates([name])
    assert report.passed, report.details


def test_reports_are_reproducible():
    first = run_certificates(QUICK)
    second = run_certificates(QUICK, RunSettings(threads=4))
    assert [r.name for r in first] == sorted(QUICK)
    assert [r.digest for r in first] == [r.digest for r in second]


def test_report_dict_and_summary():
    reports = run_certificates(["rst-index-enumeration"])
    body = reports[0].as_dict()
    assert body["status"] == "pass"
    assert body["digest"] == reports[0].digest
    assert body["details"]["index_four"] == ["e1+e2+e4", "e1+e3+e4", "e1+e4", "e2+e3+e4"]
    frame = summary_frame(reports)
    assert list(frame.columns) == ["certificate", "status", "seconds", "digest"]
    assert frame.loc[0, "status"] == "pass"


@pytest.mark.slow
@pytest.mark.parametrize(
    "name",
    [
        "maschke-identity",
        "character-table",
        "rho5-invariance",
        "bdoubleprime-reconstruction",
        "bprime-obstruction",
        "bdoubleprime-restriction",
        "tangent-cone",
        "fibration",
        "symmetric-powers",
    ],
)
def test_remaining_certificates_pass(name):
    (report,) = run_certificates([name])
    assert report.passed, report.details
    assert report.elapsed < 60
