import json
from fractions import Fraction

import pytest

from burkhardt_core.errors import ParseError
from burkhardt_core.textio import load_model
from cli import EXIT_ERROR, EXIT_OK, main
from commands import parse_assignments


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_hilbert_minus_one_minus_one(capsys):
    assert main(["hilbert", "-a", "-1", "-b", "-1", "--json"]) == EXIT_OK
    payload = _json(capsys)
    assert payload["index"] == 2
    assert payload["ramified"] == ["2", "inf"]
    assert payload["reciprocity"] is True


def test_hilbert_single_place(capsys):
    assert main(["hilbert", "-a", "2", "-b", "3", "--place", "3", "--json"]) == EXIT_OK
    assert _json(capsys)["value"] == -1


def test_hilbert_search_on_split_conic(capsys):
    assert main(["hilbert", "-a", "2", "-b", "-1", "--search", "--json"]) == EXIT_OK
    payload = _json(capsys)
    assert payload["index"] == 1
    assert payload["conic_point"] is not None


def test_bad_rational_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["hilbert", "-a", "2", "-b", "x"])
    assert info.value.code == 2


def test_verify_list(capsys):
    assert main(["verify", "--list"]) == EXIT_OK
    names = capsys.readouterr().out.split()
    assert "tangent-cone" in names
    assert len(names) == 13


def test_verify_unknown_certificate(capsys):
    assert main(["verify", "no-such-check"]) == EXIT_ERROR
    assert "unknown certificate" in capsys.readouterr().err


def test_verify_json(capsys):
    assert main(["verify", "rst-index-enumeration", "sextic-twist", "--json"]) == EXIT_OK
    payload = _json(capsys)
    assert payload["passed"] is True
    assert [r["name"] for r in payload["reports"]] == ["rst-index-enumeration", "sextic-twist"]
    assert all(r["digest"].startswith("sha256:") for r in payload["reports"])


def test_verify_text_table(capsys):
    assert main(["verify", "kummer-model"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "kummer-model" in out
    assert "all certificates pass" in out


@pytest.mark.parametrize(
    "argv, index",
    [
        (["--class", "e1+e4"], 4),
        (["--symbol=-1,t"], 2),
        (["--biquaternion=-1,s,-s,t"], 4),
        (["--class", "0"], 1),
    ],
)
def test_classify_rst(capsys, argv, index):
    assert main(["classify-rst", *argv, "--json"]) == EXIT_OK
    assert _json(capsys)["index"] == index


def test_classify_rst_table(capsys):
    assert main(["classify-rst", "--table", "--json"]) == EXIT_OK
    assert len(_json(capsys)["classes"]) == 16


def test_classify_rst_bad_monomial(capsys):
    assert main(["classify-rst", "--symbol=-1,u"]) == EXIT_ERROR
    assert "bad monomial" in capsys.readouterr().err


def test_kummer_check(capsys):
    assert main(["kummer-check", "--a4", "-1", "--a6", "1", "--r", "2", "--json"]) == EXIT_OK
    payload = _json(capsys)
    assert payload["degree"] <= 4
    assert payload["r"] == "2"


def test_kummer_check_rejects_zero_r(capsys):
    assert main(["kummer-check", "--a6", "1", "--r", "0"]) == EXIT_ERROR
    assert "nonzero" in capsys.readouterr().err


def test_twist_writes_a_loadable_model(capsys, tmp_path):
    out = tmp_path / "twist.json"
    assert main(["twist", "--roots", "0,1,-1,2,-2,3", "--out", str(out), "--json"]) == EXIT_OK
    payload = _json(capsys)
    assert payload["source"] == "sextic"
    model = load_model(str(out))
    assert model.elimination == "x1"
    assert model.forms[0].is_homogeneous(1)


def test_twist_rejects_repeated_roots(capsys):
    assert main(["twist", "--roots", "1,1,2,3,4,5"]) == EXIT_ERROR
    assert "distinct" in capsys.readouterr().err


def test_twist_bdoubleprime_specialized(capsys):
    assert main(["twist", "--bdoubleprime", "--specialize", "s=1", "--json"]) == EXIT_OK
    assert _json(capsys)["model"]["params"] == ["t"]


def test_obstruction_on_bprime(capsys):
    assert main(["obstruction", "--point", "(40:-30:-8:-5:3:0)", "--json"]) == EXIT_OK
    payload = _json(capsys)
    assert payload["hessian"] == "off"
    assert payload["local"]["index"] == 2
    assert payload["local"]["conic_point"] is None


def test_obstruction_rejects_points_off_the_model(capsys):
    assert main(["obstruction", "--point", "(1:1:-2:0:0:1)"]) == EXIT_ERROR
    assert "is not on" in capsys.readouterr().err


def test_fibration_default_fiber(capsys):
    assert main(["fibration", "--multiples", "3", "--json"]) == EXIT_OK
    payload = _json(capsys)
    assert payload["fiber"] == "(3/5,4)"
    assert payload["torsion"] == "non_torsion_certified"
    assert len(payload["multiples"]) == 3
    assert payload["multiples"][0]["bprime"] == "(20:2:-9:-60:15:32)"


def test_fibration_needs_both_parameters(capsys):
    assert main(["fibration", "--u", "1"]) == EXIT_ERROR


def test_show_log_goes_to_stderr(capsys):
    assert main(["verify", "kummer-model", "--show-log"]) == EXIT_OK
    err = capsys.readouterr().err
    assert "Certificate kummer-model" in err


def test_parse_assignments():
    assert parse_assignments("s=1, t=-2/3") == {"s": Fraction(1), "t": Fraction(-2, 3)}
    with pytest.raises(ParseError) as info:
        parse_assignments("s=1,t")
    assert info.value.offset == 4
