import io
import json

import pytest

from artifact.cli import run
from artifact.codes import bundled_code_path



def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def structured(*argv):
    code, text = call("--format", "structured", *argv)
    return code, json.loads(text)


def test_codes_check(tmp_path):
    path = tmp_path / "rep.code"
    path.write_text("kind: Z3\nlength: 3\ngenerators:\n1 1 1\n")
    code, data = structured("codes", "check", str(path))
    assert code == 0
    assert data["size"] == 3 and data["dual_size"] == 9
    assert data["self_orthogonal"] and not data["self_dual"]


def test_codes_check_reports_format_errors(tmp_path, capsys):
    path = tmp_path / "bad.code"
    path.write_text("kind: Z3\nlength: 3\ngenerators:\n1 x 1\n")
    code, text = call("codes", "check", str(path))
    assert code == 2
    assert "line 4" in capsys.readouterr().err


def test_missing_file_is_an_error():
    code, _ = call("codes", "check", "/nonexistent/file.code")
    assert code == 2


def test_lattice_info_defaults_to_e8():
    code, data = structured("lattice", "info")
    assert code == 0
    assert data["rank"] == 8 and data["determinant"] == "1" and data["even"]


def test_lattice_theta_text():
    code, text = call("lattice", "theta", "--order", "3")
    assert code == 0
    for value in ("240", "2160", "6720"):
        assert value in text


def test_twisted_catalog_counts():
    code, data = structured("twisted", "catalog")
    assert code == 0
    assert data["count"] == 3 == data["dual_quotient_size"]
    code, data = structured("twisted", "catalog", "--every-eta")
    assert sum(len(c) for c in data["classes"]) == 3
    path = bundled_code_path("ternary_golay")
    code, data = structured("twisted", "catalog", "--D", str(path))
    assert code == 0 and data["count"] == 1


def test_fusion_mult():
    code, text = call("fusion", "mult", "V(c,1)", "V(c,2)")
    assert code == 0
    assert "2V(c,0)" in text
    code, text = call("fusion", "mult", "T(0,1)[0]", "T(0,2)[0]")
    assert code == 0 and "UNDEFINED" in text


def test_fusion_bad_label():
    code, _ = call("fusion", "mult", "V(c,1)[0]", "V(0,0)[0]")
    assert code == 2


def products(text):
    return [line for line in text.splitlines() if " x " in line and not line.startswith("#")]


def test_fusion_table_sizes():
    code, text = call("fusion", "table", "--ring", "mt")
    assert code == 0 and len(products(text)) == 21
    code, text = call("fusion", "table", "--ring", "vl")
    assert code == 0 and len(products(text)) == 30 * 31 // 2


def test_fusion_table_code_ring_needs_code():
    code, _ = call("fusion", "table", "--ring", "d")
    assert code == 2


def test_char_module():
    code, data = structured("char", "module", "T(0,1)[0]", "--order", "2")
    assert code == 0
    assert data["lowest_weight"] == "1/9"


def test_char_decompose():
    code, text = call("char", "decompose", "--eta", "0", "--order", "2")
    assert code == 0 and "FAIL" not in text


def test_verify_all_fast():
    code, text = call("verify", "all", "--no-engine")
    assert code == 0
    assert "FAIL" not in text


def test_verify_length_two_reports_the_weight_bound():
    code, text = call("verify", "all", "--ell", "2", "--no-engine")
    assert code == 1
    assert "wt_K(lam) = l" in text


def test_ops_tables():
    code, data = structured("ops", "tables")
    assert code == 0 and data["ok"]
    assert len(data["identities"]) == 72


def test_usage_error_exits_nonzero():
    with pytest.raises(SystemExit):
        call("lattice")
