import pytest
from fastapi.testclient import TestClient

from leibnizlab.cli import RemoteClient, main
from leibnizlab.service import app

MU1 = "dim 3\ne1*e1 = e2\ne2*e1 = e3\n"
MU2_PARAM = "dim 3\nparam b\ne1*e1 = e2\ne3*e3 = b*e2\ne1*e3 = e2\n"
LAMBDA5 = "dim 3\ne2*e2 = e1\ne3*e2 = e1\ne2*e3 = e1\n"


@pytest.fixture
def mu1_file(tmp_path):
    path = tmp_path / "mu1.alg"
    path.write_text(MU1)
    return str(path)


def test_check_ok(mu1_file, capsys):
    assert main(["check", mu1_file]) == 0
    assert capsys.readouterr().out.strip() == "leibniz: ok"


def test_check_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.alg"
    path.write_text("dim 1\ne1*e1 = e1\n")
    assert main(["check", str(path)]) == 1
    out = capsys.readouterr().out
    assert "FAILED" in out and "(1,1,1,1)" in out


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.alg"
    path.write_text("dim 2\ne1*e3 = e2\n")
    assert main(["check", str(path)]) == 2
    assert "out of range" in capsys.readouterr().err


def test_missing_file_is_usage_error(capsys):
    assert main(["check", "/nonexistent/x.alg"]) == 2


def test_classify_lambda5(tmp_path, capsys):
    path = tmp_path / "lambda5.alg"
    path.write_text(LAMBDA5)
    assert main(["classify", str(path)]) == 0
    out = capsys.readouterr().out
    assert "class: mu3" in out
    assert "certificate" in out


def test_classify_with_set(tmp_path, capsys):
    path = tmp_path / "mu2.alg"
    path.write_text(MU2_PARAM)
    assert main(["classify", str(path), "--set", "b=1/2"]) == 0
    assert "class: mu2(b=1/2)" in capsys.readouterr().out


def test_classify_non_nilpotent_exit_code(tmp_path, capsys):
    path = tmp_path / "aff.alg"
    path.write_text("dim 2\ne2*e1 = e2\n")
    assert main(["classify", str(path)]) == 1
    assert "nilpotent" in capsys.readouterr().err


def test_invariants_output(mu1_file, capsys):
    assert main(["invariants", mu1_file]) == 0
    out = capsys.readouterr().out
    assert "central series dims: 3 2 1 0" in out
    assert "right center dim: 2" in out
    assert "characteristic sequence: (3)" in out


def test_contract_catalog_family(mu1_file, capsys):
    assert main(["contract", mu1_file, "--catalog-family", "h"]) == 0
    out = capsys.readouterr().out
    assert "contracted law:" in out and "overall: pass" in out


def test_contract_pole_exit_code(mu1_file, tmp_path, capsys):
    fam = tmp_path / "bad.fam"
    fam.write_text("dim 3\ne2 -> t^3*e2\n")
    assert main(["contract", mu1_file, "--family", str(fam)]) == 1
    assert "limit does not exist" in capsys.readouterr().out


def test_perturb_with_direction_file(tmp_path, capsys):
    mu3 = tmp_path / "mu3.alg"
    mu3.write_text("dim 3\ne1*e1 = e2\ne3*e3 = e2\n")
    direction = tmp_path / "phi3.alg"
    direction.write_text("dim 3\ne1*e3 = e2\n")
    assert main(["perturb", str(mu3), "--direction", str(direction)]) == 0
    out = capsys.readouterr().out
    assert "leibniz: ok" in out
    assert "class: mu2(b=1/eps^2)" in out


def test_perturb_unknown_direction(mu1_file, capsys):
    assert main(["perturb", mu1_file, "--direction", "nope"]) == 1
    assert "neither" in capsys.readouterr().err


def test_graph_byte_stable(tmp_path, capsys):
    out1 = tmp_path / "a.dot"
    out2 = tmp_path / "b.dot"
    assert main(["graph", "--catalog", "leibn3", "-o", str(out1)]) == 0
    assert main(["graph", "--catalog", "leibn3", "-o", str(out2)]) == 0
    first, second = out1.read_bytes(), out2.read_bytes()
    assert first == second
    text = first.decode()
    assert "mu1 -> mu6 [style=solid];" in text
    assert "// sampling seed:" in text


def test_catalog_list(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    assert "laws:" in out and "families:" in out and "directions:" in out
    assert "mu2(b)" in out


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as err:
        main(["contract", "x.alg"])  # missing required family options
    assert err.value.code == 2


def test_remote_client_through_asgi(mu1_file, capsys):
    # CLI as a thin client of the HTTP service, dispatched in-process via the
    # test transport.
    with TestClient(app) as http:
        client = RemoteClient("http://testserver", http_client=http)
        assert main(["check", mu1_file], client=client) == 0
        assert capsys.readouterr().out.strip() == "leibniz: ok"

        bad = mu1_file.replace("mu1.alg", "bad.alg")
        with open(bad, "w") as handle:
            handle.write("dim 2\ne1*e3 = e2\n")
        assert main(["check", bad], client=client) == 2
        assert "out of range" in capsys.readouterr().err
