import json
import subprocess
import sys

import pytest

from reference_rules import rule_polynomials
from shuffleop import GroebnerBasis
from shuffleop.cli import main


@pytest.fixture
def run(tmp_path, capsys):
    def go(*argv, cache=True):
        extra = ["--cache-dir", str(tmp_path / "cache")] if cache and argv[0] != "tau-check" else []
        code = main(list(argv) + extra)
        out, err = capsys.readouterr()
        return code, out, err
    return go


def _table(out):
    return [int(line.split("\t")[1]) for line in out.strip().splitlines()[1:]]


def test_dims_human(run):
    code, out, _ = run("dims", "--operad", "com-gd", "--max-arity", "5")
    assert code == 0
    assert _table(out) == [1, 2, 6, 20, 74]


def test_dims_json(run):
    code, out, _ = run("dims", "--operad", "as", "--max-arity", "4", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["dims"] == {"1": 1, "2": 2, "3": 6, "4": 24}
    assert data["operad"] == "as" and data["max_arity"] == 4 and data["precedence"] == ["mul", "mul'"]


def test_dims_tp(run):
    assert _table(run("dims", "--operad", "tp", "--max-arity", "5")[1]) == [1, 2, 6, 20, 74]


def test_complete_writes_basis(run, tmp_path):
    out_path = tmp_path / "basis.json"
    code, out, _ = run("complete", "--operad", "com-gd", "--max-arity", "4", "--format", "json",
                       "--out", str(out_path))
    assert code == 0
    assert "12 rules" in out
    basis = GroebnerBasis.from_dict(json.loads(out_path.read_text()))
    assert basis.certified_arity == 4
    for p in rule_polynomials(basis.order):
        assert basis.normal_form(p)[0].is_zero()


def test_complete_lie_and_com(run):
    code, out, _ = run("complete", "--operad", "lie", "--max-arity", "3")
    assert code == 0
    assert sum(1 for line in out.splitlines() if line.startswith("[")) == 1
    code, out, _ = run("complete", "--operad", "com", "--max-arity", "3", "--format", "json")
    data = json.loads(out)
    assert data["summary"] == {"2": 0, "3": 2}


def test_verify_exit_codes(run, tmp_path):
    code, out, _ = run("verify", "--operad", "tp", "--identity", "manifold")
    assert code == 0 and "holds" in out
    code, out, _ = run("verify", "--operad", "com-gd", "--identity", "tp-identity")
    assert code == 0
    cert = tmp_path / "cert.json"
    code, out, _ = run("verify", "--operad", "gd", "--identity", "spec2", "--out", str(cert))
    assert code == 1 and "nonzero normal form" in out
    report = json.loads(cert.read_text())
    assert report["result"] == "fails"
    assert any(r["normal_form"] != "0" for r in report["certificate"])


def test_verify_json(run):
    code, out, _ = run("verify", "--operad", "lie", "--identity", "jacobi", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["result"] == "holds" and data["orbit_size"] == 1
    assert data["certificate"][0]["normal_form"] == "0"


def test_verify_identity_file(run, tmp_path):
    f = tmp_path / "ident.opd"
    f.write_text("op mul : symmetric\nop bra : antisymmetric\n"
                 "id t : 2*mul(bra(x1, x2), x3) = bra(mul(x1, x3), x2) + bra(x1, mul(x2, x3))\n")
    code, out, _ = run("verify", "--operad", "com-gd", "--identity-file", str(f))
    assert code == 0 and out.startswith("t modulo com-gd: holds")


def test_presentation_file(run, tmp_path):
    f = tmp_path / "mylie.opd"
    f.write_text("op b : antisymmetric\nid jac : b(b(x1, x2), x3) + b(b(x2, x3), x1) + b(b(x3, x1), x2) = 0\n")
    code, out, _ = run("dims", "--presentation-file", str(f), "--max-arity", "5")
    assert code == 0 and _table(out) == [1, 1, 2, 6, 24]


def test_parse_error_exit_two(run, tmp_path):
    f = tmp_path / "bad.opd"
    f.write_text("op mul : plain\nid a : mul(x1, x1) = 0\n")
    code, _, err = run("dims", "--presentation-file", str(f))
    assert code == 2
    assert "bad.opd:2:8:" in err


@pytest.mark.parametrize("argv", [
    ("dims", "--operad", "nope"),
    ("verify", "--operad", "gd", "--identity", "nope"),
    ("tau-check", "nope"),
    ("dims", "--operad", "com-gd", "--precedence", "mul,foo"),
    ("dims", "--operad", "com-gd", "--workers", "0"),
    ("verify", "--operad", "tp", "--identity", "manifold", "--max-arity", "3"),
    ("bogus",),
])
def test_usage_errors(run, argv):
    assert run(*argv)[0] == 2


def test_arity_cap_exit_three(run):
    assert run("dims", "--operad", "com", "--max-arity", "8")[0] == 3


def test_tau_check(run):
    code, out, _ = run("tau-check", "spec1")
    assert code == 0 and out.startswith("spec1: zero")
    code, out, _ = run("tau-check", "comm", "--format", "json")
    assert code == 1 and json.loads(out)["zero"] is False


def test_precedence_override(run):
    code, out, _ = run("dims", "--operad", "com-gd", "--max-arity", "4", "--precedence", "bra,mul",
                       "--format", "json")
    data = json.loads(out)
    assert data["precedence"] == ["bra", "mul"]
    assert list(data["dims"].values()) == [1, 2, 6, 20]


def test_cache_reused(run, tmp_path):
    run("dims", "--operad", "lie", "--max-arity", "4")
    files = list((tmp_path / "cache").glob("basis-*.json"))
    assert len(files) == 1
    before = files[0].read_text()
    assert _table(run("dims", "--operad", "lie", "--max-arity", "4")[1]) == [1, 1, 2, 6]
    assert files[0].read_text() == before


def test_no_cache(run, tmp_path, monkeypatch):
    monkeypatch.setenv("SHUFFLEOP_CACHE", str(tmp_path / "env"))
    run("dims", "--operad", "lie", "--max-arity", "3", "--no-cache", cache=False)
    assert not (tmp_path / "env").exists()


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "shuffleop", "dims", "--operad", "com", "--max-arity", "3",
                           "--no-cache"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert _table(proc.stdout) == [1, 1, 1]
