import io
import json
import subprocess
import sys

import pytest

from taureg.cli import RunConfig, is_probable_prime, main, resolve_seed
from taureg.errors import ValidationError
from taureg.formats import parse_module, read_algebra
from taureg.algebra import build_algebra

from conftest import FIXTURES


def run(*args):
    out = io.StringIO()
    code = main([str(a) for a in args], out)
    return code, out.getvalue()


def run_json(*args):
    code, text = run(*args, "--json")
    return code, json.loads(text)


def fx(name):
    return FIXTURES / name


def test_miller_rabin_against_trial_division():
    def slow(n):
        return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))
    assert [n for n in range(2000) if is_probable_prime(n)] == [n for n in range(2000) if slow(n)]
    assert is_probable_prime(2 ** 61 - 1)
    assert not is_probable_prime(2 ** 61 + 1)
    assert not is_probable_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_run_config_validation():
    RunConfig()
    for kwargs in ({"prime": 65521}, {"prime": 2 ** 61}, {"trials": 0}, {"seed": -1}, {"output": "xml"}):
        with pytest.raises(ValidationError):
            RunConfig(**kwargs)


def test_resolve_seed(monkeypatch):
    monkeypatch.delenv("TAUREG_SEED", raising=False)
    assert resolve_seed(7) == 7
    assert resolve_seed(None) == 20240611
    monkeypatch.setenv("TAUREG_SEED", "99")
    assert resolve_seed(None) == 99
    monkeypatch.setenv("TAUREG_SEED", "x")
    with pytest.raises(ValidationError):
        resolve_seed(None)


def test_invariants_table_row():
    code, res = run_json("invariants", fx("abc.alg"), fx("M1.mod"))
    assert code == 0
    cert = res["certificate"]
    assert (cert["e"], cert["E"], cert["E_minus"]) == (0, 0, 1)
    assert cert["tau_regular"] and not cert["tau_minus_regular"]
    code, text = run("invariants", fx("abc.alg"), fx("M1.mod"))
    assert code == 0 and text.startswith("seed: ")
    assert "tau-regular     yes" in text


def test_invariants_zero_module():
    code, res = run_json("invariants", fx("abc.alg"), fx("abc_zero.mod"))
    cert = res["certificate"]
    assert code == 0
    assert (cert["e"], cert["E"], cert["E_minus"], cert["c"]) == (0, 0, 0, 0)
    assert cert["g_vector"] == [0, 0, 0] and cert["tau_regular"]


def test_invariants_loop_with_arm():
    code, res = run_json("invariants", fx("loop2arm.alg"), fx("loop2arm_M4.mod"))
    assert code == 0
    assert res["certificate"]["E"] == 4 and not res["certificate"]["tau_regular"]


def test_component_command(tmp_path):
    code, res = run_json("component", fx("a2.alg"), "--g", "1,-1")
    assert code == 0 and res["verdict"]["dimvec"] == [0, 1]
    # P(1) is simple here, so its dimension vector is (1, 0)
    code, res = run_json("component", fx("a2.alg"), "--g", "-1,0")
    assert code == 0 and res["verdict"]["dimvec"] == [1, 0]
    code, text = run("component", fx("a2.alg"), "--g", "0,0")
    assert code == 0 and "zero component" in text
    out = tmp_path / "w.mod"
    code, res = run_json("component", fx("twocycle.alg"), "--g", "-1,0", "--dump-witness", out)
    A = build_algebra(read_algebra(fx("twocycle.alg")))
    W = parse_module(out.read_text(), A)
    assert W.dims == (1, 1) == tuple(res["verdict"]["dimvec"])


def test_classify_command():
    code, res = run_json("classify-triangular", fx("abc.alg"), "--dim", "1,4,2")
    assert code == 0 and res["verdict"]["arrow_ranks"] == {"a": 1, "b": 2}
    code, res = run_json("classify-triangular", fx("double_arrow_gentle.alg"), "--dim", "4,5,3")
    ranks = res["verdict"]["arrow_ranks"]
    assert (ranks["a"], ranks["b"], ranks["c"], ranks["d"]) == (2, 3, 2, 3)
    code, res = run_json("classify-triangular", fx("twocycle.alg"), "--dim", "1,1")
    assert code == 2 and res["error"] == "NotTriangular"


def test_check_command():
    code, res = run_json("check", "nakayama", fx("nak_n2_t3.alg"))
    assert code == 0 and res["verdict"]["symmetric"] is True
    code, res = run_json("check", "nakayama", fx("twocycle_aba.alg"))
    assert code == 0 and res["verdict"]["symmetric"] is False
    code, _ = run("check", "nakayama", fx("abc.alg"))
    assert code == 2
    code, res = run_json("check", "gentle", fx("abc.alg"))
    assert code == 0 and res["certificate"]["chen_lu"] is False and res["verdict"]["symmetric"] is False
    code, res = run_json("check", "gentle", fx("twocycle.alg"))
    assert res["certificate"]["chen_lu"] is True
    code, _ = run("check", "gentle", fx("square.alg"))
    assert code == 2
    code, res = run_json("check", "hereditary", fx("a3.alg"))
    assert res["verdict"]["hereditary"] is True
    code, res = run_json("check", "ig1", fx("abc.alg"))
    assert res["verdict"]["ig1"] is False and res["certificate"]["failing_removed"] == []
    code, text = run("check", "ig1", fx("abc.alg"))
    assert "fails already for A itself" in text


def test_witness_command(tmp_path):
    out = tmp_path / "w.mod"
    code, res = run_json("witness", fx("twocycle.alg"), "--dump-witness", out)
    assert code == 0 and res["verdict"]["witness"] == "P(1) + S(1)"
    A = build_algebra(read_algebra(fx("twocycle.alg")))
    # both the dumped file and the JSON copy re-parse and re-verify
    assert parse_module(out.read_text(), A).dims == (2, 1)
    assert parse_module(res["certificate"]["witness"], A).dims == (2, 1)
    code, res = run_json("witness", fx("nak_n2_t3.alg"), "--pool", "interval")
    assert code == 0 and res["verdict"]["found"] is False


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("vertices 2\narrow a 2 1\nnonsense\n")
    code, res = run_json("invariants", bad, fx("M1.mod"))
    assert code == 1 and res["error"] == "ParseError" and ":3:" in res["message"]
    viol = tmp_path / "viol.mod"
    viol.write_text("dims 1 1 1\nmatrix a\n1\nmatrix b\n1\n")
    code, res = run_json("invariants", fx("abc.alg"), viol)
    assert code == 1 and res["error"] == "RelationViolation" and "a*b" in res["message"]
    code, _ = run("invariants", fx("abc.alg"), tmp_path / "missing.mod")
    assert code == 1
    code, _ = run("--prime", "65521", "check", "hereditary", fx("a2.alg"))
    assert code == 1
    code, _ = run("frobnicate")
    assert code == 1


def test_seed_is_reported_and_reproducible(monkeypatch):
    monkeypatch.setenv("TAUREG_SEED", "4242")
    code, res = run_json("component", fx("twocycle_aba.alg"), "--g", "1,-1")
    assert res["seed"] == 4242
    code, again = run_json("component", fx("twocycle_aba.alg"), "--g", "1,-1")
    assert res == again
    code, res = run_json("component", fx("twocycle_aba.alg"), "--g", "1,-1", "--seed", "5")
    assert res["seed"] == 5


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "taureg.cli", "check", "hereditary", str(fx("a2.alg"))],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "hereditary: yes" in proc.stdout
