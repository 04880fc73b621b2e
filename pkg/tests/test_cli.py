"""End-to-end CLI checks: output shapes, exit codes, determinism."""

import json

import pytest

from steinberg_lab.cli import main, parse_ring
from steinberg_lab.rings import GF, ZZ, localize, quotient
from steinberg_lab.roots import build_root_system
from steinberg_lab.words import gen, word_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_parse_ring():
    assert parse_ring("int") == ZZ()
    assert parse_ring("Fp:7") == GF(7)
    assert parse_ring("Zmod:6") == quotient(ZZ(), 6)
    with pytest.raises(Exception):
        parse_ring("nope")


def test_roots_constants_tsv(capsys):
    code, out = run(capsys, "roots", "--type", "A", "--rank", "2", "--constants")
    assert code == 0
    lines = [l for l in out.strip().splitlines() if l]
    assert len(lines) == 6
    assert any(l.startswith("1,-1,0\t0,1,-1\t1,0,-1\t+1") for l in lines)


def test_word_symbol_eval_roundtrip(tmp_path, capsys):
    code, out = run(capsys, "word", "symbol", "--type", "A", "--rank", "2",
                    "--ring", "Fp:5", "--u", "2", "--v", "3")
    assert code == 0
    path = tmp_path / "sym.json"
    path.write_text(out)
    code, out = run(capsys, "eval", "--rep", "defining", "--word", str(path),
                    "--check-identity")
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_eval_non_identity_exit_code(tmp_path, capsys):
    A2 = build_root_system("A", 2)
    F5 = GF(5)
    w = gen(A2, F5, A2.simple_roots[0], 1)
    path = tmp_path / "w.json"
    path.write_text(json.dumps(word_to_json(w)))
    code, out = run(capsys, "eval", "--word", str(path), "--check-identity")
    assert code == 1
    code, out = run(capsys, "eval", "--word", str(path))
    assert code == 0
    assert "matrix" in json.loads(out)


def test_word_reduce(tmp_path, capsys):
    A2 = build_root_system("A", 2)
    Z = ZZ()
    w = gen(A2, Z, A2.simple_roots[1], 3) * gen(A2, Z, A2.simple_roots[0], 2)
    path = tmp_path / "w.json"
    path.write_text(json.dumps(word_to_json(w)))
    code, out = run(capsys, "word", "reduce", "--word", str(path))
    assert code == 0
    data = json.loads(out)
    assert len(data["letters"]) == 3


def test_k2m_tame(capsys):
    code, out = run(capsys, "k2m", "tame", "--symbol", "2,3", "--prime", "3")
    assert code == 0
    assert out.strip() == "2"


def test_k2m_batch(tmp_path, capsys):
    path = tmp_path / "batch.json"
    path.write_text(json.dumps([{"symbol": ["2", "3"], "prime": 3},
                                {"symbol": ["1/2", "5"], "prime": 5}]))
    code, out = run(capsys, "k2m", "tame", "--batch", str(path))
    assert code == 0
    data = json.loads(out)
    assert data[0]["value"] == 2


def test_simplicial_check(capsys):
    code, out = run(capsys, "simplicial", "check", "--nmax", "3", "--ring", "Fp:7")
    assert code == 0
    assert json.loads(out)["failures"] == 0


def test_simplicial_lift(tmp_path, capsys):
    lvl1_descr = {"kind": "integers"}
    payload_f = [[[0], 1]]            # constant polynomial 1
    data = {"system": {"type": "A", "rank": 2}, "base": lvl1_descr,
            "root": [1, -1, 0], "f": payload_f, "g": []}
    path = tmp_path / "gen.json"
    path.write_text(json.dumps(data))
    code, out = run(capsys, "simplicial", "lift", "--word", str(path))
    assert code == 0
    lifted = json.loads(out)
    assert lifted["letters"], "lift should be a nonempty word"


def test_patch_verify_and_demo(tmp_path, capsys):
    code, out = run(capsys, "patch", "--relations", "--samples", "4", "--seed", "5")
    assert code == 0
    report = json.loads(out)
    assert report["failures"] == 0 and report["check"] == "translation-relations"

    Z = ZZ()
    A3 = build_root_system("A", 3)
    A = localize(Z, 2)
    c = A.fraction(Z.from_int(5), 2)
    d = A.fraction(Z.from_int(7), 1)
    x = (gen(A3, A, A3.simple_roots[0], c) * gen(A3, A, A3.simple_roots[2], d)
         * gen(A3, A, A3.simple_roots[0], -c) * gen(A3, A, A3.simple_roots[2], -d))
    path = tmp_path / "x.json"
    path.write_text(json.dumps(word_to_json(x)))
    code, out = run(capsys, "patch", "--word", str(path))
    assert code == 0
    result = json.loads(out)
    assert result["ok"] is True and result["descended"]["letters"]


def test_milnor_square_verify(capsys):
    code, out = run(capsys, "milnor-square", "verify", "--samples", "10")
    assert code == 0
    assert json.loads(out)["failures"] == 0


def test_selftest_quick(capsys):
    code, out = run(capsys, "selftest", "--quick", "--seed", "2")
    assert code == 0
    assert out.count("ok   ") == 8 and "FAIL" not in out


def test_selftest_deterministic_output(capsys):
    _, out1 = run(capsys, "selftest", "--quick", "--seed", "3")
    _, out2 = run(capsys, "selftest", "--quick", "--seed", "3")
    assert out1 == out2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["roots"])          # missing required flags
    assert exc.value.code == 2
