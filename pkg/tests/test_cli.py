import json
from pathlib import Path

import pytest

from overcubic import claims
from overcubic.cli import main

SCRIPTS = Path(__file__).resolve().parents[1] / "src" / "overcubic" / "scripts"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_bt_generating_function(capsys):
    code, out, _ = run(capsys, "expand", "f4^3/(f1^6*f2^3)", "--order", "7")
    coeffs = [int(x) for x in out.strip().split(",")]
    assert code == 0 and len(coeffs) == 8
    assert coeffs[:2] == [1, 6] and coeffs[7] % 64 == 0


def test_expand_constant_and_mod(capsys):
    assert run(capsys, "expand", "1", "--order", "3")[1].strip() == "1,0,0,0"
    assert run(capsys, "expand", "phi(1)", "--order", "4", "--mod", "8")[1].strip() == "1,2,0,0,2"


def test_expand_json_and_out(capsys, tmp_path):
    target = tmp_path / "s.json"
    code, out, _ = run(capsys, "expand", "psi(1)", "--order", "3", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["coefficients"] == [1, 1, 0, 1]


@pytest.mark.parametrize("expr", ["f1 +", "f0", "bogus", "extract(f1, 5, 2)", "1/(2*f1)"])
def test_expand_bad_expression_exits_2(capsys, expr):
    code, _, err = run(capsys, "expand", expr, "--order", "5")
    assert code == 2 and err.startswith("error:")


def test_usage_errors_exit_2(capsys):
    for argv in (["expand"], ["verify", "things"], ["verify", "claims", "--limit", "0"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_verify_identities_default_order(capsys):
    code, out, _ = run(capsys, "verify", "identities")
    assert code == 0
    assert "52/52 passed" in out


def test_verify_claims_default_limit(capsys):
    code, out, _ = run(capsys, "verify", "claims")
    assert code == 0 and "32/32 passed" in out


def test_verify_unknown_id_exits_2(capsys):
    assert run(capsys, "verify", "claims", "--id", "no-such")[0] == 2
    assert run(capsys, "verify", "identities", "--id", "no-such")[0] == 2


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "claims", "--id", "v-1", "--id", "1-3",
                       "--limit", "1000", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"run", "results", "passed"}
    assert {"command", "limit", "modulus", "timestamp"} <= set(doc["run"])
    assert [r["id"] for r in doc["results"]] == ["1-3", "v-1"]
    for r in doc["results"]:
        assert {"id", "status", "range", "elapsed"} <= set(r)
        assert r["status"] == "pass" and r["range"] == 1000 and "counterexample" not in r


def test_verify_identity_json(capsys):
    code, out, _ = run(capsys, "verify", "identities", "--id", "3-3", "--order", "300", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["run"]["order"] == 300
    assert doc["results"][0]["id"] == "3-3"


def test_verify_failure_exits_1_with_counterexample(capsys, tmp_path):
    table = claims.bt_table(200, 384)
    values = list(table.values)
    values[15] += 1            # 15 = 8*1 + 7, the second argument of v-1
    bad = tmp_path / "bad.tbl"
    claims.save_table(claims.BtTable(200, 384, tuple(values)), bad)
    code, out, _ = run(capsys, "verify", "claims", "--table", str(bad), "--id", "v-1", "--format", "json")
    assert code == 1
    (r,) = json.loads(out)["results"]
    assert r["status"] == "fail" and r["counterexample"][0] == 15


def test_table_roundtrip_then_verify(capsys, tmp_path):
    target = tmp_path / "bt.tbl"
    assert run(capsys, "table", "--limit", "5000", "--mod", "384", "--out", str(target))[0] == 0
    code, out, _ = run(capsys, "verify", "claims", "--table", str(target))
    assert code == 0 and "32/32 passed" in out


def test_table_exact_and_trivial(capsys):
    code, out, _ = run(capsys, "table", "--limit", "10", "--mod", "0")
    rows = [tuple(map(int, line.split())) for line in out.splitlines()]
    assert code == 0 and len(rows) == 11 and rows[0] == (0, 1) and rows[1] == (1, 6)
    assert run(capsys, "table", "--limit", "0")[1].split() == ["0", "1"]


def test_table_too_small_exits_2(capsys, tmp_path):
    target = tmp_path / "bt.tbl"
    run(capsys, "table", "--limit", "100", "--out", str(target))
    assert run(capsys, "verify", "claims", "--table", str(target), "--limit", "200")[0] == 2


def test_corrupted_table_exits_2(capsys, tmp_path):
    target = tmp_path / "bt.tbl"
    run(capsys, "table", "--limit", "50", "--out", str(target))
    lines = target.read_text().splitlines()
    lines[5] = str(int(lines[5]) + 1)
    target.write_text("\n".join(lines) + "\n")
    code, _, err = run(capsys, "verify", "claims", "--table", str(target))
    assert code == 2 and "checksum" in err


def test_cache_dir_is_used(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("OVERCUBIC_CACHE_DIR", str(tmp_path))
    assert run(capsys, "verify", "claims", "--limit", "300", "--id", "v-1")[0] == 0
    cached = tmp_path / "bt-300-384.tbl"
    assert cached.exists()
    assert claims.load_table(cached).limit == 300
    assert run(capsys, "verify", "claims", "--limit", "300", "--id", "v-1")[0] == 0


def test_replay_shipped_script(capsys):
    code, out, _ = run(capsys, "replay", str(SCRIPTS / "conj-1.qprf"), "--order", "400")
    assert code == 0 and "FAIL" not in out


def test_replay_by_name(capsys):
    code, out, _ = run(capsys, "replay", "lemma-2", "--order", "200", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and [r["id"] for r in doc["results"]] == ["2-1", "2-2", "2-3", "2-4"]


def test_replay_missing_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "replay", str(tmp_path / "missing.qprf"))
    assert code == 2 and "missing.qprf" in err


def test_replay_corrupted_reports_position(capsys, tmp_path):
    bad = tmp_path / "corrupted.qprf"
    bad.write_text('let A = f1\nassert A == f2 ++ as "x"\n')
    code, _, err = run(capsys, "replay", str(bad))
    assert code == 2 and "2:" in err


def test_replay_failure_exits_1(capsys, tmp_path):
    bad = tmp_path / "neg.qprf"
    bad.write_text('assert f1 == f2 upto 5 as "neg"\n')
    code, out, _ = run(capsys, "replay", str(bad))
    assert code == 1 and "first failure at 1" in out


def test_export(capsys, tmp_path):
    target = tmp_path / "reg.json"
    assert run(capsys, "export", "--out", str(target))[0] == 0
    records = json.loads(target.read_text())
    assert len(records) == 52
    assert {"id", "modulus"} <= set(records[0])
