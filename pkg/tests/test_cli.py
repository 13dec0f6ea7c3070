import json

import pytest

from virw.cli import main
from virw.config import ConfigError, config_from_mapping

MODULES = """
algebra:
  family: FrakL
  g: {preset: one_dim, beta: 2}
modules:
  - {variant: intermediate, alpha: 1/3, beta: 2}
  - {variant: tensor, lambda: 1/2, vbar: {D: [[1]], X: [[[0]]]}}
window: 3
samples: 2
"""


@pytest.fixture
def cfg_file(tmp_path):
    p = tmp_path / "run.yaml"
    p.write_text(MODULES, encoding="utf-8")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bracket(capsys):
    code, out, _ = run(capsys, "bracket", "D(2)", "E(-2)", "--family", "Vir0Beta", "--beta", "0")
    assert code == 0 and out.strip() == "6*C2 - 2*E(0)"


def test_nf_modes(capsys):
    assert run(capsys, "nf", "D(2)*D(1)")[1].strip() == "-D(3) + D(1)*D(2)"
    assert run(capsys, "nf", "T(2)*T(-2)", "--mode", "Ubar")[1].strip() == "1"
    code, out, _ = run(capsys, "nf", "d0^2", "--mode", "Ubar")
    assert code == 0 and out.strip() == "d0^2"


def test_order_dump(capsys, cfg_file):
    code, out, _ = run(capsys, "nf", "--order-dump", "--config", cfg_file)
    assert code == 0 and out.startswith("order: E(-2) < ") and out.strip().endswith("D(2)")


def test_act_and_min_order(capsys, cfg_file):
    assert run(capsys, "act", "--config", cfg_file, "D(1)", "e(0,0)")[1].strip() == "7/3*e(1,0)"
    code, out, _ = run(capsys, "min-order", "--config", cfg_file, "--expect", "3")
    assert code == 0
    code, out, _ = run(capsys, "min-order", "--config", cfg_file, "--expect", "2")
    assert code == 1 and "[fail]" in out


def test_span_and_cover_rank(capsys, cfg_file, tmp_path):
    code, out, _ = run(capsys, "span-rank", "--config", cfg_file, "e(0,0)")
    assert code == 0 and '"full": true' in out
    out_path = tmp_path / "c.jsonl"
    code, out, _ = run(capsys, "cover-rank", "--config", cfg_file, "--module", "1", "--weight", "2",
                       "--order", "2", "--window", "4", "--json", str(out_path))
    assert code == 0
    rec = json.loads(out_path.read_text().splitlines()[0])
    assert rec["got"]["rank"] <= rec["expected"]["rank_at_most"] == 3


def test_verify_echoes_normalized_config(capsys, cfg_file):
    code, out, _ = run(capsys, "verify", "--config", cfg_file)
    assert code == 0
    echo = json.loads(out[: out.index("\n}\n") + 2])
    assert echo["algebra"]["family"] == "FrakL" and echo["window"] == 3


def test_config_errors(capsys, tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("algebra: {family: Nope}\n")
    code, _, err = run(capsys, "verify", "--config", str(bad))
    assert code == 2 and "config error at algebra" in err
    bad.write_text("suites: [axioms, nope]\n")
    code, _, err = run(capsys, "suite", "--config", str(bad))
    assert code == 2 and "suites[1]" in err
    code, _, err = run(capsys, "suite", "nope")
    assert code == 2
    code, _, err = run(capsys, "nf", "Q(1)")
    assert code == 2 and "invalid input" in err
    assert run(capsys, "bogus")[0] == 2


def test_config_validation_paths():
    with pytest.raises(ConfigError, match="config error at window"):
        config_from_mapping({"window": 0})
    with pytest.raises(ConfigError, match="config error at modules\\[0\\]"):
        config_from_mapping({"modules": [{"alpha": 1}]})
    with pytest.raises(ConfigError, match="config error at surprise"):
        config_from_mapping({"surprise": 1})


def test_suite_exit_codes_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert run(capsys, "suite", "iota", "filtration", "--json", str(a))[0] == 0
    assert run(capsys, "suite", "iota", "filtration", "--json", str(b), "--jobs", "2")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert json.loads(lines[-1])["summary"] is True
    assert run(capsys, "suite", "omega-collapse")[0] == 1


def test_seed_changes_samples(capsys, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run(capsys, "suite", "iota", "--seed", "1", "--json", str(a))
    run(capsys, "suite", "iota", "--seed", "2", "--json", str(b))
    assert a.read_bytes() != b.read_bytes()
