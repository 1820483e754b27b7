from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from conifold_dt.cli import RunConfig, fixture_name, fixture_specs, main
from conifold_dt.models import ChamberSeriesSpec, closed_series, d0d6_seed
from conifold_dt.series import Series, Window, decode, encode, render, substitute_z

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def _no_user_config(monkeypatch, tmp_path):
    monkeypatch.setenv("CONIFOLD_DT_CONFIG", str(tmp_path / "absent.json"))


def run(*argv) -> tuple[int, str]:
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def write_series(path: Path, s: Series) -> str:
    path.write_text(json.dumps(encode(s)), encoding="utf-8")
    return str(path)


def test_series_d0d6_text():
    code, text = run("series", "d0d6", "--k", "0", "--chi", "2", "--zmax", "4")
    assert code == 0
    assert text.startswith("-2*z - 2*x*z")


def test_series_conifold_lower():
    code, text = run("series", "conifold", "--k", "0", "--sector", "lower", "--a", "1", "--zmax", "3", "--ymax", "3")
    assert code == 0
    assert "y*z + x*y*z" in text


def test_series_json_round_trip():
    code, text = run("series", "d0d6", "--k", "1", "--chi", "-6", "--format", "json")
    assert code == 0
    w = RunConfig().window
    assert decode(json.loads(text)) == closed_series(ChamberSeriesSpec("d0d6", 1, chi=-6), w)


def test_series_is_deterministic():
    argv = ("series", "conifold", "--k", "-2", "--sector", "upper", "--a", "2", "--format", "json")
    assert run(*argv) == run(*argv)


def test_series_invalid_spec_exits_2():
    assert run("series", "conifold", "--k", "0")[0] == 2
    assert run("series", "d0d6", "--k", "0", "--xmin", "3", "--xmax", "1")[0] == 2
    assert run("series", "d0d6", "--k", "-3", "--xmin", "-2")[0] == 2


def test_bad_arguments_exit_2():
    assert run("series")[0] == 2
    assert run("verify", "--order", "0")[0] == 2


def test_cross_seed_matches_series(tmp_path):
    w = RunConfig().window
    seed = write_series(tmp_path / "seed.json", d0d6_seed(2, w))
    code, text = run("cross", seed, "--wall", "0", "--mode", "dt", "--format", "json")
    assert code == 0
    _, expected = run("series", "d0d6", "--k", "0", "--chi", "2", "--format", "json")
    assert text == expected


def test_cross_lie_reports_agreement(tmp_path):
    seed = write_series(tmp_path / "seed.json", d0d6_seed(2, RunConfig().window))
    code, text = run("cross", seed, "--wall", "0", "--mode", "lie")
    _, plain = run("cross", seed, "--wall", "0")
    assert code == 0
    assert text == plain + "routes agree: true\n"


def test_cross_two_walls_is_twist(tmp_path):
    w = RunConfig().window
    s = Series(w, {(0, 0, 1): 3, (1, 2, 2): -1, (-1, 1, 3): 2})
    first = tmp_path / "one.json"
    _, text = run("cross", write_series(tmp_path / "in.json", s), "--wall", "0", "--format", "json")
    first.write_text(text, encoding="utf-8")
    _, text = run("cross", str(first), "--wall", "1", "--format", "json")
    assert decode(json.loads(text)) == substitute_z(s, lambda n: Series.monomial(w, (n, 0, 0)))


def test_cross_euler_mode(tmp_path):
    w = RunConfig().window
    s = Series.monomial(w, (0, 0, 2))
    _, text = run("cross", write_series(tmp_path / "in.json", s), "--wall", "0", "--mode", "euler")
    assert text.strip() == render(Series(w, {(0, 0, 2): 1, (1, 0, 2): 2, (2, 0, 2): 1}))


def test_cross_window_too_narrow(tmp_path, capsys):
    s = Series.monomial(Window(0, 5, 0, 0, 3), (0, 0, 3))
    code, _ = run("cross", write_series(tmp_path / "in.json", s), "--wall", "1", "--inverse")
    assert code == 2
    assert "x_min <= -3" in capsys.readouterr().err


def test_cross_bad_input(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}", encoding="utf-8")
    assert run("cross", str(bad), "--wall", "0")[0] == 2


@pytest.mark.parametrize("suite", ["lemma-ass", "macmahon", "stablepairs", "routes"])
def test_verify_passing_suites(suite):
    code, text = run("verify", "--suite", suite, "--order", "10")
    assert code == 0, text
    lines = text.splitlines()
    assert lines[-1] == "summary: pass (0 failing)"
    assert all(line.startswith("PASS ") for line in lines[:-1])


def test_verify_lemma_ass_covers_both_parities():
    _, text = run("verify", "--suite", "lemma-ass", "--order", "12")
    assert len([l for l in text.splitlines() if l.startswith("PASS")]) == 12


def test_verify_upper_sector_reports_failure():
    code, text = run("verify", "--suite", "conifold-upper", "--order", "8")
    assert code == 1
    assert "FAIL" in text and "::" in text


def test_classify_examples():
    assert run("classify", "0", "0", "5", "--relation", "phi-eq-1-below")[1].startswith(
        "length-5 zero-dimensional sheaf"
    )
    code, text = run("classify", "1", "1", "1", "--relation", "t-above-phi", "--a", "1")
    assert code == 0 and text.startswith("two-term complex")
    assert run("classify", "2", "1", "1", "--relation", "t-above-phi", "--a", "1")[1] == "no semistable objects\n"


def test_classify_json():
    _, text = run("classify", "1", "1", "1", "--relation", "t-above-phi", "--a", "1", "--format", "json")
    doc = json.loads(text)
    assert doc[0]["kind"] == "two-term-complex" and doc[0]["r"] == 1


def test_classify_missing_a_is_usage_error():
    assert run("classify", "1", "1", "1", "--relation", "t-above-phi")[0] == 2


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"window": {"z_max": 2}, "format": "json"}), encoding="utf-8")
    code, text = run("--config", str(cfg), "series", "d0d6", "--k", "-1", "--chi", "1")
    assert code == 0
    s = decode(json.loads(text))
    assert s.window.z_max == 2
    _, text = run("--config", str(cfg), "series", "d0d6", "--k", "-1", "--chi", "1", "--zmax", "3", "--format", "text")
    assert text.strip() == "-z - 5/4*z^2 - 10/9*z^3"


def test_config_from_environment(tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "json"}), encoding="utf-8")
    monkeypatch.setenv("CONIFOLD_DT_CONFIG", str(cfg))
    assert RunConfig.load().format == "json"
    cfg.write_text(json.dumps({"format": "yaml"}), encoding="utf-8")
    assert run("series", "d0d6", "--k", "0")[0] == 2


def test_fixtures_command(tmp_path):
    code, text = run("fixtures", "--out", str(tmp_path))
    assert code == 0
    assert len(list(tmp_path.glob("*.json"))) == len(list(fixture_specs()))


@pytest.mark.parametrize("spec,window", list(fixture_specs()), ids=lambda v: getattr(v, "k", None) is not None and fixture_name(v) or "")
def test_golden_fixtures(spec, window):
    stored = decode(json.loads((FIXTURES / fixture_name(spec)).read_text(encoding="utf-8")))
    assert stored == closed_series(spec, window)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "conifold_dt", "series", "d0d6", "--k", "0", "--chi", "1", "--zmax", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "-z - x*z"
