import json
import subprocess
import sys
from fractions import Fraction

from btl import __version__, instances
from btl.cli import main
from btl.core import read_truth_table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_mono_files(tmp_path, capsys):
    prefix = tmp_path / "g"
    code, _, _ = run(capsys, "gen", "mono", "--ell", "4", "--m", "8", "--k", "2", "--intersect",
                     "--seed", "7", "--out", str(prefix))
    assert code == 0
    doc = json.loads((tmp_path / "g.json").read_text())
    assert doc["version"] == __version__ and doc["seed"] == 7
    assert doc["parameters"]["ell"] == 4
    inst = instances.DisjInstance.from_json(doc["instance"])
    f = read_truth_table(tmp_path / doc["truth_table"])
    assert f == instances.build_mono_gadget(inst)


def test_gen_is_deterministic(capsys):
    args = ("gen", "dminus", "--n", "12", "--k", "6", "--ell", "2", "--seed", "1")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    doc = json.loads(first)
    assert doc["selector"]["sets"][doc["big_prefix"]] == instances.default_big_set(12, 6, 2)


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--seed", "3", "gen", "dplus", "--n", "8", "--k", "4", "--ell", "1")
    assert code == 0 and json.loads(out)["seed"] == 3


def test_gen_csv(capsys):
    code, out, _ = run(capsys, "gen", "fourier", "--n", "6", "--k", "2", "--ell", "1", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,value" and len(lines) == 65


def test_analyze_reports(tmp_path, capsys):
    prefix = tmp_path / "d"
    run(capsys, "gen", "dminus", "--n", "10", "--k", "4", "--ell", "1", "--seed", "2", "--out", str(prefix))
    code, out, _ = run(capsys, "analyze", str(tmp_path / "d.tt"), "--fourier")
    assert code == 0
    four = json.loads(out)["fourier"]
    assert four["degree"] == 8
    assert Fraction(four["tail_mass"]["7"]) >= Fraction(1, 2)

    mono = tmp_path / "m"
    run(capsys, "gen", "mono", "--ell", "2", "--m", "6", "--k", "2", "--out", str(mono))
    code, out, _ = run(capsys, "analyze", str(tmp_path / "m.tt"), "--monotone")
    rep = json.loads(out)["monotone"]
    assert rep["is_monotone"] and rep["total_violated"] == 0
    assert rep["distance_bounds"]["upper"] == "0"


def test_analyze_parity_degree(tmp_path, capsys):
    path = tmp_path / "p.tt"
    values = [1 if bin(x).count("1") % 2 == 0 else -1 for x in range(16)]
    path.write_text("n=4 range=pm_one\n" + " ".join(map(str, values)) + "\n")
    code, out, _ = run(capsys, "analyze", str(path))
    doc = json.loads(out)
    assert doc["fourier"]["degree"] == 4
    assert "monotone" in doc
    code, out, _ = run(capsys, "analyze", str(path), "--fourier", "--format", "csv")
    assert out.splitlines() == ["mask,setsize,coeff_numerator", "15,4,16"]


def test_analyze_errors(tmp_path, capsys):
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.tt"))
    assert code == 2 and "cannot read" in err
    bad = tmp_path / "bad.tt"
    bad.write_text("garbage\n")
    assert run(capsys, "analyze", str(bad))[0] == 2


def test_simulate_requires_seed(capsys):
    code, _, err = run(capsys, "simulate", "yao", "--n", "8", "--k", "4", "--ell", "1")
    assert code == 2 and "--seed" in err


def test_simulate_reduction(capsys):
    code, out, _ = run(capsys, "simulate", "reduction", "--ell", "2", "--m", "6", "--k", "2",
                       "--intersect", "--reps", "5", "--seed", "4")
    doc = json.loads(out)
    assert code == 0
    assert doc["transcript_bits"]["all_equal_2q"] and doc["paired_verdicts_equal"]
    assert set(doc) >= {"version", "seed", "parameters", "trials", "rejection_rate", "transcript_bits", "error_bounds"}


def test_simulate_tester_and_yao(capsys):
    code, out, _ = run(capsys, "simulate", "tester", "--family", "dplus", "--tester", "derivative",
                       "--n", "8", "--k", "4", "--ell", "1", "--reps", "20", "--seed", "0")
    doc = json.loads(out)
    assert code == 0 and doc["rejection_rate"] == 0
    assert doc["error_bounds"]["exact_rejection_probability"] == 0
    code, out, _ = run(capsys, "simulate", "yao", "--n", "8", "--k", "4", "--ell", "1",
                       "--samples", "2000", "--query-sets", "2", "--seed", "0")
    assert code == 0 and json.loads(out)["error_bounds"]["min_best_rule_error"] > 0.4


def test_infeasible_parameters_exit_2(capsys):
    assert run(capsys, "gen", "fourier", "--n", "9", "--k", "4", "--ell", "1")[0] == 2
    assert run(capsys, "gen", "mono", "--ell", "3", "--m", "6", "--k", "2")[0] == 2
    assert run(capsys, "gen", "mono", "--m", "6", "--k", "2")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_verify_single_claim(capsys):
    code, out, err = run(capsys, "verify-claims", "--claim", "mono-quarter-fraction", "--scale", "tiny")
    assert code == 0
    assert out.startswith("PASS mono-quarter-fraction")
    assert "1/1 claims passed" in err


def test_verify_claims_json(tmp_path, capsys):
    path = tmp_path / "claims.json"
    code, _, _ = run(capsys, "verify-claims", "--claim", "direct-sum-identity", "--scale", "tiny",
                     "--format", "json", "--out", str(path))
    doc = json.loads(path.read_text())
    assert code == 0 and doc["passed"] and doc["results"][0]["name"] == "direct-sum-identity"
    assert run(capsys, "verify-claims", "--claim", "bogus")[0] == 2


def test_verify_claims_failure_exit_code(capsys, monkeypatch):
    from btl import claims
    monkeypatch.setitem(claims.CLAIMS, "direct-sum-identity", lambda cfg, seed: (False, "x", "y", {}))
    code, out, _ = run(capsys, "verify-claims", "--claim", "direct-sum-identity", "--scale", "tiny")
    assert code == 1 and out.startswith("FAIL")


def test_tiny_scale_is_fast():
    import time
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "btl", "verify-claims", "--scale", "tiny"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert len(proc.stdout.splitlines()) == 12
    assert time.perf_counter() - start < 10
