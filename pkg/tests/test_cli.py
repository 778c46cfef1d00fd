import json

import pytest

from dirac_sea.cli import SCHEMA, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_car_check_example(capsys):
    code, rep, _ = run(capsys, "car-check", "--domain", "reversed_integers", "--trials", "500", "--seed", "7")
    assert code == 0 and rep["passed"]
    assert rep["schema"] == SCHEMA and rep["seed"] == 7
    assert {c["name"].split("/")[1] for c in rep["checks"]} == {"ann_cre", "ann_ann", "cre_cre", "adjoint"}
    assert all(c["trials"] == 500 for c in rep["checks"])


def test_car_check_all_domains_float(capsys):
    code, rep, _ = run(capsys, "car-check", "--domain", "all", "--trials", "30", "--float")
    assert code == 0 and len(rep["checks"]) == 16


def test_counterexample(capsys):
    code, rep, _ = run(capsys, "counterexample")
    assert code == 0
    assert rep["result"]["naive_violations"] >= 1
    assert rep["result"]["epsilon_violations"] == 0


def test_epsilon_demo(capsys):
    code, rep, _ = run(capsys, "epsilon-demo", "--trials", "50", "--seed", "3")
    assert code == 0
    assert [r["epsilon"] for r in rep["result"]["dirac_sea_signs"]] == [1, -1, 1, -1, 1, -1]
    assert rep["result"]["naive_not_well_ordered"]


def test_parity_check(capsys):
    code, rep, _ = run(capsys, "parity-check", "--trials", "50", "--seed", "1")
    assert code == 0 and rep["passed"]


def test_equiv_check(capsys):
    code, rep, _ = run(capsys, "equiv-check", "--n", "4", "--seed", "5")
    assert code == 0
    assert rep["result"] == {"intertwiner_found": True, "max_residual": 0.0, "commutant_dim": 1}


def test_ss_check(capsys, tmp_path):
    op = tmp_path / "op.json"
    op.write_text(json.dumps({"core": {"kind": "mirror"}}))
    code, rep, _ = run(capsys, "ss-check", "--operator", str(op))
    assert code == 0
    assert rep["result"]["implementable"] is False
    assert rep["result"]["hs2_minus_plus"] == "inf"
    op.write_text(json.dumps({"core": {"kind": "swap", "pairs": [[-1, 1]]}}))
    code, rep, _ = run(capsys, "ss-check", "--operator", str(op))
    assert rep["result"]["implementable"] is True
    assert rep["result"]["hs2_plus_minus"] == "1.0"


def _evolve_inputs(tmp_path):
    h = tmp_path / "h.json"
    h.write_text(json.dumps({"rule": {"kind": "constant", "value": 1}}))
    s = tmp_path / "s.json"
    s.write_text(json.dumps({"sector": {"domain": "reversed_integers", "reference": "minus"},
                             "mode": "float",
                             "terms": [{"c": [1, 0], "holes": [-1], "particles": [1]}]}))
    return str(h), str(s)


def test_evolve(capsys, tmp_path):
    h, s = _evolve_inputs(tmp_path)
    code, rep, _ = run(capsys, "evolve", "--hamiltonian", h, "--state", s, "--t", "1.5",
                       "--check-derivative")
    assert code == 0
    term = rep["result"]["state"]["terms"][0]
    assert term["holes"] == [-1] and term["particles"] == [1]
    ratios = [r["ratio"] for r in rep["result"]["derivative"] if r["ratio"] is not None]
    assert all(3.5 <= q <= 4.5 for q in ratios)


def test_evolve_exact_refused(capsys, tmp_path):
    h, s = _evolve_inputs(tmp_path)
    code, rep, _ = run(capsys, "evolve", "--hamiltonian", h, "--state", s, "--t", "1", "--exact")
    assert code == 2 and rep["error"]["type"] == "NumericModeMismatch"


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["car-check", "--trials", "-1"],
    ["car-check", "--domain", "cantor"],
    ["equiv-check", "--n", "40"],
    ["ss-check", "--operator", "/nonexistent/op.json"],
])
def test_malformed_input_exits_2(capsys, argv):
    code, rep, _ = run(capsys, *argv)
    assert code == 2 and "error" in rep


def test_thread_variable(capsys, monkeypatch):
    monkeypatch.setenv("DIRAC_SEA_THREADS", "4")
    code, rep4, out4 = run(capsys, "car-check", "--domain", "all", "--trials", "20", "--seed", "9")
    monkeypatch.setenv("DIRAC_SEA_THREADS", "1")
    _, rep1, out1 = run(capsys, "car-check", "--domain", "all", "--trials", "20", "--seed", "9")
    assert code == 0 and out4 == out1
    monkeypatch.setenv("DIRAC_SEA_THREADS", "zero")
    code, _, _ = run(capsys, "counterexample")
    assert code == 2


def test_byte_stable(capsys):
    argv = ["parity-check", "--trials", "40", "--seed", "11"]
    _, _, first = run(capsys, *argv)
    _, _, second = run(capsys, *argv)
    assert first == second
    assert "wall_time_s" not in first


def test_timing_flag(capsys):
    _, rep, _ = run(capsys, "counterexample", "--timing")
    assert rep["wall_time_s"] >= 0
