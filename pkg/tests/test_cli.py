import json
import subprocess
import sys

import pytest

from coldstandby.cli import main

REF_FLAGS = ["--lambda", "0.5", "--beta", "0.35", "--gamma", "0.75"]
COST_FLAGS = ["--net-revenue", "20", "--cr", "1", "--ce", "5", "--cl", "3"]


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ----------------------------------------------------------------- eval

def test_eval_reference_point(capsys):
    code, out, _ = run_cli(capsys, ["eval", "--model", "mre-dpt", "--patience", "2.19",
                                    *REF_FLAGS, *COST_FLAGS])
    assert code == 0
    assert "omega   = 14.076620" in out


def test_eval_missing_alpha_names_field(capsys):
    code, _, err = run_cli(capsys, ["eval", "--model", "mre-rpt", *REF_FLAGS, *COST_FLAGS])
    assert code == 2
    assert "alpha" in err


def test_eval_all_models_fixed_order(capsys):
    code, out, _ = run_cli(capsys, ["eval", "--alpha", "0.3", "--patience", "1.5",
                                    *REF_FLAGS, *COST_FLAGS])
    assert code == 0
    blocks = [line for line in out.splitlines() if line.startswith("model:")]
    assert [b.split()[1] for b in blocks] == ["mre-rpt", "sre-rpt", "mre-dpt", "sre-dpt"]


def test_eval_rejects_nonpositive_rate(capsys):
    code, _, err = run_cli(capsys, ["eval", "--model", "mre-rpt", "--alpha", "0.3",
                                    "--lambda", "0", "--beta", "0.35", "--gamma", "0.75",
                                    *COST_FLAGS])
    assert code == 2
    assert "lambda" in err


def test_eval_requires_revenue(capsys):
    code, _, err = run_cli(capsys, ["eval", "--model", "sre-rpt", "--alpha", "0.3", *REF_FLAGS])
    assert code == 2
    assert "revenue" in err


def test_revenue_pair_equivalent_to_net(capsys, tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    base = ["eval", "--model", "sre-rpt", "--alpha", "0.3", *REF_FLAGS,
            "--cr", "1", "--ce", "5", "--cl", "3"]
    assert main([*base, "--net-revenue", "20", "--out", str(a)]) == 0
    assert main([*base, "--revenue", "23.5", "--op-cost", "3.5", "--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


# ----------------------------------------------------------------- sweep

def test_sweep_shape_and_values(capsys, tmp_path):
    out_csv = tmp_path / "sweep.csv"
    code, _, _ = run_cli(capsys, ["sweep", "--grid", "0.2:5.0:100", "--alpha", "0.3",
                                  *REF_FLAGS, *COST_FLAGS, "--out", str(out_csv)])
    assert code == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "model,T,a_inf,theta_r,theta_e,tau,omega"
    assert len(lines) == 1 + 400  # four models, 100 points each
    # random-patience rows do not vary with T
    rpt_rows = {line.split(",", 2)[2] for line in lines[1:] if line.startswith("mre-rpt")}
    assert len(rpt_rows) == 1


def test_sweep_reference_row(capsys, tmp_path):
    out_csv = tmp_path / "sweep.csv"
    run_cli(capsys, ["sweep", "--grid", "1.62:2.0:2", "--model", "mre-dpt",
                     *REF_FLAGS, *COST_FLAGS, "--out", str(out_csv)])
    row = out_csv.read_text().splitlines()[1].split(",")
    assert row[0] == "mre-dpt" and float(row[1]) == 1.62
    assert float(row[2]) == pytest.approx(0.84, abs=0.005)


def test_sweep_deterministic_bytes(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["sweep", "--grid", "0.5:3.0:17", "--alpha", "0.3", *REF_FLAGS, *COST_FLAGS]
    main([*argv, "--out", str(a)])
    main([*argv, "--out", str(b)])
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_sweep_unwritable_path(capsys):
    code, _, err = run_cli(capsys, ["sweep", "--grid", "0.5:3.0:4", "--alpha", "0.3",
                                    *REF_FLAGS, *COST_FLAGS,
                                    "--out", "/nonexistent-dir/sweep.csv"])
    assert code == 3
    assert "cannot write" in err


def test_sweep_requires_grid(capsys):
    code, _, err = run_cli(capsys, ["sweep", "--alpha", "0.3", *REF_FLAGS, *COST_FLAGS])
    assert code == 2
    assert "grid" in err


# ----------------------------------------------------------------- simulate

SIM_FLAGS = ["simulate", "--model", "sre-dpt", "--patience", "1.5", *REF_FLAGS, *COST_FLAGS,
             "--horizon", "20000", "--reps", "3", "--seed", "9"]


def test_simulate_report_and_csv(capsys, tmp_path):
    out_csv = tmp_path / "sim.csv"
    code, out, _ = run_cli(capsys, [*SIM_FLAGS, "--out", str(out_csv)])
    assert code == 0
    assert "analytic" in out and "z =" in out
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "model,quantity,estimate,se,analytic,z"
    assert len(lines) == 1 + 6


def test_simulate_single_spare_has_no_analytic_columns(capsys):
    code, out, _ = run_cli(capsys, [*SIM_FLAGS, "--spares", "1"])
    assert code == 0
    assert "analytic" not in out


def test_simulate_byte_identical_csv(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main([*SIM_FLAGS, "--out", str(a)])
    main([*SIM_FLAGS, "--out", str(b)])
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_simulate_requires_one_stopping_rule(capsys):
    base = ["simulate", "--model", "mre-rpt", "--alpha", "0.3", *REF_FLAGS, *COST_FLAGS]
    code, _, err = run_cli(capsys, base)
    assert code == 2 and "horizon" in err
    code, _, err = run_cli(capsys, [*base, "--horizon", "1000", "--cycles", "50"])
    assert code == 2


def test_simulate_budget_too_small_is_config_error(capsys):
    code, _, err = run_cli(capsys, ["simulate", "--model", "mre-rpt", "--alpha", "0.3",
                                    *REF_FLAGS, *COST_FLAGS, "--horizon", "40",
                                    "--reps", "2", "--seed", "1"])
    assert code == 2
    assert "cycles" in err


def test_optimize_t_star_rejects_negative_rate(capsys):
    code, _, err = run_cli(capsys, ["optimize", "--objective", "t-star",
                                    "--lambda", "-1", "--beta", "0.35", "--alpha", "0.3"])
    assert code == 2
    assert "positive" in err


# ----------------------------------------------------------------- optimize

def test_optimize_t_star(capsys):
    code, out, _ = run_cli(capsys, ["optimize", "--objective", "t-star",
                                    "--lambda", "0.5", "--beta", "0.35", "--alpha", "0.3"])
    assert code == 0
    assert out.startswith("t-star: T = 1.5808")


def test_optimize_profit_crossings(capsys):
    code, out, _ = run_cli(capsys, ["optimize", "--objective", "profit-crossings",
                                    "--model", "sre", "--alpha", "0.3",
                                    *REF_FLAGS, *COST_FLAGS])
    assert code == 0
    roots = [float(line.split("T = ")[1].split()[0]) for line in out.splitlines()]
    assert roots[0] == pytest.approx(1.45, abs=0.05)
    assert roots[1] == pytest.approx(3.29, abs=0.05)


def test_optimize_max_omega(capsys):
    code, out, _ = run_cli(capsys, ["optimize", "--objective", "max-omega",
                                    "--model", "mre-dpt", "--grid", "0.5:5:256",
                                    *REF_FLAGS, *COST_FLAGS])
    assert code == 0
    assert "T = 2.19" in out and "omega = 14.0766" in out


def test_optimize_no_sign_change_exit_code(capsys):
    code, _, err = run_cli(capsys, ["optimize", "--objective", "equal-availability",
                                    "--model", "mre", "--alpha", "0.3",
                                    "--grid", "4.0:5.0:64", *REF_FLAGS])
    assert code == 4
    assert "no sign change" in err


def test_optimize_expert_threshold(capsys):
    code, out, _ = run_cli(capsys, ["optimize", "--objective", "expert-threshold",
                                    "--alpha", "0.3", *REF_FLAGS,
                                    "--net-revenue", "20", "--cr", "1", "--cl", "3"])
    assert code == 0
    assert float(out.split("c_e = ")[1]) == pytest.approx(8.3, abs=0.1)


# ----------------------------------------------------------------- config file

def test_config_file_supplies_defaults(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({
        "lambda": 0.5, "beta": 0.35, "gamma": 0.75, "alpha": 0.3,
        "net-revenue": 20, "cr": 1, "ce": 5, "cl": 3, "model": "sre-rpt"}))
    code, out, _ = run_cli(capsys, ["eval", "--config", str(cfg)])
    assert code == 0
    assert "model: sre-rpt" in out


def test_flags_override_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"lambda": 0.5, "beta": 0.35, "gamma": 0.75,
                               "alpha": 0.3, "net-revenue": 20, "model": "mre-rpt"}))
    code, out, _ = run_cli(capsys, ["eval", "--config", str(cfg), "--model", "sre-rpt"])
    assert code == 0
    assert "model: sre-rpt" in out and "mre" not in out


def test_config_file_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"lambda": 0.5, "bogus": 1}))
    code, _, err = run_cli(capsys, ["eval", "--config", str(cfg)])
    assert code == 2
    assert "bogus" in err


def test_config_file_invalid_json(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text("{not json")
    code, _, err = run_cli(capsys, ["eval", "--config", str(cfg)])
    assert code == 2
    assert "JSON" in err


def test_config_file_missing(capsys, tmp_path):
    code, _, err = run_cli(capsys, ["eval", "--config", str(tmp_path / "absent.json")])
    assert code == 3
    assert "cannot read" in err


def test_unknown_model_rejected(capsys):
    code, _, err = run_cli(capsys, ["eval", "--model", "mre-xyz", "--alpha", "0.3",
                                    *REF_FLAGS, *COST_FLAGS])
    assert code == 2
    assert "mre-xyz" in err


def test_malformed_grid_rejected(capsys):
    for bad in ("1:2", "a:2:5", "1:2:5:cubic"):
        code, _, err = run_cli(capsys, ["sweep", "--grid", bad, "--alpha", "0.3",
                                        *REF_FLAGS, *COST_FLAGS])
        assert code == 2


def test_optimize_family_objective_needs_model(capsys):
    code, _, err = run_cli(capsys, ["optimize", "--objective", "max-omega",
                                    *REF_FLAGS, *COST_FLAGS])
    assert code == 2
    assert "--model" in err


def test_simulate_z_scores_within_three(capsys, tmp_path):
    out_csv = tmp_path / "sim.csv"
    code, _, _ = run_cli(capsys, ["simulate", "--model", "mre-dpt", "--patience", "1.5",
                                  *REF_FLAGS, *COST_FLAGS, "--horizon", "200000",
                                  "--reps", "8", "--seed", "4", "--out", str(out_csv)])
    assert code == 0
    rows = [line.split(",") for line in out_csv.read_text().splitlines()[1:]]
    zs = {row[1]: float(row[5]) for row in rows}
    assert set(zs) == {"a_inf", "theta_r", "theta_e", "tau", "visit_rate", "omega"}
    assert all(abs(z) <= 3 for z in zs.values()), zs


# ----------------------------------------------------------------- end to end

def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "coldstandby.cli", "optimize", "--objective", "t-star",
         "--lambda", "0.5", "--beta", "0.35", "--alpha", "0.3"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "1.5808" in proc.stdout
