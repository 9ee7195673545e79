"""CLI surface: config validation, subcommands, exit codes, report formats,
determinism."""

import json
import subprocess
import sys

import pytest

from btquant.cli import cmd_selftest, cmd_star_table, cmd_verify_kernel, main
from btquant.config import ConfigError, load_config


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "btquant.cli", *args],
        capture_output=True,
        text=True,
    )


class TestConfig:
    def test_defaults_load(self):
        cfg = load_config(None)
        assert cfg.model_name == "disc-mu-sq"
        assert cfg.alphas == [8.0, 16.0, 32.0, 64.0]

    def test_unknown_section(self, tmp_path):
        p = tmp_path / "c.toml"
        p.write_text("[modle]\nname = 'disc-mu-sq'\n")
        with pytest.raises(ConfigError, match="unknown section"):
            load_config(p)

    def test_unknown_key(self, tmp_path):
        p = tmp_path / "c.toml"
        p.write_text("[sweep]\ndegre = 8\n")
        with pytest.raises(ConfigError, match="unknown key"):
            load_config(p)

    def test_duplicate_alphas(self, tmp_path):
        p = tmp_path / "c.toml"
        p.write_text("[sweep]\nalphas = [8.0, 8.0, 16.0, 32.0]\n")
        with pytest.raises(ConfigError, match="distinct"):
            load_config(p)

    def test_beta_must_stay_below_alphas(self, tmp_path):
        p = tmp_path / "c.toml"
        p.write_text("[model]\nname = 'sb-mu-exp'\nbeta = 9.0\n")
        with pytest.raises(ConfigError, match="beta"):
            load_config(p)

    def test_seed_override(self):
        cfg = load_config(None, overrides={"seed": 7})
        assert cfg.seed == 7


class TestCommands:
    def test_verify_kernel_fast_config(self, tmp_path):
        p = tmp_path / "c.toml"
        p.write_text(
            "[sweep]\nalphas = [8.0, 16.0, 32.0, 64.0]\ndegree = 24\n"
            "[points]\nsamples = [[0.2, 0.0], [0.3, 0.1]]\n"
            "[tolerances]\nsymbol_rel = 1e-4\n"  # degree 24 leaves ~2e-6 truncation at alpha=64
        )
        cfg = load_config(p)
        rep = cmd_verify_kernel(cfg)
        assert rep.passed
        names = [c.name for c in rep.checks]
        assert any(n.startswith("c1 at") for n in names)
        assert "condition_estimate" in str(rep.metadata["quadrature"])

    def test_star_table_runs_all_products(self):
        cfg = load_config(None)
        cfg.samples = [0.25 + 0.1j]
        rep = cmd_star_table(cfg)
        assert rep.passed
        groups = {c.group for c in rep.checks}
        assert groups == {"poisson", "unit", "assoc", "mu"}
        assert rep.metadata["rows"][0]["bt_h1"] is not None

    def test_selftest_subset_group(self):
        cfg = load_config(None)
        rep = cmd_selftest(cfg, groups=["kernel"])
        assert rep.passed
        assert all(c.group == "kernel" for c in rep.checks)

    def test_selftest_unknown_group(self):
        cfg = load_config(None)
        with pytest.raises(ConfigError, match="unknown selftest group"):
            cmd_selftest(cfg, groups=["jetz"])

    def test_tampered_tolerance_fails_with_named_records(self):
        cfg = load_config(None)
        cfg.residual_tol = 1e-300  # nothing is that exact
        cfg.samples = [0.3]
        rep = cmd_star_table(cfg)
        failed = [c.name for c in rep.checks if not c.passed]
        assert failed  # named records surface the failure
        assert not rep.passed


class TestMainEntry:
    def test_exit_codes(self, tmp_path):
        bad = tmp_path / "bad.toml"
        bad.write_text("[sweep]\nnope = 1\n")
        assert main(["verify-kernel", "--config", str(bad)]) == 2

        ok = tmp_path / "ok.toml"
        ok.write_text(
            "[sweep]\nalphas = [8.0, 16.0, 32.0, 64.0]\ndegree = 16\n"
            "[points]\nsamples = [[0.2, 0.0]]\n"
        )
        out = tmp_path / "rep.json"
        code = main(["verify-kernel", "--config", str(ok), "--out", str(out)])
        assert code == 0
        assert out.exists()

    def test_numerical_failure_exit_code(self, tmp_path):
        # degree far beyond what the quadrature orders support
        p = tmp_path / "c.toml"
        p.write_text(
            "[sweep]\nalphas = [8.0, 16.0, 32.0, 64.0]\ndegree = 30\nradial_order = 2\nangular_order = 12\n"
            "[points]\nsamples = [[0.2, 0.0]]\n"
        )
        assert main(["verify-kernel", "--config", str(p)]) == 3

    def test_check_failure_still_writes_report(self, tmp_path):
        p = tmp_path / "c.toml"
        p.write_text("[tolerances]\nresidual = 1e-300\n[points]\nsamples = [[0.3, 0.0]]\n")
        out = tmp_path / "rep.csv"
        code = main(["star-table", "--config", str(p), "--out", str(out)])
        assert code == 1
        assert "False" in out.read_text()


class TestReports:
    def test_json_report_roundtrips(self, tmp_path):
        cfg = load_config(None)
        cfg.samples = [0.3]
        cfg.degree = 16
        rep = cmd_verify_kernel(cfg)
        path = tmp_path / "r.json"
        rep.write(path, "json")
        data = json.loads(path.read_text())
        assert data["schema_version"] == 1
        assert data["command"] == "verify-kernel"
        assert data["pass"] == rep.passed
        assert len(data["checks"]) == len(rep.checks)
        # 17-significant-digit serialization round-trips float64 exactly
        first = data["checks"][0]
        assert first["observed"] == rep.checks[0].observed

    def test_csv_report_has_header_and_rows(self, tmp_path):
        cfg = load_config(None)
        cfg.samples = [0.3]
        rep = cmd_star_table(cfg)
        path = tmp_path / "r.csv"
        rep.write(path, "csv")
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "name,group,expected,observed,tolerance,pass"
        assert len(lines) == len(rep.checks) + 1

    def test_reports_deterministic_for_fixed_seed(self):
        cfg1 = load_config(None, overrides={"seed": 99})
        cfg1.samples = [0.3]
        cfg2 = load_config(None, overrides={"seed": 99})
        cfg2.samples = [0.3]
        a = cmd_star_table(cfg1)
        b = cmd_star_table(cfg2)
        assert a.to_json() == b.to_json()

    def test_seed_recorded_in_metadata(self):
        cfg = load_config(None, overrides={"seed": 123})
        cfg.samples = [0.2]
        rep = cmd_star_table(cfg)
        assert rep.seed == 123


class TestConsoleScript:
    def test_module_entry_point(self):
        res = run_cli("selftest", "--group", "kernel")
        assert res.returncode == 0
        assert "checks passed" in res.stdout
