import numpy as np
import pytest

from cluster_decay.cli import main


def read_lines(path):
    return path.read_text().splitlines()


class TestDephasingScan:
    def test_deterministic_and_well_formed(self, tmp_path):
        args = ["dephasing-scan", "--graph", "n=3; edges=1-2,2-3", "--eps", "3",
                "--tmax", "0.2", "--dt", "0.01", "--out"]
        assert main(args + [str(tmp_path / "a")]) == 0
        assert main(args + [str(tmp_path / "b")]) == 0
        fa = tmp_path / "a" / "dephasing_cluster_eps3.csv"
        fb = tmp_path / "b" / "dephasing_cluster_eps3.csv"
        assert fa.read_bytes() == fb.read_bytes()
        lines = read_lines(fa)
        assert lines[0].startswith("# params: ")
        assert lines[1] == "t,F"
        assert float(lines[2].split(",")[1]) == pytest.approx(1.0, abs=1e-12)

    def test_one_file_per_eps_gate_combo(self, tmp_path):
        args = ["dephasing-scan", "--gate", "identity5,zrot5", "--eps", "0,5",
                "--tmax", "0.1", "--dt", "0.01", "--out", str(tmp_path)]
        assert main(args) == 0
        names = sorted(p.name for p in tmp_path.glob("*.csv"))
        assert names == ["dephasing_identity5_eps0.csv", "dephasing_identity5_eps5.csv",
                         "dephasing_zrot5_eps0.csv", "dephasing_zrot5_eps5.csv"]

    def test_empty_grid_is_usage_error(self, tmp_path):
        code = main(["dephasing-scan", "--eps", "3", "--tmax", "0", "--dt", "0.01",
                     "--out", str(tmp_path)])
        assert code == 2

    def test_unknown_gate_is_usage_error(self, tmp_path):
        code = main(["dephasing-scan", "--gate", "nosuchgate", "--eps", "3",
                     "--tmax", "0.1", "--dt", "0.01", "--out", str(tmp_path)])
        assert code == 2

    def test_config_file_with_flag_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("graph=n=2; edges=1-2\neps=3\ntmax=0.2\ndt=0.1\n")
        out = tmp_path / "out"
        assert main(["dephasing-scan", "--config", str(cfg), "--dt", "0.05",
                     "--out", str(out)]) == 0
        lines = read_lines(out / "dephasing_cluster_eps3.csv")
        assert "dt=0.05" in lines[0]
        assert len(lines) == 2 + 5  # params + header + t grid {0,...,0.2}


class TestNumericScan:
    def test_zero_coupling_peaks_at_one(self, tmp_path):
        eps = 5.0
        assert main(["numeric-scan", "--gate", "identity5", "--g", "0",
                     "--theta", "0", "--eps", str(eps), "--cutoff", "2",
                     "--temperature", "1",
                     "--tmax", str(2 * np.pi / eps), "--dt", str(np.pi / eps / 10),
                     "--out", str(tmp_path)]) == 0
        lines = read_lines(tmp_path / "numeric_identity5_theta0.csv")
        values = np.array([float(l.split(",")[1]) for l in lines[2:]])
        assert values.max() == pytest.approx(1.0, abs=1e-9)

    def test_cutoff_insensitive_at_weak_coupling(self, tmp_path):
        base = ["numeric-scan", "--gate", "identity5", "--g", "0.1", "--theta", "0.5",
                "--eps", "5", "--temperature", "1", "--tmax", "1", "--dt", "0.25"]
        assert main(base + ["--cutoff", "6", "--out", str(tmp_path / "lo")]) == 0
        assert main(base + ["--cutoff", "12", "--out", str(tmp_path / "hi")]) == 0
        lo = read_lines(tmp_path / "lo" / "numeric_identity5_theta0.5.csv")
        hi = read_lines(tmp_path / "hi" / "numeric_identity5_theta0.5.csv")
        v_lo = np.array([float(l.split(",")[1]) for l in lo[2:]])
        v_hi = np.array([float(l.split(",")[1]) for l in hi[2:]])
        assert np.max(np.abs(v_lo - v_hi)) < 1e-6


class TestThermalScanAndThreshold:
    def test_thermal_scan_columns(self, tmp_path):
        assert main(["thermal-scan", "--gate", "identity5", "--j", "1", "--theta", "0",
                     "--cutoff", "2", "--g-grid", "0:0.2:3", "--t-grid", "0.5,1",
                     "--out", str(tmp_path)]) == 0
        lines = read_lines(tmp_path / "thermal_identity5_theta0.csv")
        assert lines[1] == "g,T,F"
        assert len(lines) == 2 + 3 * 2

    def test_threshold_reports_none_for_flat_curve(self, capsys):
        # weak-coupling window only: no sudden drop inside the scanned range
        assert main(["threshold", "--gate", "identity5", "--j", "5", "--theta", "1.5707",
                     "--temperature", "1", "--cutoff", "4",
                     "--g-grid", "0:0.5:11"]) == 0
        out = capsys.readouterr().out
        assert "identity5: g_c = none" in out


class TestStatsCommands:
    def test_peak_stats_schema(self, tmp_path):
        assert main(["peak-stats", "--gate", "identity5", "--eps", "5",
                     "--t-grid", "0.3,1.0", "--tmax", "10", "--dt", "0.01",
                     "--out", str(tmp_path)]) == 0
        lines = read_lines(tmp_path / "peakstats_identity5.csv")
        assert lines[1] == "T,t_peak,F_peak,drop_rate"
        assert len(lines) == 4

    def test_size_scan_schema(self, tmp_path):
        assert main(["size-scan", "--n", "3,4", "--eps", "5", "--g", "0.05",
                     "--theta", "1.5707963", "--temperature", "1", "--cutoff", "3",
                     "--peaks", "2", "--dt", "0.01", "--out", str(tmp_path)]) == 0
        lines = read_lines(tmp_path / "sizescan_cluster.csv")
        assert lines[1] == "n,F_peak1,F_peak2"
        assert len(lines) == 4


class TestCustomGate:
    def test_custom_gate_from_config(self, tmp_path):
        cfg = tmp_path / "gate.cfg"
        cfg.write_text(
            "gate=custom\n"
            "custom-name=wire3\n"
            "custom-graph=n=3; edges=1-2,2-3\n"
            "custom-steps=2:0\n"
            "custom-outputs=1,3\n")
        assert main(["dephasing-scan", "--config", str(cfg), "--eps", "3",
                     "--tmax", "0.1", "--dt", "0.05", "--out", str(tmp_path)]) == 0
        lines = read_lines(tmp_path / "dephasing_wire3_eps3.csv")
        assert float(lines[2].split(",")[1]) == pytest.approx(1.0, abs=1e-10)

    def test_custom_gate_missing_key_is_usage_error(self, tmp_path):
        cfg = tmp_path / "gate.cfg"
        cfg.write_text("gate=custom\ncustom-graph=n=3; edges=1-2,2-3\n")
        assert main(["dephasing-scan", "--config", str(cfg), "--eps", "3",
                     "--tmax", "0.1", "--dt", "0.05", "--out", str(tmp_path)]) == 2


class TestWorkerPool:
    def test_thread_count_does_not_change_bytes(self, tmp_path, monkeypatch):
        args = ["dephasing-scan", "--gate", "identity5,cz", "--eps", "0,5",
                "--tmax", "0.2", "--dt", "0.02", "--out"]
        monkeypatch.delenv("CLUSTER_DECAY_THREADS", raising=False)
        assert main(args + [str(tmp_path / "serial")]) == 0
        monkeypatch.setenv("CLUSTER_DECAY_THREADS", "3")
        assert main(args + [str(tmp_path / "pooled")]) == 0
        for f in sorted((tmp_path / "serial").glob("*.csv")):
            assert f.read_bytes() == (tmp_path / "pooled" / f.name).read_bytes()


class TestSelftest:
    def test_selftest_passes(self, capsys):
        assert main(["selftest"]) == 0
        out = capsys.readouterr().out
        assert "all checks passed" in out
