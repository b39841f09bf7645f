"""
Unit tests for run_phasekit.py

Run with: pytest tests/test_cli.py -v
"""

import pytest
import json
import tempfile
from pathlib import Path
import sys
sys.path.append(str(Path(__file__).parent.parent))

from run_phasekit import (
    EXIT_OK,
    EXIT_USAGE,
    RunConfig,
    UsageError,
    main,
    parse_n_range,
    run,
    state_spec,
)
from src.states import StateKind


class TestCommandLine:
    """Test suite for the command-line front end."""

    def setup_method(self):
        """Set up a scratch directory for report files."""
        self.tmp = tempfile.TemporaryDirectory()
        self.out_dir = Path(self.tmp.name)

    def teardown_method(self):
        self.tmp.cleanup()

    def invoke(self, *argv, name="report.json"):
        out = self.out_dir / name
        status = main([*argv, "--out", str(out)])
        text = out.read_text(encoding="utf-8") if out.exists() else None
        return status, text

    def test_verify_default(self):
        """Test that verify passes every gating identity and emits twelve records."""
        status, text = self.invoke("verify", "--dim", "16", "--half-width", "4")
        assert status == EXIT_OK
        payload = json.loads(text)
        assert len(payload["results"]) == 12
        assert payload["meta"]["config"]["dim"] == 16
        assert "out" not in payload["meta"]["config"]

    def test_verify_is_byte_identical(self):
        _, first = self.invoke("verify", "--dim", "16", "--half-width", "4", name="a.json")
        _, second = self.invoke("verify", "--dim", "16", "--half-width", "4", name="b.json")
        assert first == second

    def test_verify_inverse_construction(self):
        """Test that the inverse-operator unitary pair reports its gap without failing the run."""
        status, text = self.invoke("verify", "--dim", "8", "--half-width", "6", "--family", "unitary-inverses")
        assert status == EXIT_OK
        records = {r["name"]: r for r in json.loads(text)["results"]}
        assert records["unitary-plus-minus"]["failing_labels"] == [-1]
        assert records["unitary-minus-plus"]["failing_labels"] == [0]

    def test_verify_rejects_one_sided_family(self):
        status, text = self.invoke("verify", "--family", "sg")
        assert status == EXIT_USAGE
        assert text is None

    def test_trig_sg_range(self):
        """Test the vacuum row of the SG trig table."""
        status, text = self.invoke("trig", "--family", "sg", "--dim", "16", "--n", "0..6")
        assert status == EXIT_OK
        rows = json.loads(text)["results"]
        assert [row["n"] for row in rows] == list(range(7))
        assert rows[0]["sum"] == pytest.approx(0.5, abs=1e-15)
        assert rows[3]["sum"] == 1.0

    def test_trig_measured_paper_k(self):
        """Test `trig --family measured --k paper --n 1..8` with the default dimension."""
        status, text = self.invoke("trig", "--family", "measured", "--k", "paper", "--n", "1..8")
        assert status == EXIT_OK
        rows = json.loads(text)["results"]
        assert [row["n"] for row in rows] == list(range(1, 9))
        assert all(row["family"] == "measured/paper" for row in rows)
        assert all(row["claim_holds"] is False for row in rows)
        for row in rows:
            assert row["sum"] == pytest.approx(2.0 / (2 * row["n"] + 1), abs=1e-12)

    def test_trig_measured_k_defaults_to_paper(self):
        _, explicit = self.invoke("trig", "--family", "measured", "--k", "paper", "--dim", "16", "--n", "1..8",
                                  name="a.json")
        status, default = self.invoke("trig", "--family", "measured", "--dim", "16", "--n", "1..8", name="b.json")
        assert status == EXIT_OK
        assert json.loads(default)["results"] == json.loads(explicit)["results"]

    def test_trig_unitary_negative_range(self):
        status, text = self.invoke("trig", "--family", "unitary", "--half-width", "4", "--n=-3..3")
        assert status == EXIT_OK
        assert all(row["sum"] == 1.0 for row in json.loads(text)["results"])

    def test_trig_csv(self):
        status, text = self.invoke("trig", "--family", "sg", "--dim", "8", "--n", "0..2", "--format", "csv",
                                   name="trig.csv")
        assert status == EXIT_OK
        lines = text.splitlines()
        assert lines[0] == "family,n,cos_sq,sin_sq,sum,claim_holds,k"
        assert len(lines) == 4

    def test_trig_boundary_is_usage_error(self):
        status, _ = self.invoke("trig", "--family", "sg", "--dim", "8", "--n", "7")
        assert status == EXIT_USAGE

    def test_stats_coherent(self):
        status, text = self.invoke("stats", "--family", "sg", "--dim", "64", "--alpha-re", "4")
        assert status == EXIT_OK
        (row,) = json.loads(text)["results"]
        assert abs(row["mean_cos"] - 1.0) < 0.05

    def test_stats_rejects_unitary(self):
        status, _ = self.invoke("stats", "--family", "unitary")
        assert status == EXIT_USAGE

    def test_dist_csv(self):
        status, text = self.invoke("dist", "--dim", "16", "--alpha-re", "1.5", "--bins", "64",
                                   "--format", "csv", name="dist.csv")
        assert status == EXIT_OK
        with open(self.out_dir / "dist.csv", "r", encoding="utf-8", newline="") as f:
            raw = f.read()
        assert raw.startswith("phi,density\r\n")
        assert len(text.splitlines()) == 65

    def test_usage_errors(self):
        assert main(["verify", "--dim", "3"]) == EXIT_USAGE
        assert main(["trig", "--family", "sg", "--k", "paper"]) == EXIT_USAGE
        assert main(["dist", "--bins", "2"]) == EXIT_USAGE
        assert main(["trig", "--tol-identity", "0"]) == EXIT_USAGE

    def test_argparse_errors_exit_2(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["nonsense"])
        assert excinfo.value.code == 2
        with pytest.raises(SystemExit):
            main(["verify", "--boundary", "open"])


class TestRunConfig:
    """Test suite for RunConfig helpers."""

    def test_parse_n_range(self):
        assert parse_n_range(None) is None
        assert parse_n_range("5") == [5]
        assert parse_n_range("-3") == [-3]
        assert parse_n_range("-2..2") == [-2, -1, 0, 1, 2]

    @pytest.mark.parametrize("text", ["a..b", "3..1", "1.5"])
    def test_parse_n_range_errors(self, text):
        with pytest.raises(UsageError):
            parse_n_range(text)

    def test_state_inference(self):
        assert state_spec(RunConfig("stats", dim=16)).kind is StateKind.NUMBER
        assert state_spec(RunConfig("stats", dim=16, alpha_re=1.0)).kind is StateKind.COHERENT
        assert state_spec(RunConfig("stats", dim=16, r=0.5)).kind is StateKind.SQUEEZED_VACUUM
        assert state_spec(RunConfig("stats", dim=16, r=0.5, alpha_im=1.0)).kind is StateKind.SQUEEZED_COHERENT
        assert state_spec(RunConfig("stats", dim=16, n="4")).n == 4

    def test_number_state_needs_single_n(self):
        with pytest.raises(UsageError):
            state_spec(RunConfig("stats", dim=16, n="1..3"))

    def test_run_returns_status_and_text(self):
        status, text = run(RunConfig("trig", dim=8, half_width=4, family="sg", n="2"))
        assert status == EXIT_OK
        assert json.loads(text)["results"][0]["n"] == 2


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
