"""
Unit tests for the command-line interface.
"""

import json

import pytest
from click.testing import CliRunner

from src.cli import cli
from src.utils.config_loader import reset_config


class TestCli:
    """Tests for the bounded-orbits commands."""

    @pytest.fixture(autouse=True)
    def fresh_config(self):
        reset_config()
        yield
        reset_config()

    @pytest.fixture
    def runner(self):
        return CliRunner()

    @pytest.fixture
    def out(self, tmp_path):
        return str(tmp_path / "out.json")

    def _read(self, path):
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)

    def test_params_relaxed(self, runner, out):
        """Test relaxed constants with waived conditions."""
        result = runner.invoke(
            cli,
            ["params", "--beta", "1/2", "--gamma", "2", "--center", "0,0,0", "--sigma", "1/2",
             "--mode", "relaxed", "--R", "16", "--epsilon", "1/100000", "--out", out],
        )

        assert result.exit_code == 0
        data = self._read(out)
        assert data["R"] == 16
        assert data["epsilon"] == "1/100000"
        assert data["kappa"] == "5/4"
        assert data["waived"]

    def test_params_paper(self, runner, out):
        """Test paper constants."""
        result = runner.invoke(
            cli, ["params", "--beta", "1/3", "--center", "0,0,0", "--sigma", "1/2", "--out", out]
        )

        assert result.exit_code == 0
        assert self._read(out)["R"] == 1562500

    def test_params_invalid_beta(self, runner):
        """Test that beta outside (0, 1) exits with 2."""
        result = runner.invoke(cli, ["params", "--beta", "1", "--center", "0,0,0", "--sigma", "1/2"])
        assert result.exit_code == 2

    def test_invalid_weight(self, runner):
        """Test that a weight not summing to 1 exits with 2."""
        result = runner.invoke(
            cli,
            ["certify", "--weight", "2:1/3:1/2", "--point", "0,0,0", "--epsilon", "1/10", "--max-q", "1"],
        )
        assert result.exit_code == 2

    def test_float_rejected(self, runner):
        """Test that non-rational text is refused."""
        result = runner.invoke(cli, ["certify", "--point", "0,x,0", "--epsilon", "1/10", "--max-q", "1"])
        assert result.exit_code == 2

    def test_certify_violated(self, runner, out):
        """Test a violated certificate and its witness."""
        result = runner.invoke(
            cli, ["certify", "--point", "0,0,0", "--epsilon", "1/10", "--max-q", "1", "--out", out]
        )

        assert result.exit_code == 1
        data = self._read(out)
        assert data["status"] == "violated"
        assert data["witness"]["q"] == 1
        assert data["witness"]["p"] == [0]

    def test_certify_holds(self, runner, out):
        """Test a certificate that holds."""
        result = runner.invoke(
            cli, ["certify", "--point", "1/2,1/2,0", "--epsilon", "1/10", "--max-q", "1", "--out", out]
        )

        assert result.exit_code == 0
        data = self._read(out)
        assert data["status"] == "holds"
        assert data["witness"] is None

    def test_certify_budget(self, runner):
        """Test that a tiny budget exits with 3."""
        result = runner.invoke(
            cli, ["certify", "--point", "1/2,1/2,0", "--epsilon", "1/10", "--max-q", "5", "--budget", "1"]
        )
        assert result.exit_code == 3

    def test_certify_wrong_dimension(self, runner):
        result = runner.invoke(cli, ["certify", "--point", "0,0", "--epsilon", "1/10", "--max-q", "1"])
        assert result.exit_code == 2

    def test_attach(self, runner, out):
        """Test the attachment of (1/2, 1/2) to a small ball at the origin."""
        result = runner.invoke(
            cli,
            ["attach", "--center", "0,0,0", "--sigma", "1/10", "--p", "1", "--s", "1", "--q", "2",
             "--out", out],
        )

        assert result.exit_code == 0
        data = self._read(out)
        assert data["a"] == [-1]
        assert data["b"] == -1
        assert data["xi"] == "1"
        assert data["H"] == "2"
        assert data["C"] == -1

    def test_attach_zero_denominator(self, runner):
        result = runner.invoke(
            cli, ["attach", "--center", "0,0,0", "--sigma", "1/10", "--p", "1", "--s", "1", "--q", "0"]
        )
        assert result.exit_code == 2

    def test_orbit(self, runner, tmp_path):
        """Test the systole CSV for a rational point."""
        out = str(tmp_path / "orbit.csv")
        result = runner.invoke(
            cli,
            ["orbit", "--point", "1/2,1/2,0", "--horizon", "4", "--samples", "3", "--floor", "1/20",
             "--out", out],
        )

        assert result.exit_code == 0
        with open(out, "r", encoding="utf-8") as f:
            lines = f.read().strip().splitlines()
        assert lines[0] == "t,systole,v0,v1,v2,bits"
        assert len(lines) == 4

    def test_play(self, runner, tmp_path, out):
        """Test a short play from a game file."""
        game = tmp_path / "game.yaml"
        game.write_text(
            "variant: hpg\nbeta: 1/2\ngamma: 1\ncenter: [0, 0, 0]\nsigma: 1/2\n"
            "alice: empty\nbob: concentric\nrun_id: cli_play\n",
            encoding="utf-8",
        )
        result = runner.invoke(cli, ["play", str(game), "--max-turns", "5", "--out", out])

        assert result.exit_code == 0
        data = self._read(out)
        assert data["run_id"] == "cli_play"
        assert data["outcome"] == "max_turns"
        assert len(data["turns"]) == 5
        assert data["verdict"]["kind"] == "undecided"

    def test_play_invalid_game(self, runner, tmp_path):
        """Test that an invalid game file exits with 2."""
        game = tmp_path / "bad.yaml"
        game.write_text("variant: hag\nbeta: 1/2\ncenter: [0, 0, 0]\nsigma: 1\n", encoding="utf-8")
        result = runner.invoke(cli, ["play", str(game)])
        assert result.exit_code == 2

    def test_play_paper_alice_absolute_game(self, runner, tmp_path):
        """Test that paper Alice in the absolute game is rejected before play."""
        game = tmp_path / "hag_paper.yaml"
        game.write_text(
            "variant: hag\nbeta: 1/2\ncenter: [0, 0, 0]\nsigma: 1/2\nalice: paper\nbob: concentric\n",
            encoding="utf-8",
        )
        result = runner.invoke(cli, ["play", str(game), "--max-turns", "3"])

        assert result.exit_code == 2
        assert isinstance(result.exception, SystemExit)
        assert "requires variant hpg" in result.output

    def test_play_internal_failure_exit_code(self, runner, tmp_path, monkeypatch):
        """Test that a failure raised during play maps to an exit code instead of a traceback."""
        from src.models.errors import InternalInvariantError
        from src.workflow import GameRunner

        def broken_run(self, **kwargs):
            raise InternalInvariantError("neighbourhood outside ball")

        monkeypatch.setattr(GameRunner, "run", broken_run)
        game = tmp_path / "game.yaml"
        game.write_text("variant: hpg\nbeta: 1/2\ngamma: 1\ncenter: [0, 0, 0]\nsigma: 1/2\n", encoding="utf-8")
        result = runner.invoke(cli, ["play", str(game)])

        assert result.exit_code == 1
        assert isinstance(result.exception, SystemExit)
        assert "internal invariant violated" in result.output

    def test_verify_lemmas(self, runner, out):
        """Test a quick suite run."""
        result = runner.invoke(cli, ["verify-lemmas", "--suite", "params", "--trials", "1", "--out", out])

        assert result.exit_code == 0
        reports = self._read(out)
        assert reports[0]["suite"] == "params"
        assert reports[0]["failures"] == 0

    def test_verify_lemmas_label_and_budget(self, runner, out):
        """Test that a suite label and --budget select the suite and trial count."""
        result = runner.invoke(cli, ["verify-lemmas", "--suite", "L:BPV", "--budget", "5", "--out", out])

        assert result.exit_code == 0
        reports = self._read(out)
        assert len(reports) == 1
        assert reports[0]["suite"] == "dual-existence"
        assert reports[0]["trials"] == 5
        assert reports[0]["failures"] == 0

    def test_verify_lemmas_unknown_suite(self, runner):
        result = runner.invoke(cli, ["verify-lemmas", "--suite", "nope"])
        assert result.exit_code == 2
