"""
Unit tests for the main module.

This module drives the command-line interface through run() and checks the
printed output and the exit codes of every subcommand.
"""

import io
import json
import os
import sys
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest.mock import patch

from src.main import EXIT_FAILED, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, main, run


class TestMain(unittest.TestCase):
    """Test cases for the permstat CLI."""

    def setUp(self):
        """Silence logging setup so tests do not reconfigure handlers."""
        patcher = patch("src.main.setup_logging")
        self.mock_setup_logging = patcher.start()
        self.addCleanup(patcher.stop)

    def _run(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        with redirect_stdout(stdout), redirect_stderr(stderr):
            code = run(list(argv))
        return code, stdout.getvalue(), stderr.getvalue()

    def test_stat(self):
        code, out, _ = self._run("stat", "--stat", "den", "--perm", "7 1 5 4 9 2 6 3 8")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "13\n")

    def test_stat_json(self):
        code, out, _ = self._run(
            "--format", "json", "stat", "--stat", "den_h:h=3", "--perm", "2 7 1 5 6 4 3"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(
            json.loads(out), {"stat": "gden:g=1,h=3", "perm": [2, 7, 1, 5, 6, 4, 3], "value": 15}
        )

    def test_apply_and_invert(self):
        code, out, _ = self._run(
            "apply", "--map", "phi-den", "--perm", "6 2 1 5 3 4", "--c", "3"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "6 7 2 5 1 3 4\n")

        code, out, _ = self._run("invert", "--map", "phi-den", "--perm", "6 7 2 5 1 3 4")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "6 2 1 5 3 4 c=3\n")

    def test_gh_map_json(self):
        code, out, _ = self._run(
            "--format", "json", "apply", "--map", "phi-gh-den",
            "--g", "2", "--h", "1", "--perm", "621534", "--c", "1",
        )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out), {"image": [6, 2, 1, 5, 3, 7, 4], "case": "Case1"})

    def test_apply_with_trace(self):
        code, out, _ = self._run(
            "apply", "--map", "phi-den", "--trace",
            "--perm", "3 10 1 14 7 2 8 9 5 4 13 6 12 11", "--c", "9",
        )
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("3 10 1 14 7 15 8 9 2 5 13 4 6 12 11\n"))
        self.assertIn("[Step ii. Placing n]", out)

    def test_apply_c_out_of_range(self):
        code, out, err = self._run("apply", "--map", "phi-den", "--perm", "2 1", "--c", "3")
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertIn("Error:", err)

    def test_perm_file(self):
        with tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False) as handle:
            handle.write("7 1 5 4 9 2 6 3 8\n\n2 7 1 5 6 4 3\n")
        self.addCleanup(os.unlink, handle.name)

        code, out, _ = self._run("stat", "--stat", "den", "--perm-file", handle.name)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "13\n15\n")

    def test_missing_perm_file(self):
        code, _, err = self._run("stat", "--stat", "den", "--perm-file", "/nonexistent/p.txt")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("Cannot read", err)

    def test_dist_csv(self):
        code, out, _ = self._run("--format", "csv", "dist", "--pair", "des", "maj", "--n", "3")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "a,b,count\n0,0,1\n1,1,2\n1,2,2\n2,3,1\n")

    def test_dist_json(self):
        code, out, _ = self._run("--format", "json", "dist", "--pair", "exc", "den", "--n", "3")
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertEqual(payload["entries"], [[0, 0, 1], [1, 1, 2], [1, 2, 2], [2, 3, 1]])

    def test_dist_above_cap(self):
        code, _, err = self._run("--cap", "5", "dist", "--pair", "des", "maj", "--n", "6")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("exceeds the enumeration cap 5", err)

    def test_table1(self):
        code, out, _ = self._run("table1")
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(len(lines), 7)
        self.assertEqual(lines[0], "c=0 6215347 (2,7) (1,7) (1,7) (1,7) (0,7) (0,7)")
        self.assertEqual(lines[3], "c=3 6725134 (3,10) (2,10) (1,10) (1,10) (0,10) (0,10)")

    def test_table1_csv(self):
        code, out, _ = self._run("--format", "csv", "table1")
        self.assertEqual(code, EXIT_OK)
        header, first = out.splitlines()[:2]
        self.assertTrue(header.startswith("c,image,exc_1,den_1"))
        self.assertEqual(first, "0,6215347,2,7,1,7,1,7,1,7,0,7,0,7")

    def test_verify_pass(self):
        code, out, _ = self._run("verify", "--theorem", "denert", "--max-n", "5")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("denert: PASS"))

    def test_verify_accepts_level_flag(self):
        code, out, err = self._run(
            "verify", "--theorem", "1.4", "--g", "1", "--l", "1", "--h", "2", "--max-n", "5"
        )
        self.assertEqual(code, EXIT_OK, err)
        self.assertTrue(out.startswith("1.4: PASS"))

    def test_verify_level_bound_fails(self):
        code, out, _ = self._run(
            "verify", "--theorem", "1.4", "--g", "1", "--l", "1", "--h", "4", "--max-n", "5"
        )
        self.assertEqual(code, EXIT_FAILED)
        self.assertIn("FAIL", out)
        self.assertIn("witness:", out)

    def test_verify_level_remark(self):
        code, out, err = self._run(
            "--format", "json", "verify", "--theorem", "remark-1.4",
            "--g", "1", "--l", "2", "--max-n", "5",
        )
        self.assertEqual(code, EXIT_OK, err)
        payload = json.loads(out)
        self.assertEqual(payload["checked_range"]["h"], 4)
        self.assertEqual(payload["witness"]["n"], 3)

    def test_common_options_after_subcommand(self):
        code, out, _ = self._run(
            "stat", "--stat", "den", "--perm", "7 1 5 4 9 2 6 3 8", "--format", "json"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["value"], 13)

        code, _, err = self._run("dist", "--pair", "des", "maj", "--n", "6", "--cap", "5")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("exceeds the enumeration cap 5", err)

        code, out, _ = self._run("--format", "csv", "table1", "--workers", "1")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("c,image,"))

    def test_global_format_survives_subcommand_defaults(self):
        code, out, _ = self._run("--format", "json", "stat", "--stat", "inv", "--perm", "3 2 1")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["value"], 3)

    def test_unexpected_error_has_its_own_exit_code(self):
        with patch("src.main.eval_stat", side_effect=RuntimeError("boom")):
            code, out, err = self._run("stat", "--stat", "den", "--perm", "2 1")
        self.assertEqual(code, EXIT_INTERNAL)
        self.assertEqual(out, "")
        self.assertIn("Error: boom", err)

    def test_counterexample(self):
        code, out, _ = self._run(
            "--format", "json", "counterexample",
            "--pair-a", "rexc:r=2", "den",
            "--pair-b", "rdes:r=2", "rmaj:r=2",
            "--max-n", "5",
        )
        self.assertEqual(code, EXIT_FAILED)
        witness = json.loads(out)["witness"]
        self.assertEqual((witness["n"], witness["a"], witness["b"]), (3, 0, 1))

    def test_invalid_permutation(self):
        code, out, err = self._run("stat", "--stat", "den", "--perm", "3 x 1")
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertIn("'x'", err)

    def test_invalid_descriptor(self):
        code, _, err = self._run("stat", "--stat", "foo", "--perm", "1 2")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("foo", err)

    def test_usage_errors(self):
        self.assertEqual(self._run()[0], EXIT_USAGE)
        self.assertEqual(self._run("verify", "--theorem", "9.9")[0], EXIT_USAGE)
        self.assertEqual(self._run("--help")[0], EXIT_OK)

    def test_option_bounds(self):
        code, _, err = self._run("--cap", "99", "table1")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("--cap", err)
        self.assertEqual(self._run("--workers", "0", "table1")[0], EXIT_USAGE)

    def test_logging_configured_from_flags(self):
        self._run("--log-level", "DEBUG", "table1")
        self.mock_setup_logging.assert_called_once_with(log_level=10, log_file=None)

    @patch.object(sys, "argv", ["permstat", "stat", "--stat", "inv", "--perm", "3 2 1"])
    def test_main_reads_sys_argv(self):
        stdout = io.StringIO()
        with redirect_stdout(stdout):
            code = main()
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(stdout.getvalue(), "3\n")


if __name__ == "__main__":
    unittest.main()
