"""Tests for the command-line interface, including golden output files."""

import contextlib
import io
import json
import os
import tempfile
import unittest

from blockreg.cli import (
    EXIT_OK,
    EXIT_SEARCH_CAP,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    run,
)
from blockreg.logging_config import setup_logging

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")

GOLDEN_CASES = [
    ("cohom_p1xp1.txt", ["cohom", "P1xP1", "O(-2,-2)"]),
    ("cohom_p1xp1.json", ["cohom", "P1xP1", "O(-2,-2)", "--json"]),
    ("cohom_p2xp1_quiet.txt", ["cohom", "P2xP1", "O(1,1)", "--quiet"]),
    ("euler_p1xp1.txt", ["euler", "P1xP1", "O(-1,-1)", "O(0,0)"]),
    ("blocks_p1xp1.txt", ["blocks", "P1xP1"]),
    ("blocks_index.json", ["blocks", "P1xP1", "--index", "3", "--json"]),
    ("gram_p1xp1.txt", ["gram", "P1xP1"]),
    ("gram_p1.json", ["gram", "P1", "--json"]),
    ("dual_p1xp1.txt", ["dual", "P1xP1", "--k", "0"]),
    ("reg_cm_p2.txt", ["reg", "P2", "O(1)", "--kind", "cm"]),
    ("reg_hw_p1xp1.json", ["reg", "P1xP1", "O(-1,0)", "--kind", "hw", "--base", "0,0", "--json"]),
    ("reg_block_p1xp1.txt", ["reg", "P1xP1", "O(-1,-1)", "--kind", "block"]),
    ("beilinson_p1xp1.txt", ["beilinson", "P1xP1", "O(1,1)", "--m", "-2"]),
]


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
        status = run(argv, out=out, err=err)
    return status, out.getvalue(), err.getvalue()


class TestGoldenFiles(unittest.TestCase):
    """Compare command output byte for byte with tests/golden."""

    def test_golden_outputs(self):
        """Test every golden invocation."""
        for name, argv in GOLDEN_CASES:
            with self.subTest(golden=name):
                status, out, err = invoke(argv)
                self.assertEqual(status, EXIT_OK, err)
                with open(os.path.join(GOLDEN_DIR, name), "rb") as f:
                    expected = f.read()
                self.assertEqual(out.encode("utf-8"), expected)

    def test_json_outputs_parse(self):
        """Test that every JSON golden is a single object with the shared keys."""
        for name, argv in GOLDEN_CASES:
            if "--json" not in argv:
                continue
            with self.subTest(golden=name):
                _, out, _ = invoke(argv)
                payload = json.loads(out)
                self.assertEqual(set(payload), {"inputs", "result", "witnesses"})


class TestCommands(unittest.TestCase):
    """Test individual command behaviour."""

    def test_reg_at_false_still_succeeds(self):
        """Test that a negative answer is a result, not an error."""
        status, out, _ = invoke(["reg", "P1xP1", "O(-1,0)", "--kind", "block", "--at", "-2"])
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(out, "false\nwitness: Ext^1(O(1,0), O(-1,0)) = 1\n")

    def test_reg_at_quiet(self):
        """Test that --quiet drops witnesses."""
        status, out, _ = invoke(
            ["reg", "P1xP1", "O(0,0)", "--kind", "block", "--at", "-2", "--quiet"]
        )
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(out, "true\n")

    def test_zero_sheaf_regularity(self):
        """Test that -inf is printed and encoded as a string."""
        status, out, _ = invoke(["reg", "P2", "0", "--kind", "cm"])
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(out, "-inf\n")
        _, out, _ = invoke(["reg", "P2", "0", "--kind", "cm", "--json"])
        self.assertEqual(json.loads(out)["result"]["value"], "-inf")

    def test_hw_verdict(self):
        """Test the least diagonal point."""
        status, out, _ = invoke(["reg", "P1xP1", "O(-1,0)", "--kind", "hw", "--quiet"])
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(out, "1\n")

    def test_dual_k0(self):
        """Test solved dual classes of a non-aligned window."""
        status, out, _ = invoke(["dual", "P1xP1", "--k0", "--window", "1"])
        self.assertEqual(status, EXIT_OK)
        # 4[O(1,1)] - [O] in the basis O(-1,-1), O(-1,0), O(0,-1), O(0,0)
        self.assertIn("E_2 O(0,0): [4, -8, -8, 15] rank 3\n", out)

    def test_gram_window(self):
        """Test the Gram matrix of a shifted window."""
        status, out, _ = invoke(["gram", "P1", "--window", "1"])
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(out, "1 2\n0 1\nunitriangular: yes\n")

    def test_verify_suite(self):
        """Test a passing suite."""
        status, out, _ = invoke(["verify", "P1", "--suite", "dual"])
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(out, "dual: ok (24 cases)\n")

    def test_verify_all_on_product(self):
        """Test that every suite passes on P2xP1."""
        status, out, err = invoke(["verify", "P2xP1", "--suite", "all"])
        self.assertEqual(status, EXIT_OK, err)
        lines = out.splitlines()
        self.assertEqual(len(lines), 9)
        self.assertIn("thm55: ok (181 cases)", lines)
        self.assertTrue(all(": ok (" in line or ": skipped (" in line for line in lines))

    def test_verify_skipped(self):
        """Test that a skipped suite is reported and passes."""
        status, out, _ = invoke(["verify", "P1xP1", "--suite", "prop414"])
        self.assertEqual(status, EXIT_OK)
        self.assertTrue(out.startswith("prop414: skipped ("))

    def test_verify_json(self):
        """Test the JSON summary of a suite run."""
        status, out, _ = invoke(["verify", "P2", "--suite", "prop49", "--json"])
        self.assertEqual(status, EXIT_OK)
        payload = json.loads(out)
        self.assertTrue(payload["result"]["passed"])
        self.assertEqual(payload["result"]["suites"][0]["cases"], 21)


class TestManifest(unittest.TestCase):
    """Test --manifest batch input."""

    def setUp(self):
        fd, self.path = tempfile.mkstemp(suffix=".txt")
        os.close(fd)

    def tearDown(self):
        os.unlink(self.path)

    def _write(self, text):
        with open(self.path, "w", encoding="utf-8") as f:
            f.write(text)

    def test_cohom_manifest(self):
        """Test one output line per expression."""
        self._write("; two line bundles\nO(1,1)\n\nO(-2,-2)\n")
        status, out, _ = invoke(["cohom", "P1xP1", "--manifest", self.path])
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(out, "O(1,1): h^0=4 h^1=0 h^2=0\nO(-2,-2): h^0=0 h^1=0 h^2=1\n")

    def test_reg_manifest(self):
        """Test regularity over a batch."""
        self._write("O(1)\nO(-2)\n")
        status, out, _ = invoke(["reg", "P2", "--kind", "cm", "--manifest", self.path])
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(out, "O(1): -1\nO(-2): 2\n")

    def test_error_reports_manifest_line(self):
        """Test that a bad expression names its line in the file."""
        self._write("O(1,1)\n; comment\nO(1,1\n")
        status, _, err = invoke(["cohom", "P1xP1", "--manifest", self.path])
        self.assertEqual(status, EXIT_USAGE)
        self.assertIn("Error: line 3, column", err)


class TestExitCodes(unittest.TestCase):
    """Test exit statuses and error output."""

    def test_parse_error(self):
        """Test that a syntax error exits 2 with a location."""
        status, out, err = invoke(["cohom", "P1xP1", "O(1,0"])
        self.assertEqual(status, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertIn("Error: line 1, column", err)

    def test_missing_sheaf(self):
        """Test that cohom needs a sheaf or a manifest."""
        status, _, err = invoke(["cohom", "P1xP1"])
        self.assertEqual(status, EXIT_USAGE)
        self.assertIn("--manifest", err)

    def test_usage_error(self):
        """Test that argparse errors exit 2."""
        status, out, err = invoke(["nope"])
        self.assertEqual(status, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertIn("invalid choice", err)
        status, _, err = invoke(["reg", "P2", "O(1)"])
        self.assertEqual(status, EXIT_USAGE)
        self.assertIn("--kind", err)

    def test_help(self):
        """Test that --help exits 0."""
        status, out, _ = invoke(["--help"])
        self.assertEqual(status, EXIT_OK)
        self.assertIn("usage: blockreg", out)

    def test_search_cap(self):
        """Test that leaving the search bracket exits 3."""
        status, _, err = invoke(["reg", "P2", "O(5)", "--kind", "cm", "--search-cap", "0"])
        self.assertEqual(status, EXIT_SEARCH_CAP)
        self.assertIn("--search-cap", err)

    def test_cm_on_product(self):
        """Test that CM regularity needs a single projective space."""
        status, _, err = invoke(["reg", "P1xP1", "O(0,0)", "--kind", "cm"])
        self.assertEqual(status, EXIT_USAGE)
        self.assertIn("single projective factor", err)

    def test_base_needs_hw(self):
        """Test that --base only applies to hw."""
        status, _, _ = invoke(["reg", "P1xP1", "O(0,0)", "--kind", "block", "--base", "0,0"])
        self.assertEqual(status, EXIT_USAGE)

    def test_beilinson_not_aligned(self):
        """Test that products need aligned m."""
        status, _, err = invoke(["beilinson", "P1xP1", "O(1,1)", "--m", "0"])
        self.assertEqual(status, EXIT_USAGE)
        self.assertIn("not aligned", err)

    def test_beilinson_not_regular(self):
        """Test that F must be m-regular."""
        status, _, err = invoke(["beilinson", "P1xP1", "O(-1,-1)", "--m", "-2"])
        self.assertEqual(status, EXIT_USAGE)
        self.assertIn("not -2-regular", err)

    def test_exit_code_constants(self):
        """Test the documented statuses."""
        self.assertEqual((EXIT_OK, EXIT_VERIFICATION_FAILED, EXIT_USAGE, EXIT_SEARCH_CAP),
                         (0, 1, 2, 3))


class TestLogging(unittest.TestCase):
    """Test logging options."""

    def tearDown(self):
        setup_logging()

    def test_log_file(self):
        """Test that --log-file receives debug records."""
        fd, path = tempfile.mkstemp(suffix=".log")
        os.close(fd)
        try:
            status, _, _ = invoke(["euler", "P1", "0", "1", "--log-file", path])
            self.assertEqual(status, EXIT_OK)
            setup_logging()
            with open(path, encoding="utf-8") as f:
                self.assertIn("Running 'euler' on P1", f.read())
        finally:
            os.unlink(path)


if __name__ == '__main__':
    unittest.main()
