"""Tests for the named verification suites."""

import random
import unittest

from blockreg.product_sheaves import Space
from blockreg.suites import (
    SUITE_NAMES,
    SUITES,
    SuiteOptions,
    line_bundle_catalog,
    random_split_sheaves,
    run_suites,
)

P1 = Space((1,))
P2 = Space((2,))
P3 = Space((3,))
P1xP1 = Space((1, 1))
P2xP1 = Space((2, 1))


class TestCatalogs(unittest.TestCase):
    """Test the sheaf catalogs."""

    def test_line_bundle_catalog(self):
        """Test that the catalog covers the degree box."""
        catalog = line_bundle_catalog(P1xP1, 1)
        self.assertEqual(len(catalog), 9)
        self.assertTrue(all(F.is_line_bundle_sum for F in catalog))

    def test_random_sheaves_are_reproducible(self):
        """Test that a seed fixes the random catalog."""
        first = random_split_sheaves(P1xP1, random.Random(7), 20, 3)
        second = random_split_sheaves(P1xP1, random.Random(7), 20, 3)
        self.assertEqual(first, second)
        self.assertEqual(len(first), 20)
        for F in first:
            for degree, _ in F.degrees():
                self.assertTrue(all(-3 <= x <= 3 for x in degree))


class TestRunSuites(unittest.TestCase):
    """Test running suites."""

    def test_names(self):
        """Test the suite registry."""
        self.assertEqual(
            set(SUITES),
            {"thm55", "cor56", "prop49", "prop414", "monotone", "dualsum", "shift",
             "dual", "beilinson"},
        )
        self.assertIn("all", SUITE_NAMES)

    def test_unknown_suite(self):
        """Test that unknown names raise."""
        with self.assertRaises(KeyError):
            run_suites(P1, "nope")

    def test_all_on_p1(self):
        """Test that every suite passes on P1."""
        reports = run_suites(P1, "all", SuiteOptions(max_degree=2))
        self.assertEqual(len(reports), len(SUITES))
        for report in reports:
            self.assertTrue(report.passed, [f.details for f in report.failures])
            self.assertIsNone(report.skipped)

    def test_dual_case_count(self):
        """Test the number of dual checks on P1."""
        (report,) = run_suites(P1, "dual")
        self.assertTrue(report.passed)
        self.assertEqual(report.cases, 24)

    def test_equivalence_on_p1xp1(self):
        """Test the equivalence suite on P1xP1."""
        (report,) = run_suites(P1xP1, "thm55", SuiteOptions(max_degree=2))
        self.assertTrue(report.passed, [f.details for f in report.failures])
        self.assertFalse(report.experimental)
        self.assertGreater(report.cases, 25)

    def test_helix_on_p2(self):
        """Test the helix suite on P2."""
        (report,) = run_suites(P2, "prop49")
        self.assertTrue(report.passed)
        self.assertEqual(report.cases, 21)

    def test_agreement_skipped_on_products(self):
        """Test that the CM agreement suite is skipped on products."""
        (report,) = run_suites(P1xP1, "prop414")
        self.assertIsNotNone(report.skipped)
        self.assertEqual(report.cases, 0)
        self.assertTrue(report.passed)


class TestDefaultCatalogs(unittest.TestCase):
    """Run every suite with default options on the shipped spaces."""

    def _reports(self, space):
        reports = {report.name: report for report in run_suites(space, "all")}
        self.assertEqual(set(reports), set(SUITES))
        for name, report in reports.items():
            with self.subTest(space=str(space), suite=name):
                self.assertTrue(report.passed, [f.details for f in report.failures])
        return reports

    def test_single_factor_spaces(self):
        """Test P1, P2 and P3, including 200 random CM agreement checks each."""
        for space in (P1, P2, P3):
            reports = self._reports(space)
            self.assertIsNone(reports["prop414"].skipped)
            self.assertEqual(reports["prop414"].cases, 200)
            self.assertEqual(reports["prop49"].cases, 21)

    def test_p1xp1(self):
        """Test P1xP1: the degree-4 grid plus 100 sums, helix indices up to 7."""
        reports = self._reports(P1xP1)
        self.assertEqual(reports["prop49"].cases, 15)
        for name in ("thm55", "cor56", "shift"):
            self.assertEqual(reports[name].cases, 81 + 100)
        self.assertIsNotNone(reports["prop414"].skipped)

    def test_p2xp1(self):
        """Test P2xP1 on the same catalogs."""
        reports = self._reports(P2xP1)
        for name in ("thm55", "cor56", "shift"):
            self.assertEqual(reports[name].cases, 81 + 100)
        self.assertGreaterEqual(reports["monotone"].cases, 3 * (81 + 100))
        self.assertEqual(reports["beilinson"].cases, 100)


if __name__ == '__main__':
    unittest.main()
