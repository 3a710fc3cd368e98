import json
import unittest
from unittest.mock import patch

from heaplab.graphs import families
from heaplab.heaps.heap import double_embedding
from heaplab.types_ import Suites
from heaplab.verify.enumerate import EnumerationSpec
from heaplab.verify.suites import (
    SUITE_ORDER,
    check_confluence,
    check_kernel_identity,
    check_lemmas,
    check_regularity,
    check_universal_implications,
    run_suite,
    search_acyclic_not_p1,
)


def spec(structure, n, **kwargs):
    return EnumerationSpec(structure=structure, max_vertices=n, **kwargs)


class TestRegularity(unittest.TestCase):
    def test_regular_structure(self):
        report = check_regularity(spec(families.path(3), 5))
        self.assertEqual(report.verdict, "regular")
        self.assertTrue(report.ok, report.violations)
        self.assertGreater(report.counters["p2"], 0)
        self.assertNotIn("p2_not_p1", report.counters)

    def test_even_cycle_counterexamples(self):
        report = check_regularity(spec(families.cycle(4), 4))
        self.assertEqual(report.verdict, "nonregular")
        self.assertTrue(report.ok, report.violations)
        self.assertGreaterEqual(report.counters["p2_not_p1"], 1)
        minimal = [f.word for f in report.findings if f.kind == "minimal_counterexample"]
        self.assertIn(["g1", "g3", "g2", "g4"], minimal)

    def test_witness_when_bound_is_too_small(self):
        report = check_regularity(spec(families.cycle(4), 3))
        self.assertTrue(report.ok)
        [witness] = [f for f in report.findings if f.kind == "witness"]
        self.assertEqual(witness.word, ["g1", "g3", "g2", "g4"])
        self.assertEqual(witness.detail, "even_cycle")

    def test_only_p2_heaps_are_counted(self):
        report = check_regularity(spec(families.path(2), 3))
        # 1, 2, 12 and 21 besides the empty heap; 121 and 212 contract
        self.assertEqual(sum(report.heaps_checked.values()), 5)


class TestOtherSuites(unittest.TestCase):
    def test_universal(self):
        report = check_universal_implications(spec(families.path(3), 4))
        self.assertTrue(report.ok, report.violations)
        self.assertGreater(report.counters["p1"], 0)
        self.assertEqual(report.heaps_checked[0], 1)
        self.assertEqual(report.verdict, "regular")
        self.assertNotIn("acyclic_not_p1", report.counters)

    def test_universal_records_acyclic_heaps_without_p1(self):
        report = check_universal_implications(spec(families.path(4), 6))
        self.assertTrue(report.ok, report.violations)
        found = [f.word for f in report.findings if f.kind == "acyclic_not_p1"]
        self.assertEqual(found, [["1", "3", "2", "3", "2", "4"], ["2", "4", "3", "2", "1", "3"]])
        self.assertEqual(report.counters["acyclic_not_p1"], 2)

    def test_universal_skips_the_converse_off_property_r(self):
        report = check_universal_implications(spec(families.cycle(4), 4))
        self.assertEqual(report.verdict, "nonregular")
        self.assertNotIn("acyclic_not_p1", report.counters)

    def test_kernel_identity(self):
        report = check_kernel_identity(spec(families.path(3), 5))
        self.assertTrue(report.ok, report.violations)
        self.assertGreater(report.counters["reduced"], 0)

    def test_lemmas(self):
        for structure in (families.path(3), families.disjoint_union(families.path(2), families.cycle(3))):
            with self.subTest(structure=structure.pieces):
                report = check_lemmas(spec(structure, 4))
                self.assertTrue(report.ok, report.violations)

    def test_lemmas_check_where_the_double_sits(self):
        def swapped(e):
            d = double_embedding(e)
            return d._replace(lower=d.upper, upper=d.lower)

        with patch("heaplab.verify.suites.double_embedding", swapped):
            report = check_lemmas(spec(families.path(3), 3))
        self.assertEqual(
            {v.kind for v in report.violations}, {"double_missing_heap", "double_missing_opposite"}
        )
        self.assertIn(["1", "2"], [v.word for v in report.violations])

    def test_confluence(self):
        report = check_confluence(spec(families.path(3), 6), samples=40, orders=3, seed=7)
        self.assertTrue(report.ok, report.violations)
        self.assertEqual(sum(report.heaps_checked.values()), 40)
        self.assertGreater(report.counters["word_rewrites"], 0)

    def test_confluence_on_empty_structure(self):
        report = check_confluence(spec(families.empty(), 3), samples=5)
        self.assertEqual(report.heaps_checked, {0: 1})

    def test_acyclic_search_never_fails(self):
        report = search_acyclic_not_p1(spec(families.cycle(4), 4))
        self.assertTrue(report.ok)
        self.assertEqual(report.violations, [])


def test_run_all_suites():
    run = run_suite(Suites.all, spec(families.path(2), 3), samples=10, orders=2)
    assert [r.suite for r in run.reports] == [s.value for s in SUITE_ORDER]
    assert run.ok
    assert not run.fatal


def test_truncation_is_reported():
    run = run_suite(Suites.universal, spec(families.path(3), 4, per_size_cap=3))
    assert run.reports[0].truncated


def test_json_excludes_timings_by_default():
    run = run_suite(Suites.kernel, spec(families.path(2), 2))
    plain = json.loads(run.stable_json())
    assert "wall_time_s" not in plain["reports"][0]
    assert plain["reports"][0]["suite"] == "kernel"
    timed = json.loads(run.stable_json(include_timings=True))
    assert "wall_time_s" in timed["reports"][0]
    assert run.stable_json() == run_suite(Suites.kernel, spec(families.path(2), 2)).stable_json()
