import unittest

import pytest

from heaplab.errors import InvalidChainError
from heaplab.graphs import families
from heaplab.heaps.heap import delete_vertex, heap_from_word
from heaplab.heaps.props import (
    BalancedConvexChain,
    Exposure,
    balanced_convex_chains,
    contract,
    descents,
    dismantle,
    exposes,
    has_p1,
    has_p2,
    has_p2_by_edges,
    is_minimal_counterexample,
    maximal_vertices,
    minimal_vertices,
)


class TestChains(unittest.TestCase):
    def setUp(self):
        self.a3 = families.path(3)
        self.e = heap_from_word(self.a3, "1 3 2 1 3")

    def test_extremal_vertices(self):
        self.assertEqual(minimal_vertices(self.e), [0, 1])
        self.assertEqual(maximal_vertices(self.e), [3, 4])
        self.assertEqual(descents(self.e), (frozenset({0, 1}), frozenset({3, 4})))

    def test_balanced_convex_chains(self):
        chains = balanced_convex_chains(self.e)
        self.assertEqual([c.vertices for c in chains], [(0, 2, 3), (1, 2, 4)])
        self.assertEqual(balanced_convex_chains(self.e, 2), [])
        self.assertFalse(has_p2(self.e))
        with self.assertRaises(ValueError):
            balanced_convex_chains(self.e, 4)

    def test_repeated_letter(self):
        e = heap_from_word(self.a3, "1 1 1")
        self.assertEqual(
            [c.vertices for c in balanced_convex_chains(e)], [(0, 1), (0, 1, 2), (1, 2)]
        )
        self.assertEqual([c.length for c in balanced_convex_chains(e, 2)], [2, 2])

    def test_p2_heap(self):
        e = heap_from_word(self.a3, "2 1 3 2")
        self.assertEqual(e.labels, ("2", "1", "3", "2"))
        self.assertTrue(has_p2(e))
        self.assertTrue(has_p2_by_edges(e))

    def test_contract(self):
        f = contract(self.e, BalancedConvexChain((0, 2, 3)))
        self.assertEqual(f.labels, ("1", "3", "3"))

    def test_contract_rejects_bad_chains(self):
        for vertices in [(0, 1), (0, 2), (0, 3), (0,)]:
            with self.subTest(vertices=vertices):
                with self.assertRaises(InvalidChainError):
                    contract(self.e, BalancedConvexChain(vertices))


class TestDismantling(unittest.TestCase):
    def setUp(self):
        self.a3 = families.path(3)

    def test_exposes_on_a_chain(self):
        e = heap_from_word(self.a3, "1 2 3")
        self.assertEqual(exposes(e, 0), Exposure.MINUS)
        self.assertEqual(exposes(e, 2), Exposure.PLUS)
        self.assertEqual(exposes(e, 1), Exposure.NONE)

    def test_exposes_nothing_on_the_example(self):
        e = heap_from_word(self.a3, "1 3 2 1 3")
        for v in e.vertices:
            self.assertEqual(exposes(e, v), Exposure.NONE)
        self.assertIsNone(dismantle(e))
        self.assertFalse(has_p1(e))

    def test_dismantle_steps(self):
        steps = dismantle(heap_from_word(self.a3, "1 2 3"))
        assert steps is not None
        self.assertEqual(
            [tuple(s) for s in steps],
            [(("1", "2", "3"), 0, "1", Exposure.MINUS), (("2", "3"), 0, "2", Exposure.MINUS)],
        )

    def test_dismantle_trivial(self):
        self.assertEqual(dismantle(heap_from_word(self.a3, "1 3")), [])

    def test_p1_heap(self):
        e = heap_from_word(self.a3, "2 1 3 2")
        steps = dismantle(e)
        assert steps is not None
        h = e
        for step in steps:
            self.assertEqual(h.labels, step.word)
            self.assertTrue(step.side & exposes(h, step.vertex))
            h = delete_vertex(h, step.vertex)
        self.assertTrue(h.is_trivial())


def test_diamond_heap_is_p2_without_p1():
    e = heap_from_word(families.diamond(), "1 3 2 4 1 3")
    assert e.labels == ("1", "3", "2", "4", "1", "3")
    assert has_p2(e)
    assert has_p2_by_edges(e)
    assert not has_p1(e)


def test_even_cycle_witness_is_minimal():
    e = heap_from_word(families.cycle(4), "g1 g3 g2 g4")
    assert has_p2(e)
    assert not has_p1(e)
    assert is_minimal_counterexample(e)
    assert not is_minimal_counterexample(heap_from_word(families.cycle(4), "g1 g2"))


@pytest.mark.parametrize(
    "word", ["1 2 1", "2 1 3 2", "1 3 2 1 3", "2 1 3 2 1 3 2", "1 2 3 2 1", ""]
)
def test_p2_readings_agree(word):
    e = heap_from_word(families.path(3), word)
    assert has_p2(e) == has_p2_by_edges(e)
