import random
import unittest

import pytest

from heaplab.errors import PreconditionError
from heaplab.graphs import families
from heaplab.heaps.heap import heap_from_word
from heaplab.heaps.props import has_p2
from heaplab.heaps.tl import (
    applicable_chains,
    deletion_test,
    is_monomial_basis_element,
    random_rule_order,
    reduce_word,
    tl_reduce,
)


class TestTLReduce(unittest.TestCase):
    def setUp(self):
        self.a3 = families.path(3)

    def test_example(self):
        mono = tl_reduce(heap_from_word(self.a3, "1 3 2 1 3"))
        self.assertEqual(mono.delta_exponent, 1)
        self.assertEqual(mono.basis_heap.labels, ("1", "3"))
        self.assertEqual(str(mono), "delta^1 * (1 3)")
        self.assertEqual(mono.serialize(), {"delta": 1, "word": ["1", "3"]})

    def test_small_words(self):
        cases = {"1 1": (1, ("1",)), "1 2 1": (0, ("1",)), "1 1 1": (2, ("1",)), "": (0, ())}
        for word, (m, basis) in cases.items():
            with self.subTest(word=word):
                mono = tl_reduce(heap_from_word(self.a3, word))
                self.assertEqual((mono.delta_exponent, mono.basis_heap.labels), (m, basis))
                self.assertTrue(has_p2(mono.basis_heap))

    def test_equal_label_triples_are_not_rules(self):
        e = heap_from_word(self.a3, "1 1 1")
        self.assertEqual([c.vertices for c in applicable_chains(e)], [(0, 1), (1, 2)])

    def test_p2_heaps_are_fixed(self):
        e = heap_from_word(self.a3, "2 1 3 2")
        self.assertTrue(is_monomial_basis_element(e))
        self.assertEqual(tl_reduce(e), (0, e))

    def test_random_rule_orders_agree(self):
        for word in ["1 3 2 1 3", "2 1 1 3 2 2 1", "1 2 3 2 1 2 3", "3 3 2 1 2 3"]:
            e = heap_from_word(self.a3, word)
            reference = tl_reduce(e)
            for seed in range(5):
                with self.subTest(word=word, seed=seed):
                    self.assertEqual(tl_reduce(e, random_rule_order(random.Random(seed))), reference)


class TestDeletionTest(unittest.TestCase):
    def test_a3_deletions_land_on_basis(self):
        outcomes = deletion_test(heap_from_word(families.path(3), "2 1 3 2"))
        self.assertEqual([o.piece for o in outcomes], ["2", "1", "3", "2"])
        self.assertTrue(all(o.lands_on_basis for o in outcomes))

    def test_diamond_witness_leaves_basis(self):
        e = heap_from_word(families.diamond(), "1 3 2 4 1 3")
        outcomes = deletion_test(e)
        self.assertFalse(all(o.lands_on_basis for o in outcomes))
        middle = outcomes[2]
        self.assertEqual(middle.piece, "2")
        self.assertEqual(middle.monomial.delta_exponent, 1)
        self.assertEqual(middle.monomial.basis_heap.labels, ("1", "3"))

    def test_requires_p2(self):
        with self.assertRaises(PreconditionError):
            deletion_test(heap_from_word(families.path(3), "1 1"))


@pytest.mark.parametrize(
    "word", ["1 3 2 1 3", "1 1", "1 2 1", "2 1 3 2", "2 2 1 2", "3 2 1 2 3", "1 3 3 1"]
)
def test_word_rewriting_matches_heap_reduction(word):
    a3 = families.path(3)
    assert reduce_word(a3, word) == tl_reduce(heap_from_word(a3, word))
