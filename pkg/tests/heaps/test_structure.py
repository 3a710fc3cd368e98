import unittest

import networkx as nx
import pytest
from pydantic import ValidationError

from heaplab.errors import StructureError, UnknownPieceError
from heaplab.heaps.structure import (
    ConcurrencyStructure,
    concurrency_matrix,
    natural_key,
    structure_from_graph,
    validate_structure,
)


class TestValidateStructure(unittest.TestCase):
    def test_pairs_are_normalized_and_merged(self):
        s = validate_structure(["a", "b", "c"], [("b", "a"), ("a", "b"), ("c", "b")])
        self.assertEqual(s.pieces, ("a", "b", "c"))
        self.assertEqual(s.concurrent, (("a", "b"), ("b", "c")))

    def test_reflexive_pairs_are_dropped(self):
        s = validate_structure(["a", "b"], [("a", "a"), ("a", "b")])
        self.assertEqual(s.concurrent, (("a", "b"),))
        self.assertTrue(s.is_concurrent("a", "a"))

    def test_declared_order_is_kept(self):
        s = validate_structure(["z", "a"], [("a", "z")])
        self.assertEqual(s.pieces, ("z", "a"))
        self.assertEqual(s.concurrent, (("z", "a"),))

    def test_unknown_piece(self):
        with self.assertRaises(UnknownPieceError) as ctx:
            validate_structure(["a", "b"], [("a", "c")])
        self.assertEqual(ctx.exception.token, "c")

    def test_duplicate_piece(self):
        with self.assertRaises(StructureError):
            validate_structure(["a", "a"])

    def test_bad_pair_shape(self):
        with self.assertRaises(StructureError):
            validate_structure(["a", "b", "c"], [("a", "b", "c")])


class TestConcurrencyStructure(unittest.TestCase):
    def setUp(self):
        self.s = validate_structure(["1", "2", "3"], [("1", "2"), ("2", "3")])

    def test_relations(self):
        self.assertTrue(self.s.is_concurrent("2", "1"))
        self.assertFalse(self.s.is_concurrent("1", "3"))
        self.assertTrue(self.s.commutes("1", "3"))
        self.assertFalse(self.s.commutes("1", "1"))
        self.assertEqual(self.s.neighbours("2"), ("1", "3"))

    def test_index_and_contains(self):
        self.assertEqual(self.s.index("3"), 2)
        self.assertIn("1", self.s)
        self.assertNotIn("4", self.s)
        with self.assertRaises(UnknownPieceError):
            self.s.index("4")

    def test_restrict(self):
        sub = self.s.restrict(["3", "2"])
        self.assertEqual(sub.pieces, ("2", "3"))
        self.assertEqual(sub.concurrent, (("2", "3"),))
        self.assertTrue(sub.is_restriction_of(self.s))
        other = validate_structure(["1", "3"], [("1", "3")])
        self.assertFalse(other.is_restriction_of(self.s))

    def test_graph(self):
        g = self.s.graph()
        self.assertEqual(sorted(g.nodes), ["1", "2", "3"])
        self.assertEqual(g.number_of_edges(), 2)

    def test_equality_and_id(self):
        again = validate_structure(["1", "2", "3"], [("3", "2"), ("1", "2")])
        self.assertEqual(again, self.s)
        self.assertEqual(again.structure_id, self.s.structure_id)
        self.assertTrue(self.s.structure_id.startswith("P3C2-"))

    def test_unnormalized_model_is_rejected(self):
        with self.assertRaises(ValidationError):
            ConcurrencyStructure(pieces=("a", "b"), concurrent=(("b", "a"),))

    def test_matrix(self):
        mat = concurrency_matrix(self.s)
        self.assertEqual(mat.tolist(), [[True, True, False], [True, True, True], [False, True, True]])
        with pytest.raises(ValueError):
            mat[0, 2] = True


def test_natural_sort_of_graph_nodes():
    g = nx.Graph([("g10", "g2"), ("g2", "g1")])
    s = structure_from_graph(g)
    assert s.pieces == ("g1", "g2", "g10")
    assert s.concurrent == (("g1", "g2"), ("g2", "g10"))
    assert natural_key("x2") < natural_key("x10")
