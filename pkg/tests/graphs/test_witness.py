import networkx as nx
import pytest

from heaplab.errors import PreconditionError
from heaplab.graphs import families
from heaplab.graphs.classify import NonRReason, classify_component
from heaplab.graphs.witness import (
    DIAMOND_WORD,
    PAW_WORD,
    candidate_words,
    find_witness,
    witness_nonregular,
)
from heaplab.heaps.props import has_p1, has_p2
from heaplab.heaps.structure import structure_from_graph, validate_structure

NON_R = {
    "diamond": (families.diamond, NonRReason.triangle_incomplete),
    "paw": (families.paw, NonRReason.triangle_incomplete),
    "k4_minus_edge_plus_tail": (
        lambda: validate_structure(
            ["1", "2", "3", "4", "5"],
            [("1", "2"), ("1", "4"), ("2", "3"), ("2", "4"), ("3", "4"), ("4", "5")],
        ),
        NonRReason.triangle_incomplete,
    ),
    "square_with_tail": (
        lambda: validate_structure(
            ["g1", "g2", "g3", "g4", "t"],
            [("g1", "g2"), ("g2", "g3"), ("g3", "g4"), ("g4", "g1"), ("g1", "t")],
        ),
        NonRReason.circuit_not_cycle,
    ),
    "k23": (
        lambda: structure_from_graph(
            nx.relabel_nodes(nx.complete_bipartite_graph(2, 3), lambda v: f"v{v + 1}")
        ),
        NonRReason.circuit_not_cycle,
    ),
    "cycle4": (lambda: families.cycle(4), NonRReason.even_cycle),
    "cycle8": (lambda: families.cycle(8), NonRReason.even_cycle),
    "h_tree": (
        lambda: validate_structure(
            list("abcmdef"),
            [("a", "c"), ("b", "c"), ("c", "m"), ("m", "d"), ("d", "e"), ("d", "f")],
        ),
        NonRReason.two_branch_points,
    ),
    "star4": (lambda: families.star(4), NonRReason.valency_at_least_4),
    "star5": (lambda: families.star(5), NonRReason.valency_at_least_4),
    "gamma133": (lambda: families.gamma(1, 3, 3), NonRReason.contains_gamma_133),
    "gamma244": (lambda: families.gamma(2, 4, 4), NonRReason.contains_gamma_133),
    "gamma223": (lambda: families.gamma(2, 2, 3), NonRReason.contains_gamma_223),
    "gamma226": (lambda: families.gamma(2, 2, 6), NonRReason.contains_gamma_223),
}


@pytest.mark.parametrize("name", sorted(NON_R))
def test_witness_is_p2_without_p1(name):
    build, reason = NON_R[name]
    structure = build()
    cert = witness_nonregular(structure)
    assert cert.reason == reason
    assert cert.heap.structure == structure
    assert has_p2(cert.heap)
    assert not has_p1(cert.heap)
    assert set(cert.word) == set(cert.support)
    assert set(cert.support) <= set(structure.pieces)


def test_triangle_words_use_the_fixed_templates():
    assert next(iter(candidate_words(families.diamond(), classify_component(families.diamond())))) == DIAMOND_WORD
    assert next(iter(candidate_words(families.paw(), classify_component(families.paw())))) == PAW_WORD


def test_even_cycle_word():
    cert = witness_nonregular(families.cycle(4))
    assert cert.word == ("g1", "g3", "g2", "g4")


def test_regular_structures_have_no_witness():
    with pytest.raises(PreconditionError):
        witness_nonregular(families.type_e(8))
    assert find_witness(families.disjoint_union(families.path(3), families.cycle(5))) is None


def test_witness_embeds_into_the_whole_structure():
    whole = families.disjoint_union(families.path(2), families.cycle(4))
    cert = find_witness(whole)
    assert cert is not None
    assert cert.heap.structure == whole
    assert cert.reason == NonRReason.even_cycle
    assert not has_p1(cert.heap)
