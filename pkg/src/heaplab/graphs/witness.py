"""Heaps with property P2 but not P1 on graphs without property R.

Each NonR case has a fixed word shape over a small full subgraph. Role
assignments are tried in canonical order and the first word whose heap
passes both checks is returned; a case that produces no passing word is an
internal error and is never masked.
"""

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Optional

import networkx as nx

from .. import sys_utils
from ..errors import PreconditionError, WitnessVerificationError
from ..heaps.heap import Heap, Word, embed, heap_from_word
from ..heaps.props import has_p1, has_p2
from ..heaps.structure import ConcurrencyStructure
from .classify import (
    FamilyTag,
    NonRReason,
    branch_points,
    classify_component,
    connected_components,
    shortest_cycles,
)

DIAMOND_WORD = ("1", "3", "2", "4", "1", "3")
DIAMOND_EDGES = (("1", "2"), ("1", "4"), ("2", "3"), ("2", "4"), ("3", "4"))
PAW_WORD = ("5", "8", "6", "7", "8", "6", "5", "7")
PAW_EDGES = (("5", "6"), ("6", "7"), ("6", "8"), ("7", "8"))
GAMMA_133_WORD = tuple("a c x b d c e d f x e g".split())
GAMMA_223_WORD = tuple("x b f a c b d c e d f c g b f a c x b d".split())


@dataclass(frozen=True)
class WitnessCertificate:
    heap: Heap
    reason: NonRReason
    support: tuple[str, ...]
    p2: bool = True
    p1: bool = False

    @property
    def word(self) -> Word:
        return self.heap.labels


def _relabel(template: tuple[str, ...], roles: dict[str, str]) -> Word:
    return tuple(roles[t] for t in template)


def _triangle_words(structure: ConcurrencyStructure, quad: tuple[str, ...]) -> Iterator[Word]:
    g = structure.graph().subgraph(quad)
    template, edges = (DIAMOND_WORD, DIAMOND_EDGES) if g.number_of_edges() == 5 else (PAW_WORD, PAW_EDGES)
    names = sorted(set(template))
    for image in permutations(quad):
        roles = dict(zip(names, image))
        if all(g.has_edge(roles[a], roles[b]) for a, b in edges):
            yield _relabel(template, roles)


def _circuit_words(structure: ConcurrencyStructure) -> Iterator[Word]:
    g = structure.graph()
    for ring in shortest_cycles(structure):
        for k in range(len(ring)):
            rot = ring[k:] + ring[:k]
            for cyc in (rot, rot[:1] + rot[:0:-1]):
                for x in structure.sort_pieces(g.neighbors(cyc[0])):
                    if x in cyc:
                        continue
                    yield (x, cyc[-1], *cyc, cyc[0], x, cyc[1])


def _even_cycle_words(ring: tuple[str, ...]) -> Iterator[Word]:
    yield ring[0::2] + ring[1::2]


def _two_branch_words(structure: ConcurrencyStructure) -> Iterator[Word]:
    g = structure.graph()
    branch = branch_points(structure)
    for i, c in enumerate(branch):
        for c2 in branch[i + 1 :]:
            route = nx.shortest_path(g, c, c2)
            xs = [v for v in structure.sort_pieces(g.neighbors(c)) if v != route[1]]
            ys = [v for v in structure.sort_pieces(g.neighbors(c2)) if v != route[-2]]
            yield (xs[0], xs[1], *route, ys[0], ys[1])


def _star_words(structure: ConcurrencyStructure) -> Iterator[Word]:
    g = structure.graph()
    for c in structure.pieces:
        leaves = structure.sort_pieces(g.neighbors(c))
        if len(leaves) >= 4:
            x1, x2, x3, x4 = leaves[:4]
            yield (x1, x2, c, x3, x4)


def _gamma_words(tag: FamilyTag) -> Iterator[Word]:
    shape = tag.gamma
    assert shape is not None
    short, mid, long_ = shape.arms
    if tag.reason == NonRReason.contains_gamma_133:
        roles = {
            "d": shape.center,
            "x": short[0],
            "c": mid[0],
            "b": mid[1],
            "a": mid[2],
            "e": long_[0],
            "f": long_[1],
            "g": long_[2],
        }
        yield _relabel(GAMMA_133_WORD, roles)
    else:
        for first, second in ((short, mid), (mid, short)):
            roles = {
                "c": shape.center,
                "b": long_[0],
                "a": long_[1],
                "x": long_[2],
                "d": first[0],
                "e": first[1],
                "f": second[0],
                "g": second[1],
            }
            yield _relabel(GAMMA_223_WORD, roles)


def candidate_words(structure: ConcurrencyStructure, tag: FamilyTag) -> Iterator[Word]:
    match tag.reason:
        case NonRReason.triangle_incomplete:
            return _triangle_words(structure, tag.forbidden)
        case NonRReason.circuit_not_cycle:
            return _circuit_words(structure)
        case NonRReason.even_cycle:
            return _even_cycle_words(tag.forbidden)
        case NonRReason.two_branch_points:
            return _two_branch_words(structure)
        case NonRReason.valency_at_least_4:
            return _star_words(structure)
        case NonRReason.contains_gamma_133 | NonRReason.contains_gamma_223:
            return _gamma_words(tag)
    raise PreconditionError(f"No witness construction for {tag}")


def witness_nonregular(
    structure: ConcurrencyStructure, ambient: Optional[ConcurrencyStructure] = None
) -> WitnessCertificate:
    """A verified P2, non-P1 heap for a connected NonR structure.

    The heap is built on the full sub-structure spanned by its word and
    embedded into ``structure`` (and then ``ambient`` when given); both
    properties are checked on the embedded heap.
    """
    tag = classify_component(structure)
    if tag.has_r:
        raise PreconditionError(f"{tag} has property R, so there is no witness")
    target = ambient or structure
    sys_utils.console.log(f"Building witness for {tag}")
    tried = 0
    for word in candidate_words(structure, tag):
        tried += 1
        local = heap_from_word(structure.restrict(word), word)
        heap = embed(local, target)
        if has_p2(heap) and not has_p1(heap):
            assert tag.reason is not None
            support = tuple(target.sort_pieces(set(word)))
            return WitnessCertificate(heap=heap, reason=tag.reason, support=support)
        sys_utils.console.log(f"Rejected candidate {sys_utils.show_word(word)}")
    raise WitnessVerificationError(f"No candidate word for {tag} verified P2 and not P1 ({tried} tried)")


def find_witness(structure: ConcurrencyStructure) -> Optional[WitnessCertificate]:
    """Witness from the first NonR component, or None if every component has R."""
    for comp in connected_components(structure):
        if not classify_component(comp).has_r:
            return witness_nonregular(comp, structure)
    return None
