"""Temperley-Lieb normal forms ``delta^m * G`` with ``G`` a P2 heap.

Only delta-powers are tracked: both contraction rules send a heap to a
delta-power times a heap, so no other coefficients arise.
"""

import random
from typing import Callable, Iterable, NamedTuple, Optional

from ..errors import PreconditionError
from .heap import Heap, Word, commutation_class, delete_vertex, format_factors, heap_from_word, parse_word
from .props import BalancedConvexChain, balanced_convex_chains, contract, has_p2
from .structure import ConcurrencyStructure

RuleOrder = Callable[[list[BalancedConvexChain]], BalancedConvexChain]


class TLMonomial(NamedTuple):
    delta_exponent: int
    basis_heap: Heap

    def __str__(self) -> str:
        return f"delta^{self.delta_exponent} * {format_factors(self.basis_heap)}"

    def serialize(self) -> dict[str, object]:
        return {"delta": self.delta_exponent, "word": list(self.basis_heap.labels)}


class DeletionOutcome(NamedTuple):
    vertex: int
    piece: str
    monomial: TLMonomial

    @property
    def lands_on_basis(self) -> bool:
        return self.monomial.delta_exponent == 0


def canonical_rule_order(chains: list[BalancedConvexChain]) -> BalancedConvexChain:
    """Length-2 chains first, then the first chain in vertex order."""
    return min(chains, key=lambda c: (c.length, c.vertices))


def random_rule_order(rng: random.Random) -> RuleOrder:
    def choose(chains: list[BalancedConvexChain]) -> BalancedConvexChain:
        return rng.choice(chains)

    return choose


def applicable_chains(e: Heap) -> list[BalancedConvexChain]:
    out = []
    for chain in balanced_convex_chains(e, 3):
        if chain.length == 3 and e.labels[chain.vertices[0]] == e.labels[chain.vertices[1]]:
            continue
        out.append(chain)
    return out


def tl_reduce(e: Heap, rule_order: Optional[RuleOrder] = None) -> TLMonomial:
    choose = rule_order or canonical_rule_order
    exponent = 0
    current = e
    while True:
        chains = applicable_chains(current)
        if not chains:
            return TLMonomial(exponent, current)
        chain = choose(chains)
        if chain.length == 2:
            exponent += 1
        current = contract(current, chain)


def is_monomial_basis_element(e: Heap) -> bool:
    return has_p2(e)


def deletion_test(e: Heap) -> list[DeletionOutcome]:
    """Reduce ``E(a)`` for every vertex ``a`` of a P2 heap."""
    if not has_p2(e):
        raise PreconditionError("deletion_test needs a heap with property P2")
    return [
        DeletionOutcome(v, e.labels[v], tl_reduce(delete_vertex(e, v)))
        for v in e.vertices
    ]


def _word_rewrite(structure: ConcurrencyStructure, word: Word) -> Optional[tuple[int, Word]]:
    for i in range(len(word) - 1):
        if word[i] == word[i + 1]:
            return 1, word[: i + 1] + word[i + 2 :]
    for i in range(len(word) - 2):
        s, t = word[i], word[i + 1]
        if word[i + 2] == s and s != t and structure.is_concurrent(s, t):
            return 0, word[: i + 1] + word[i + 3 :]
    return None


def reduce_word(structure: ConcurrencyStructure, word: str | Iterable[str]) -> TLMonomial:
    """Rewrite with ``ss = delta s`` and ``sts = s`` on words modulo commutation.

    Every word of the current commutation class is scanned for a factor to
    rewrite; the class is recomputed after each rewrite.
    """
    current = parse_word(structure, word)
    exponent = 0
    while True:
        for w in sorted(commutation_class(structure, current)):
            step = _word_rewrite(structure, w)
            if step is not None:
                gained, current = step
                exponent += gained
                break
        else:
            return TLMonomial(exponent, heap_from_word(structure, current))
