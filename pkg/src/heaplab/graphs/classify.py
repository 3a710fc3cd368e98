"""Recognition of the connected graphs with property R.

A connected graph has property R exactly when it is complete, an odd
cycle, or one of the trees A_n, D_n, E_n and the affine E6 tree
``Gamma(2, 2, 2)``. Everything else is tagged NonR together with the
reason and the pieces of a forbidden full subgraph.
"""

from enum import Enum
from itertools import combinations
from typing import Any, Optional

import networkx as nx

from ..errors import StructureError
from ..heaps.structure import ConcurrencyStructure
from ..types_ import FrozenModel


class Family(str, Enum):
    complete = "Complete"
    path = "PathA"
    type_d = "TypeD"
    type_e = "TypeE"
    odd_cycle = "OddCycleAffineA"
    affine_e6 = "AffineE6"
    non_r = "NonR"


class NonRReason(str, Enum):
    triangle_incomplete = "triangle_incomplete"
    circuit_not_cycle = "circuit_not_cycle"
    even_cycle = "even_cycle"
    two_branch_points = "two_branch_points"
    valency_at_least_4 = "valency_at_least_4"
    contains_gamma_133 = "contains_gamma_133"
    contains_gamma_223 = "contains_gamma_223"


class GammaPQR(FrozenModel):
    """A tree with one branch point ``center`` (or a path, with ``p = q = 0``).

    ``arms`` lists the three arms in order of length, each read from the
    center outward.
    """

    p: int
    q: int
    r: int
    center: str
    arms: tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]

    def model_post_init(self, __context: Any) -> None:
        assert 0 <= self.p <= self.q <= self.r
        assert tuple(len(a) for a in self.arms) == (self.p, self.q, self.r)
        return super().model_post_init(__context)


class FamilyTag(FrozenModel):
    family: Family
    n: Optional[int] = None
    reason: Optional[NonRReason] = None
    forbidden: tuple[str, ...] = ()
    gamma: Optional[GammaPQR] = None

    def model_post_init(self, __context: Any) -> None:
        if self.family == Family.non_r:
            assert self.reason is not None and self.forbidden
        else:
            assert self.reason is None and self.n is not None
        match self.family:
            case Family.path | Family.complete:
                assert self.n >= 1  # type: ignore[operator]
            case Family.type_d:
                assert self.n >= 4  # type: ignore[operator]
            case Family.type_e:
                assert self.n >= 6  # type: ignore[operator]
            case Family.odd_cycle:
                assert self.n >= 3 and self.n % 2 == 1  # type: ignore[operator]
            case Family.affine_e6:
                assert self.n == 7
        return super().model_post_init(__context)

    @property
    def has_r(self) -> bool:
        return self.family != Family.non_r

    def params(self) -> dict[str, int | str | list[str]]:
        out: dict[str, int | str | list[str]] = {}
        if self.n is not None:
            out["n"] = self.n
        if self.gamma is not None:
            out.update(p=self.gamma.p, q=self.gamma.q, r=self.gamma.r)
        if self.reason is not None:
            out["reason"] = self.reason.value
            out["forbidden"] = list(self.forbidden)
        return out

    def __str__(self) -> str:
        match self.family:
            case Family.affine_e6:
                return "AffineE6"
            case Family.non_r:
                return f"NonR({self.reason.value})"  # type: ignore[union-attr]
            case _:
                return f"{self.family.value}({self.n})"


def connected_components(structure: ConcurrencyStructure) -> list[ConcurrencyStructure]:
    """Full sub-structures on the connected components, ordered by first piece."""
    comps = nx.connected_components(structure.graph())
    ordered = sorted((structure.sort_pieces(c) for c in comps), key=lambda c: structure.index(c[0]))
    return [structure.restrict(c) for c in ordered]


def _arm(g: nx.Graph, center: str, start: str) -> tuple[str, ...]:
    arm = [start]
    prev, cur = center, start
    while True:
        nxt = [v for v in g.neighbors(cur) if v != prev]
        if not nxt:
            return tuple(arm)
        prev, cur = cur, nxt[0]
        arm.append(cur)


def gamma_pqr(structure: ConcurrencyStructure) -> Optional[GammaPQR]:
    """The ``Gamma(p, q, r)`` shape of a tree with at most one branch point."""
    g = structure.graph()
    if not len(structure) or not nx.is_tree(g):
        return None
    degrees = dict(g.degree)
    branch = [v for v in structure.pieces if degrees[v] >= 3]
    if not branch:
        ends = [v for v in structure.pieces if degrees[v] <= 1]
        center = ends[0]
        rest = _arm(g, center, next(iter(g.neighbors(center)))) if len(structure) > 1 else ()
        return GammaPQR(p=0, q=0, r=len(rest), center=center, arms=((), (), rest))
    if len(branch) > 1 or degrees[branch[0]] > 3:
        return None
    center = branch[0]
    arms = sorted(
        (_arm(g, center, v) for v in structure.sort_pieces(g.neighbors(center))),
        key=lambda a: (len(a), structure.index(a[0])),
    )
    return GammaPQR(
        p=len(arms[0]), q=len(arms[1]), r=len(arms[2]), center=center, arms=(arms[0], arms[1], arms[2])
    )


def _is_complete(g: nx.Graph) -> bool:
    n = g.number_of_nodes()
    return g.number_of_edges() == n * (n - 1) // 2


def find_triangle_subgraph(structure: ConcurrencyStructure) -> Optional[tuple[str, ...]]:
    """First four pieces (alphabet order) spanning a connected, incomplete full
    subgraph with a triangle: a diamond or a paw."""
    g = structure.graph()
    for quad in combinations(structure.pieces, 4):
        sub = g.subgraph(quad)
        if nx.is_connected(sub) and not _is_complete(sub) and any(nx.triangles(sub).values()):
            return quad
    return None


def cycle_order(structure: ConcurrencyStructure, cycle: list[str]) -> list[str]:
    """Rotate and orient a cycle to start at its first piece, going to the
    smaller of its two neighbours."""
    k = min(range(len(cycle)), key=lambda i: structure.index(cycle[i]))
    rotated = cycle[k:] + cycle[:k]
    if len(rotated) > 2 and structure.index(rotated[-1]) < structure.index(rotated[1]):
        rotated = rotated[:1] + rotated[:0:-1]
    return rotated


def shortest_cycles(structure: ConcurrencyStructure) -> list[list[str]]:
    cycles = [cycle_order(structure, c) for c in nx.chordless_cycles(structure.graph())]
    return sorted(cycles, key=lambda c: (len(c), [structure.index(p) for p in c]))


def branch_points(structure: ConcurrencyStructure) -> list[str]:
    g = structure.graph()
    return [v for v in structure.pieces if g.degree[v] >= 3]


def classify_component(structure: ConcurrencyStructure) -> FamilyTag:
    if not len(structure):
        raise StructureError("Cannot classify an empty component")
    g = structure.graph()
    if not nx.is_connected(g):
        raise StructureError("classify_component needs a connected structure")
    n = len(structure)

    if _is_complete(g):
        return FamilyTag(family=Family.complete, n=n)

    if all(d == 2 for _, d in g.degree):
        if n % 2:
            return FamilyTag(family=Family.odd_cycle, n=n)
        ring = shortest_cycles(structure)[0]
        return FamilyTag(family=Family.non_r, reason=NonRReason.even_cycle, forbidden=tuple(ring))

    shape = gamma_pqr(structure)
    if shape is not None:
        p, q, r = shape.p, shape.q, shape.r
        if p == 0:
            return FamilyTag(family=Family.path, n=n, gamma=shape)
        if (p, q) == (1, 1):
            return FamilyTag(family=Family.type_d, n=r + 3, gamma=shape)
        if (p, q) == (1, 2):
            return FamilyTag(family=Family.type_e, n=r + 4, gamma=shape)
        if (p, q, r) == (2, 2, 2):
            return FamilyTag(family=Family.affine_e6, n=7, gamma=shape)
        if q >= 3:
            forbidden = (shape.center, shape.arms[0][0]) + shape.arms[1][:3] + shape.arms[2][:3]
            return FamilyTag(
                family=Family.non_r, reason=NonRReason.contains_gamma_133, forbidden=forbidden, gamma=shape
            )
        forbidden = (shape.center,) + shape.arms[0] + shape.arms[1] + shape.arms[2][:3]
        return FamilyTag(
            family=Family.non_r, reason=NonRReason.contains_gamma_223, forbidden=forbidden, gamma=shape
        )

    quad = find_triangle_subgraph(structure)
    if quad is not None:
        return FamilyTag(family=Family.non_r, reason=NonRReason.triangle_incomplete, forbidden=quad)

    if not nx.is_tree(g):
        ring = shortest_cycles(structure)[0]
        outside = [v for v in structure.pieces if v not in ring and any(g.has_edge(v, u) for u in ring)]
        return FamilyTag(
            family=Family.non_r,
            reason=NonRReason.circuit_not_cycle,
            forbidden=tuple(ring) + (outside[0],),
        )

    branch = branch_points(structure)
    if len(branch) >= 2:
        route = nx.shortest_path(g, branch[0], branch[1])
        return FamilyTag(family=Family.non_r, reason=NonRReason.two_branch_points, forbidden=tuple(route))

    return FamilyTag(
        family=Family.non_r,
        reason=NonRReason.valency_at_least_4,
        forbidden=(branch[0],) + tuple(structure.sort_pieces(g.neighbors(branch[0]))[:4]),
    )


def has_property_R(structure: ConcurrencyStructure) -> bool:
    return all(classify_component(c).has_r for c in connected_components(structure))
