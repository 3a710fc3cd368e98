import hashlib
import re
from functools import lru_cache
from typing import Any, Iterable, Sequence

import networkx as nx
import numpy as np
import numpy.typing as npt
from pydantic import PrivateAttr, model_validator

from .. import sys_utils
from ..errors import StructureError, UnknownPieceError
from ..types_ import FrozenModel


def natural_key(piece: str) -> tuple[tuple[int, int | str], ...]:
    """Sort key comparing digit runs numerically, so "g2" < "g10"."""
    return tuple(
        (0, int(part)) if part.isdigit() else (1, part)
        for part in re.split(r"(\d+)", piece)
        if part
    )


class ConcurrencyStructure(FrozenModel):
    """A finite alphabet of pieces with a symmetric reflexive concurrency relation.

    Only pairs of distinct pieces are stored; every piece is concurrent with
    itself. Pairs are kept as ``(a, b)`` with ``a`` before ``b`` in alphabet
    order, sorted, without repeats.
    """

    pieces: tuple[str, ...]
    concurrent: tuple[tuple[str, str], ...] = ()

    _index: dict[str, int] = PrivateAttr(default_factory=dict)
    _pairs: frozenset[tuple[str, str]] = PrivateAttr(default_factory=frozenset)

    @model_validator(mode="after")
    def _check_invariants(self) -> "ConcurrencyStructure":
        if len(set(self.pieces)) != len(self.pieces):
            raise ValueError("duplicate piece names")
        index = {p: i for i, p in enumerate(self.pieces)}
        for a, b in self.concurrent:
            if a not in index or b not in index:
                raise ValueError(f"pair ({a}, {b}) mentions an undeclared piece")
            if index[a] >= index[b]:
                raise ValueError(f"pair ({a}, {b}) is not normalized")
        if list(self.concurrent) != sorted(
            set(self.concurrent), key=lambda ab: (index[ab[0]], index[ab[1]])
        ):
            raise ValueError("pairs must be sorted and free of repeats")
        return self

    def model_post_init(self, __context: Any) -> None:
        self._index = {p: i for i, p in enumerate(self.pieces)}
        self._pairs = frozenset(self.concurrent)
        return super().model_post_init(__context)

    def __len__(self) -> int:
        return len(self.pieces)

    def __contains__(self, piece: object) -> bool:
        return piece in self._index

    def index(self, piece: str) -> int:
        try:
            return self._index[piece]
        except KeyError:
            raise UnknownPieceError(piece) from None

    def _key(self, a: str, b: str) -> tuple[str, str]:
        return (a, b) if self.index(a) < self.index(b) else (b, a)

    def is_concurrent(self, a: str, b: str) -> bool:
        if a == b:
            self.index(a)
            return True
        return self._key(a, b) in self._pairs

    def commutes(self, a: str, b: str) -> bool:
        """The complementary relation: distinct and not concurrent."""
        return a != b and not self.is_concurrent(a, b)

    def neighbours(self, piece: str) -> tuple[str, ...]:
        self.index(piece)
        return tuple(q for q in self.pieces if q != piece and self.is_concurrent(piece, q))

    def graph(self) -> nx.Graph:
        """The concurrency graph: pieces as nodes, concurrent distinct pairs as edges."""
        g = nx.Graph()
        g.add_nodes_from(self.pieces)
        g.add_edges_from(self.concurrent)
        return g

    def restrict(self, pieces: Iterable[str]) -> "ConcurrencyStructure":
        """The full sub-structure on ``pieces``, keeping alphabet order."""
        keep = set(pieces)
        for p in keep:
            self.index(p)
        return ConcurrencyStructure(
            pieces=tuple(p for p in self.pieces if p in keep),
            concurrent=tuple(
                (a, b) for a, b in self.concurrent if a in keep and b in keep
            ),
        )

    def is_restriction_of(self, other: "ConcurrencyStructure") -> bool:
        if not all(p in other for p in self.pieces):
            return False
        return other.restrict(self.pieces) == self

    def sort_pieces(self, pieces: Iterable[str]) -> list[str]:
        return sorted(pieces, key=self.index)

    @property
    def structure_id(self) -> str:
        digest = hashlib.sha1(
            (" ".join(self.pieces) + "|" + " ".join(f"{a}-{b}" for a, b in self.concurrent)).encode()
        ).hexdigest()[:12]
        return f"P{len(self.pieces)}C{len(self.concurrent)}-{digest}"


def validate_structure(
    pieces: Sequence[str], pairs: Iterable[Iterable[str]] = ()
) -> ConcurrencyStructure:
    """Normalize raw pieces and pairs into a :class:`ConcurrencyStructure`.

    Piece order is kept as given. Duplicate pairs are merged and reflexive
    pairs are dropped with a warning.
    """
    pieces = tuple(str(p) for p in pieces)
    seen: set[str] = set()
    for p in pieces:
        if not p or any(ch.isspace() for ch in p):
            raise StructureError(f"Invalid piece name {p!r}")
        if p in seen:
            raise StructureError(f"Duplicate piece name '{p}'")
        seen.add(p)
    index = {p: i for i, p in enumerate(pieces)}

    normalized: set[tuple[str, str]] = set()
    for raw in pairs:
        pair = [str(x) for x in raw]
        if len(pair) == 1:
            pair = pair * 2
        if len(pair) != 2:
            raise StructureError(f"A concurrency pair needs two pieces, got {pair}")
        for p in pair:
            if p not in index:
                raise UnknownPieceError(p)
        a, b = pair
        if a == b:
            sys_utils.console.log(f"Dropping reflexive pair ({a}, {b}): reflexivity is implicit")
            continue
        key = (a, b) if index[a] < index[b] else (b, a)
        if key in normalized:
            sys_utils.console.log(f"Merging duplicate pair ({key[0]}, {key[1]})")
        normalized.add(key)

    return ConcurrencyStructure(
        pieces=pieces,
        concurrent=tuple(sorted(normalized, key=lambda ab: (index[ab[0]], index[ab[1]]))),
    )


def structure_from_graph(graph: nx.Graph) -> ConcurrencyStructure:
    """Build a structure from a concurrency graph; pieces sorted naturally."""
    pieces = sorted((str(n) for n in graph.nodes), key=natural_key)
    return validate_structure(pieces, ((str(a), str(b)) for a, b in graph.edges))


@lru_cache(maxsize=256)
def concurrency_matrix(structure: ConcurrencyStructure) -> npt.NDArray[np.bool_]:
    """Reflexive concurrency relation as a boolean matrix in alphabet order."""
    n = len(structure)
    mat = np.eye(n, dtype=bool)
    for a, b in structure.concurrent:
        i, j = structure.index(a), structure.index(b)
        mat[i, j] = mat[j, i] = True
    mat.flags.writeable = False
    return mat
