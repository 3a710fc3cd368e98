"""The boundary map on consecutive same-label pairs and its kernel."""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import numpy.typing as npt
from pydantic import field_validator

from ..types_ import FrozenModel
from .heap import Heap, delete_vertex
from .structure import concurrency_matrix


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


class FieldChoice(FrozenModel):
    characteristic: int = 0

    @field_validator("characteristic")
    @classmethod
    def _prime_or_zero(cls, value: int) -> int:
        if value != 0 and not is_prime(value):
            raise ValueError(f"characteristic must be 0 or a prime, got {value}")
        return value


RATIONALS = FieldChoice()


@dataclass(frozen=True)
class BoundaryMap:
    v0: tuple[int, ...]
    v1: tuple[tuple[int, int], ...]
    matrix: npt.NDArray[np.int64]


def boundary_map(e: Heap) -> BoundaryMap:
    """Columns are edges ``(x, y)``: ``x < y`` with equal labels and no equal
    label strictly between. Column ``(x, y)`` has a 1 in row ``w`` exactly
    when ``x < w < y`` and the label of ``w`` is concurrent with that of ``x``.
    """
    n = len(e)
    idx = np.array([e.structure.index(p) for p in e.labels], dtype=np.intp)
    conc = concurrency_matrix(e.structure)
    edges: list[tuple[int, int]] = []
    columns: list[npt.NDArray[np.bool_]] = []
    for x, y in zip(*np.nonzero(e.order)):
        x, y = int(x), int(y)
        if e.labels[x] != e.labels[y]:
            continue
        between = e.order[x] & e.order[:, y]
        if any(e.labels[int(z)] == e.labels[x] for z in np.flatnonzero(between)):
            continue
        touches = conc[idx[x], idx]
        edges.append((x, y))
        columns.append(between & touches)
    order = sorted(range(len(edges)), key=lambda k: edges[k])
    if edges:
        matrix = np.stack([columns[k] for k in order], axis=1).astype(np.int64)
    else:
        matrix = np.zeros((n, 0), dtype=np.int64)
    return BoundaryMap(tuple(range(n)), tuple(edges[k] for k in order), matrix)


def _rank_bareiss(matrix: npt.NDArray[np.int64]) -> int:
    """Fraction-free elimination over the integers (exact rank over Q)."""
    rows = [[int(v) for v in row] for row in matrix]
    if not rows or not rows[0]:
        return 0
    m, n = len(rows), len(rows[0])
    rank = 0
    prev = 1
    for col in range(n):
        pivot = next((r for r in range(rank, m) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        piv = rows[rank][col]
        for r in range(rank + 1, m):
            factor = rows[r][col]
            rows[r] = [(piv * rows[r][c] - factor * rows[rank][c]) // prev for c in range(n)]
        prev = piv
        rank += 1
        if rank == m:
            break
    return rank


def _rank_mod_p(matrix: npt.NDArray[np.int64], p: int) -> int:
    reduced = np.asarray(matrix, dtype=np.int64) % p
    m, n = reduced.shape
    rank = 0
    for col in range(n):
        nonzero = np.flatnonzero(reduced[rank:, col])
        if not len(nonzero):
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            reduced[[rank, pivot]] = reduced[[pivot, rank]]
        inv = pow(int(reduced[rank, col]), -1, p)
        reduced[rank] = (reduced[rank] * inv) % p
        for r in range(m):
            if r != rank and reduced[r, col]:
                reduced[r] = (reduced[r] - reduced[r, col] * reduced[rank]) % p
        rank += 1
        if rank == m:
            break
    return rank


def matrix_rank(matrix: npt.NDArray[np.int64], field: FieldChoice = RATIONALS) -> int:
    if field.characteristic == 0:
        return _rank_bareiss(matrix)
    return _rank_mod_p(matrix, field.characteristic)


def kernel_dim(bmap: BoundaryMap, field: FieldChoice = RATIONALS) -> int:
    return len(bmap.v1) - matrix_rank(bmap.matrix, field)


def kernel_basis(bmap: BoundaryMap) -> list[list[Fraction]]:
    """Basis of ker over the rationals, one vector per free column."""
    m, n = bmap.matrix.shape
    rows = [[Fraction(int(v)) for v in row] for row in bmap.matrix]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][col]
        rows[r] = [v / lead for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for i, col in enumerate(pivots):
            vec[col] = -rows[i][free]
        basis.append(vec)
    return basis


def heap_kernel_dim(e: Heap, field: FieldChoice = RATIONALS) -> int:
    return kernel_dim(boundary_map(e), field)


def is_acyclic(e: Heap, field: FieldChoice = RATIONALS) -> bool:
    return heap_kernel_dim(e, field) == 0


def is_strongly_acyclic(e: Heap, field: FieldChoice = RATIONALS) -> bool:
    if not is_acyclic(e, field):
        return False
    return all(is_acyclic(delete_vertex(e, v), field) for v in e.vertices)


def format_matrix(bmap: BoundaryMap) -> str:
    """One row per vertex, then one ``kernel:`` line per rational basis vector."""
    header = "edges: " + " ".join(f"({x},{y})" for x, y in bmap.v1)
    lines = [header]
    for v, row in zip(bmap.v0, bmap.matrix):
        lines.append(f"{v:>3}: " + " ".join(str(int(x)) for x in row))
    for vec in kernel_basis(bmap):
        lines.append("kernel: " + " ".join(str(x) for x in vec))
    return "\n".join(lines)
