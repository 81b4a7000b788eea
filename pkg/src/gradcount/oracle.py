"""Brute-force ground truth for elementary grading counts.

Enumerates gamma(m, G), the maps a(i, g) >= 0 with sum_g a(i, g) = m_i, and
counts orbits of the translation (a.h)(i, g) = a(i, g h) directly.  Nothing
here uses the closed formulas from :mod:`gradcount.elementary`.

Maps are handled internally as rows of a 2-d array (block-major, group
elements in index order), streamed in chunks, so that translation by h is a
column permutation.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import chain
from typing import Iterator

import numpy as np

from .elementary import BlockShape, as_shape
from .errors import BoundExceeded, DomainError, IntegralityError
from .groups import AbelianGroupType, GroupSpec, multiplication_table

DEFAULT_ENUM_CAP = 10 ** 7
_CHUNK_CELLS = 1 << 20


def enum_cap() -> int:
    """Enumeration cap, overridable through ``GRADCOUNT_ENUM_CAP``."""
    raw = os.environ.get("GRADCOUNT_ENUM_CAP")
    return int(raw) if raw else DEFAULT_ENUM_CAP


@dataclass(frozen=True)
class WeightMap:
    """A point of gamma(m, G): ``values[i][g]`` is a(i, g) for element index g."""

    shape: BlockShape
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.values) != self.shape.s:
            raise DomainError("one row of weights per block is required")
        for row, m in zip(self.values, self.shape.blocks):
            if sum(row) != m or min(row) < 0:
                raise DomainError(f"row {row} is not a composition of {m}")

    @classmethod
    def from_flat(cls, shape: BlockShape, flat: tuple[int, ...]) -> WeightMap:
        q = len(flat) // shape.s
        return cls(shape, tuple(flat[i * q:(i + 1) * q] for i in range(shape.s)))

    def flat(self) -> tuple[int, ...]:
        return tuple(chain.from_iterable(self.values))


def gamma_size(group_order: int, shape) -> int:
    shape = as_shape(shape)
    return math.prod(math.comb(m + group_order - 1, m) for m in shape.blocks)


def _compositions_desc(m: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of m into ``parts`` parts, lexicographically decreasing."""
    if parts == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for rest in _compositions_desc(m - first, parts - 1):
            yield (first,) + rest


def _check_cap(group_order: int, shape: BlockShape, cap: int | None) -> None:
    cap = enum_cap() if cap is None else cap
    size = gamma_size(group_order, shape)
    if size > cap:
        raise BoundExceeded(f"|gamma| = {size} exceeds enumeration cap {cap}")


def _chunks(group_order: int, shape: BlockShape, rows_per_chunk: int | None = None) -> Iterator[np.ndarray]:
    """Stream gamma(m, G) as 2-d arrays of flat maps, in decreasing lexicographic order.

    Block k's compositions are tabulated once; a chunk is a contiguous range of
    the mixed-radix odometer over those tables.
    """
    dtype = np.min_scalar_type(max(shape.blocks))
    tables = [np.array(list(_compositions_desc(m, group_order)), dtype=dtype) for m in shape.blocks]
    sizes = [len(t) for t in tables]
    total = math.prod(sizes)
    width = shape.s * group_order
    step = rows_per_chunk or max(1, _CHUNK_CELLS // width)
    for lo in range(0, total, step):
        idx = np.unravel_index(np.arange(lo, min(total, lo + step)), sizes)
        yield np.concatenate([t[i] for t, i in zip(tables, idx)], axis=1)


def _flat_stream(group_order: int, shape: BlockShape) -> Iterator[tuple[int, ...]]:
    for chunk in _chunks(group_order, shape):
        for row in chunk.tolist():
            yield tuple(row)


def enumerate_gamma(g: GroupSpec, shape, cap: int | None = None) -> Iterator[WeightMap]:
    """Yield every map in gamma(m, G) once, in decreasing lexicographic order of the flat tuple."""
    shape = as_shape(shape)
    _check_cap(g.order, shape, cap)
    for flat in _flat_stream(g.order, shape):
        yield WeightMap.from_flat(shape, flat)


def _element_index(g: GroupSpec, h) -> int:
    if isinstance(g, AbelianGroupType):
        h = tuple(h)
        if len(h) != g.rank or any(not 0 <= a < m for a, m in zip(h, g.moduli)):
            raise DomainError(f"{h} is not an element of {g}")
        return g.index(h)
    if not 0 <= h < g.order:
        raise DomainError(f"{h} is not an element index of this group")
    return h


def _translations(g: GroupSpec, s: int) -> list[np.ndarray]:
    """For each element index h, the column permutation taking flat(a) to flat(a.h)."""
    table = multiplication_table(g)
    q = len(table)
    return [np.array([i * q + table[x][h] for i in range(s) for x in range(q)], dtype=np.intp)
            for h in range(q)]


def _lex_less(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Row-wise strict lexicographic A < B."""
    diff = A != B
    first = diff.argmax(axis=1)
    rows = np.arange(len(A))
    return diff.any(axis=1) & (A[rows, first] < B[rows, first])


def _orbit_minima(chunk: np.ndarray, moves: list[np.ndarray]) -> np.ndarray:
    """Lexicographically least translate of every row."""
    best = chunk.copy()
    for perm in moves:
        img = chunk[:, perm]
        mask = _lex_less(img, best)
        best[mask] = img[mask]
    return best


def act(g: GroupSpec, a: WeightMap, h) -> WeightMap:
    """Translate ``a`` by the group element ``h``: (a.h)(i, x) = a(i, x h)."""
    table = multiplication_table(g)
    hi = _element_index(g, h)
    q = g.order
    return WeightMap(a.shape, tuple(tuple(row[table[x][hi]] for x in range(q)) for row in a.values))


def count_orbits(g: GroupSpec, shape, method: str = "partition", cap: int | None = None) -> int:
    """Number of orbits of G on gamma(m, G), by explicit partition or by Burnside averaging.

    ``partition`` maps every point to the least element of its orbit and counts
    the distinct minima; ``burnside`` averages enumerated fixed-point counts.
    """
    shape = as_shape(shape)
    _check_cap(g.order, shape, cap)
    if method == "partition":
        moves = _translations(g, shape.s)
        seen: set[bytes] = set()
        for chunk in _chunks(g.order, shape):
            # every minimum is itself a point of gamma and is its own minimum,
            # so the minima seen in this chunk are exactly its self-minimal rows
            minima = _orbit_minima(chunk, moves)
            reps = chunk[(minima == chunk).all(axis=1)]
            seen.update(row.tobytes() for row in reps)
        return len(seen)
    if method == "burnside":
        total = sum(fixed_point_counts(g, shape, cap=cap))
        value, rem = divmod(total, g.order)
        if rem:
            raise IntegralityError(f"fixed-point total {total} not divisible by {g.order}")
        return value
    raise DomainError(f"unknown method {method!r}; use 'partition' or 'burnside'")


def fixed_point_counts(g: GroupSpec, shape, cap: int | None = None) -> list[int]:
    """|Fix(h)| for every element index h, by direct enumeration."""
    shape = as_shape(shape)
    _check_cap(g.order, shape, cap)
    moves = _translations(g, shape.s)
    counts = [0] * g.order
    for chunk in _chunks(g.order, shape):
        for h, perm in enumerate(moves):
            counts[h] += int((chunk[:, perm] == chunk).all(axis=1).sum())
    return counts


def orbit_representatives(g: GroupSpec, shape, cap: int | None = None) -> list[tuple[WeightMap, int]]:
    """Lexicographically least map of each orbit with the orbit size, sorted by representative."""
    shape = as_shape(shape)
    _check_cap(g.order, shape, cap)
    moves = _translations(g, shape.s)
    orbits: dict[tuple, int] = {}
    for chunk in _chunks(g.order, shape):
        minima = _orbit_minima(chunk, moves)
        is_rep = (minima == chunk).all(axis=1)
        for i in np.flatnonzero(is_rep):
            row = chunk[i]
            size = len({row[perm].tobytes() for perm in moves})
            orbits[tuple(row.tolist())] = size
    return [(WeightMap.from_flat(shape, rep), orbits[rep]) for rep in sorted(orbits)]


def list_orbit_representatives(g: GroupSpec, shape, cap: int | None = None) -> list[WeightMap]:
    return [rep for rep, _ in orbit_representatives(g, shape, cap)]
