"""Division gradings on M_k: square-type supports and nondegenerate alternating bicharacters.

Over an algebraically closed field of characteristic zero, division gradings
on M_k with support T correspond to the nondegenerate alternating
bicharacters on T, which can exist only for T of the form H x H with |H| = k.

A bicharacter is stored by exponents: with generators g_1..g_r of orders
d_1..d_r and E = Exp(T), beta(g_i, g_j) = zeta_E ** c[i][j].  Roots of unity
never become complex numbers; everything is integer arithmetic mod E.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .errors import BoundExceeded, DomainError
from .groups import (
    DEFAULT_SUBGROUP_BOUND,
    AbelianGroupType,
    Element,
    SubgroupHandle,
    enumerate_subgroups,
)

DEFAULT_BICHAR_ORDER_BOUND = 256
DEFAULT_BICHAR_COUNT_CAP = 2 ** 20


@dataclass(frozen=True)
class Bicharacter:
    """beta(g_i, g_j) = zeta_E^{c_ij} on generators of orders ``orders``."""

    group_type: AbelianGroupType
    orders: tuple[int, ...]
    exponents: tuple[tuple[int, ...], ...]

    @property
    def E(self) -> int:
        return self.group_type.exponent

    def value(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Exponent of zeta_E in beta(x, y), for x, y in generator coordinates."""
        r = len(self.orders)
        return sum(x[i] * y[j] * self.exponents[i][j] for i in range(r) for j in range(r)) % self.E

    def is_well_defined(self) -> bool:
        E = self.E
        return all(
            (d_i * c) % E == 0 and (d_j * c) % E == 0
            for d_i, row in zip(self.orders, self.exponents)
            for d_j, c in zip(self.orders, row)
        )

    def is_alternating(self) -> bool:
        E, r = self.E, len(self.orders)
        return all(self.exponents[i][i] % E == 0 for i in range(r)) and all(
            (self.exponents[i][j] + self.exponents[j][i]) % E == 0
            for i in range(r) for j in range(r)
        )

    def coordinates(self) -> Iterator[tuple[int, ...]]:
        return product(*(range(d) for d in self.orders))

    def is_nondegenerate(self) -> bool:
        """Every non-identity x pairs nontrivially with some y."""
        elems = list(self.coordinates())
        zero = elems[0]
        return all(
            any(self.value(x, y) for y in elems)
            for x in elems if x != zero
        )


def _basis_coordinates(t: AbelianGroupType, generators: Sequence[Element] | None):
    """Generator orders and the |T| x r coordinate matrix (rows in canonical element order)."""
    if generators is None:
        orders = t.moduli
        coords = list(product(*(range(d) for d in orders)))
        return orders, np.array(coords, dtype=np.int64).reshape(len(coords), len(orders))
    gens = [tuple(x) for x in generators]
    orders = tuple(t.element_order(x) for x in gens)
    if math.prod(orders) != t.order:
        raise DomainError("generator orders do not multiply to |T|; not a basis")
    by_element = {}
    for k in product(*(range(d) for d in orders)):
        x = t.identity
        for ki, gi in zip(k, gens):
            x = t.add(x, t.scale(ki, gi))
        if x in by_element:
            raise DomainError("generators are not independent; not a basis")
        by_element[x] = k
    coords = [by_element[x] for x in t.elements()]
    return orders, np.array(coords, dtype=np.int64).reshape(len(coords), len(orders))


def _exponent_matrices(orders: Sequence[int], E: int) -> Iterator[np.ndarray]:
    """All alternating, well-defined exponent matrices for generators of the given orders."""
    r = len(orders)
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    choices = []
    for i, j in pairs:
        g = math.gcd(orders[i], orders[j])
        choices.append([v * (E // g) for v in range(g)])
    for vals in product(*choices):
        c = np.zeros((r, r), dtype=np.int64)
        for (i, j), v in zip(pairs, vals):
            c[i, j] = v
            c[j, i] = (-v) % E
        yield c


def enumerate_alternating_bicharacters(t: AbelianGroupType) -> Iterator[Bicharacter]:
    """Every alternating bicharacter on ``t``, w.r.t. its standard cyclic generators."""
    orders = t.moduli
    for c in _exponent_matrices(orders, t.exponent):
        yield Bicharacter(t, orders, tuple(tuple(int(v) for v in row) for row in c))


def _count(t: AbelianGroupType, generators, max_order: int, max_bicharacters: int) -> int:
    if t.order > max_order:
        raise BoundExceeded(f"|T| = {t.order} exceeds bicharacter bound {max_order}")
    orders, K = _basis_coordinates(t, generators)
    E = t.exponent
    r = len(orders)
    total = math.prod(math.gcd(orders[i], orders[j]) for i in range(r) for j in range(i + 1, r))
    if total > max_bicharacters:
        raise BoundExceeded(f"{total} alternating bicharacters exceed cap {max_bicharacters}")
    nonzero = K.any(axis=1)
    count = 0
    for c in _exponent_matrices(orders, E):
        V = (K @ c @ K.T) % E  # full |T| x |T| table of beta exponents
        if V[nonzero].any(axis=1).all():
            count += 1
    return count


@lru_cache(maxsize=256)
def _count_cached(t: AbelianGroupType, max_order: int, max_bicharacters: int) -> int:
    return _count(t, None, max_order, max_bicharacters)


def count_nondegenerate_alternating(
    t: AbelianGroupType,
    generators: Sequence[Element] | None = None,
    max_order: int = DEFAULT_BICHAR_ORDER_BOUND,
    max_bicharacters: int = DEFAULT_BICHAR_COUNT_CAP,
) -> int:
    """Number of nondegenerate alternating bicharacters T x T -> F^x, by exhaustion.

    ``generators`` optionally supplies a different basis of ``t`` (elements in
    its mixed-radix encoding); the count must not depend on that choice.
    Non-square-type groups come out as 0 from the search itself.
    """
    if generators is None:
        return _count_cached(t, max_order, max_bicharacters)
    return _count(t, generators, max_order, max_bicharacters)


def square_type_subgroups(g: AbelianGroupType, k: int, bound: int = DEFAULT_SUBGROUP_BOUND) -> list[SubgroupHandle]:
    """T(G, k): subgroups of order k^2 isomorphic to some H x H."""
    if k < 1:
        raise DomainError("k must be positive")
    if g.order % (k * k):
        return []
    return [h for h in enumerate_subgroups(g, bound)
            if h.order == k * k and h.iso_type.is_square_type()]


def division_census(g: AbelianGroupType, k: int, bound: int = DEFAULT_SUBGROUP_BOUND) -> list[tuple[SubgroupHandle, int]]:
    """Each T in T(G, k) paired with D(T, k)."""
    return [(h, count_nondegenerate_alternating(h.iso_type)) for h in square_type_subgroups(g, k, bound)]
