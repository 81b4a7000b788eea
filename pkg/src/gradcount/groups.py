"""Finite groups: abelian groups by primary decomposition, arbitrary groups by Cayley table.

Abelian elements are mixed-radix tuples over the cyclic factors, laid out prime
by prime (ascending) and, within a prime, by part size (descending).  Sorting
those tuples lexicographically is the same as sorting by radix value, which
gives the canonical element order used everywhere else in the package.
"""
from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from itertools import permutations, product
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence, Union

import numpy as np
from sympy import divisors, factorint, isprime
from sympy.utilities.iterables import partitions

from .errors import BoundExceeded, CayleyTableError, DomainError, GroupParseError

Element = tuple[int, ...]

DEFAULT_CAYLEY_CAP = 512
DEFAULT_SUBGROUP_BOUND = 256


def _lcm(values: Iterable[int]) -> int:
    return reduce(math.lcm, values, 1)


# ---------------------------------------------------------------------------
# Abelian groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroupType:
    """Isomorphism type of a finite abelian group as (prime, partition) pairs.

    ``components`` is normalized on construction: sorted by prime, partitions
    sorted non-increasing, empty partitions dropped.  The empty tuple is the
    trivial group.
    """

    components: tuple[tuple[int, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        comps = []
        seen = set()
        for p, lam in self.components:
            p = int(p)
            if not isprime(p):
                raise DomainError(f"{p} is not prime")
            if p in seen:
                raise DomainError(f"prime {p} listed twice")
            seen.add(p)
            parts = tuple(sorted((int(u) for u in lam), reverse=True))
            if any(u <= 0 for u in parts):
                raise DomainError(f"partition parts must be positive, got {parts}")
            if parts:
                comps.append((p, parts))
        object.__setattr__(self, "components", tuple(sorted(comps)))

    @classmethod
    def cyclic(cls, n: int) -> AbelianGroupType:
        return cls.from_cyclic_factors([n])

    @classmethod
    def from_cyclic_factors(cls, orders: Iterable[int]) -> AbelianGroupType:
        """Type of Z_{n1} x Z_{n2} x ... for arbitrary positive n_i."""
        parts: dict[int, list[int]] = {}
        for n in orders:
            n = int(n)
            if n < 1:
                raise DomainError(f"cyclic factor order must be >= 1, got {n}")
            for p, e in factorint(n).items():
                parts.setdefault(p, []).append(e)
        return cls(tuple((p, tuple(lam)) for p, lam in parts.items()))

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.components)

    def partition(self, p: int) -> tuple[int, ...]:
        for q, lam in self.components:
            if q == p:
                return lam
        return ()

    @cached_property
    def order(self) -> int:
        return math.prod(p ** sum(lam) for p, lam in self.components)

    @cached_property
    def exponent(self) -> int:
        return math.prod(p ** lam[0] for p, lam in self.components)

    @cached_property
    def moduli(self) -> tuple[int, ...]:
        """Orders of the prime-power cyclic factors, in coordinate order."""
        return tuple(p ** u for p, lam in self.components for u in lam)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def prime_slices(self) -> list[tuple[int, slice]]:
        out, start = [], 0
        for p, lam in self.components:
            out.append((p, slice(start, start + len(lam))))
            start += len(lam)
        return out

    def invariant_factors(self) -> list[int]:
        """Invariant factors, largest first (each divisible by the next)."""
        width = max((len(lam) for _, lam in self.components), default=0)
        return [
            math.prod(p ** lam[i] for p, lam in self.components if i < len(lam))
            for i in range(width)
        ]

    def __str__(self) -> str:
        factors = self.invariant_factors() or [1]
        return "x".join(f"Z{d}" for d in factors)

    def is_cyclic(self) -> bool:
        return all(len(lam) == 1 for _, lam in self.components)

    def is_square_type(self) -> bool:
        """True iff the group is H x H, i.e. every part has even multiplicity."""
        return all(c % 2 == 0 for _, lam in self.components for c in Counter(lam).values())

    # element arithmetic on mixed-radix tuples

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def elements(self) -> Iterator[Element]:
        return product(*(range(m) for m in self.moduli))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def neg(self, x: Element) -> Element:
        return tuple(-a % m for a, m in zip(x, self.moduli))

    def scale(self, k: int, x: Element) -> Element:
        return tuple(k * a % m for a, m in zip(x, self.moduli))

    def element_order(self, x: Element) -> int:
        return _lcm(m // math.gcd(a, m) for a, m in zip(x, self.moduli))

    def index(self, x: Element) -> int:
        """Radix value of ``x`` (its position in the canonical element order)."""
        i = 0
        for a, m in zip(x, self.moduli):
            i = i * m + a
        return i


def make_abelian(spec: str) -> AbelianGroupType:
    """Parse ``Z{n}(xZ{n})*`` (case-insensitive, whitespace ignored)."""
    s = re.sub(r"\s+", "", spec).lower()
    if not re.fullmatch(r"z\d+(?:xz\d+)*", s):
        raise GroupParseError(f"malformed group spec {spec!r}; expected e.g. 'Z4xZ2'")
    orders = [int(tok) for tok in s[1:].split("xz")]
    if 0 in orders:
        raise GroupParseError(f"Z0 is not a finite group in {spec!r}")
    return AbelianGroupType.from_cyclic_factors(orders)


def abelian_groups_of_order(n: int) -> list[AbelianGroupType]:
    """All abelian group types of order ``n``, in a fixed deterministic order."""
    per_prime = []
    for p, a in sorted(factorint(n).items()):
        lams = []
        for part in partitions(a):
            lams.append(tuple(sorted((u for u, c in part.items() for _ in range(c)), reverse=True)))
        per_prime.append([(p, lam) for lam in sorted(lams, reverse=True)])
    return [AbelianGroupType(tuple(choice)) for choice in product(*per_prime)]


def all_abelian_groups(max_order: int) -> list[AbelianGroupType]:
    return [g for n in range(1, max_order + 1) for g in abelian_groups_of_order(n)]


# ---------------------------------------------------------------------------
# Cayley tables
# ---------------------------------------------------------------------------

def _verify_cayley(table: np.ndarray, max_order: int) -> int:
    """Check that ``table`` is a group multiplication table; return the identity."""
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise CayleyTableError(f"table must be a non-empty square array, got shape {table.shape}")
    n = table.shape[0]
    if n > max_order:
        raise BoundExceeded(f"Cayley table of order {n} exceeds cap {max_order}")
    if table.min() < 0 or table.max() >= n:
        raise CayleyTableError("table entries must be element indices in [0, n)")
    full = np.arange(n)
    if not all((np.sort(row) == full).all() for row in table):
        raise CayleyTableError("table is not a Latin square (a row repeats an element)")
    if not all((np.sort(col) == full).all() for col in table.T):
        raise CayleyTableError("table is not a Latin square (a column repeats an element)")
    ids = [e for e in range(n) if (table[e] == full).all() and (table[:, e] == full).all()]
    if not ids:
        raise CayleyTableError("no two-sided identity element")
    for a in range(n):
        # (a*b)*c vs a*(b*c) for all b, c at once
        if not (table[table[a]] == table[a][table]).all():
            raise CayleyTableError(f"associativity fails for left factor {a}")
    return ids[0]


@dataclass(frozen=True, eq=False)
class CayleyGroup:
    """A finite group given by its full multiplication table (row i, column j = i*j).

    The table is verified on construction: Latin square, two-sided identity,
    associativity.  Inverses follow from the Latin property.
    """

    table: tuple[tuple[int, ...], ...]
    name: str = ""
    max_order: int = DEFAULT_CAYLEY_CAP

    def __post_init__(self):
        arr = np.asarray(self.table, dtype=np.int64)
        identity = _verify_cayley(arr, self.max_order)
        object.__setattr__(self, "table", tuple(tuple(int(v) for v in row) for row in arr))
        object.__setattr__(self, "identity", identity)

    @classmethod
    def from_json(cls, source: Union[str, Path, Mapping], max_order: int = DEFAULT_CAYLEY_CAP) -> CayleyGroup:
        """Load ``{"order": n, "table": [[...]]}`` from a path or an already-parsed dict."""
        if isinstance(source, Mapping):
            data, name = source, ""
        else:
            path = Path(source)
            try:
                data = json.loads(path.read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise CayleyTableError(f"cannot read Cayley table {path}: {exc}") from exc
            name = path.stem
        if not isinstance(data, Mapping) or "table" not in data:
            raise CayleyTableError("Cayley JSON must be an object with a 'table' key")
        table = data["table"]
        if "order" in data and data["order"] != len(table):
            raise CayleyTableError(f"declared order {data['order']} != table size {len(table)}")
        try:
            return cls(tuple(tuple(row) for row in table), name=name, max_order=max_order)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, CayleyTableError):
                raise
            raise CayleyTableError(f"malformed table: {exc}") from exc

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(row) for row in self.table]}

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(self.identity)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(a))

    @cached_property
    def profile(self) -> OrderProfile:
        return enumerate_order_profile(self)


GroupSpec = Union[AbelianGroupType, CayleyGroup]


def group_order(g: GroupSpec) -> int:
    return g.order


def is_abelian(g: GroupSpec) -> bool:
    return isinstance(g, AbelianGroupType) or g.is_abelian()


def multiplication_table(g: GroupSpec) -> tuple[tuple[int, ...], ...]:
    """Index-based multiplication table; abelian elements are indexed by radix value."""
    if isinstance(g, CayleyGroup):
        return g.table
    return _abelian_table(g)


@lru_cache(maxsize=128)
def _abelian_table(g: AbelianGroupType) -> tuple[tuple[int, ...], ...]:
    elems = list(g.elements())
    return tuple(tuple(g.index(g.add(x, y)) for y in elems) for x in elems)


def cayley_from_abelian(g: AbelianGroupType) -> CayleyGroup:
    return CayleyGroup(multiplication_table(g), name=str(g))


def _from_elements(elems: Sequence, mul, name: str) -> CayleyGroup:
    index = {x: i for i, x in enumerate(elems)}
    table = tuple(tuple(index[mul(x, y)] for y in elems) for x in elems)
    return CayleyGroup(table, name=name)


def symmetric_group(k: int) -> CayleyGroup:
    """S_k acting on {0..k-1}; product is composition (x*y)(i) = x(y(i))."""
    elems = sorted(permutations(range(k)))
    return _from_elements(elems, lambda x, y: tuple(x[i] for i in y), f"S{k}")


def dihedral_group(n: int) -> CayleyGroup:
    """Dihedral group of order 2n as pairs (rotation, reflection flag)."""
    elems = [(r, f) for f in (0, 1) for r in range(n)]

    def mul(x, y):
        r1, f1 = x
        r2, f2 = y
        return ((r1 + (-r2 if f1 else r2)) % n, f1 ^ f2)

    return _from_elements(elems, mul, f"D{2 * n}")


def heisenberg_group(p: int) -> CayleyGroup:
    """Upper unitriangular 3x3 matrices over Z_p, as (a, b, c) = [[1,a,c],[0,1,b],[0,0,1]]."""
    if not isprime(p):
        raise DomainError(f"{p} is not prime")
    elems = list(product(range(p), repeat=3))

    def mul(x, y):
        a1, b1, c1 = x
        a2, b2, c2 = y
        return ((a1 + a2) % p, (b1 + b2) % p, (c1 + c2 + a1 * b2) % p)

    return _from_elements(elems, mul, f"Heis{p}")


# ---------------------------------------------------------------------------
# Order profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderProfile:
    """The map t -> number of elements of order t, stored on its support."""

    order: int
    counts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if isinstance(self.counts, Mapping):
            items = self.counts.items()
        else:
            items = self.counts
        clean = tuple(sorted((int(t), int(c)) for t, c in items if c))
        object.__setattr__(self, "counts", clean)
        if self.order < 1:
            raise DomainError("order must be positive")
        for t, c in clean:
            if c < 0:
                raise DomainError(f"negative count {c} at t={t}")
            if t < 1 or self.order % t:
                raise DomainError(f"element order {t} does not divide group order {self.order}")
        if self[1] != 1:
            raise DomainError("exactly one element (the identity) has order 1")
        if sum(c for _, c in clean) != self.order:
            raise DomainError(f"counts sum to {sum(c for _, c in clean)}, not {self.order}")

    def __getitem__(self, t: int) -> int:
        return self.as_dict().get(t, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def items(self):
        return iter(self.counts)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(t for t, _ in self.counts)

    @property
    def exponent(self) -> int:
        return _lcm(self.support)

    def psi(self, t: int) -> int:
        """Number of elements whose order divides ``t``."""
        return sum(c for s, c in self.counts if t % s == 0)


def alpha_lambda(parts: Sequence[int], s: int) -> int:
    """Exponent of p in the number of elements of G_{p,lambda} of order dividing p^s."""
    alpha = sum(parts)
    if s < 0:
        raise ValueError("s must be nonnegative")
    if not parts or s > parts[0]:
        return alpha
    l = sum(1 for u in parts if u >= s)
    return alpha - sum(parts[:l]) + l * s


def _abelian_profile(g: AbelianGroupType) -> OrderProfile:
    counts = {}
    for t in divisors(g.exponent):
        s_of = factorint(t)
        val = 1
        for p, lam in g.components:
            s = s_of.get(p, 0)
            below = p ** alpha_lambda(lam, s - 1) if s > 0 else 0
            val *= p ** alpha_lambda(lam, s) - below
        counts[t] = val
    return OrderProfile(g.order, counts)


_abelian_profile_cached = lru_cache(maxsize=4096)(_abelian_profile)


def enumerate_order_profile(g: GroupSpec) -> OrderProfile:
    """Order profile by computing the order of every element."""
    return OrderProfile(g.order, Counter(g.element_order(x) for x in g.elements()))


def order_profile(g: Union[GroupSpec, OrderProfile]) -> OrderProfile:
    """Order profile: closed product formula for abelian types, enumeration for tables."""
    if isinstance(g, OrderProfile):
        return g
    if isinstance(g, AbelianGroupType):
        return _abelian_profile_cached(g)
    return g.profile


def exponent(g: Union[GroupSpec, OrderProfile]) -> int:
    return order_profile(g).exponent


# ---------------------------------------------------------------------------
# Profile inversion
# ---------------------------------------------------------------------------

def _exact_log(x: int, p: int) -> int | None:
    """k with p**k == x, or None."""
    if x < 1:
        return None
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k if x == 1 else None


@dataclass(frozen=True)
class NonAbelianCertificate:
    """Witness that no abelian group has a given order profile."""

    reason: str
    prime: int | None = None

    def __str__(self) -> str:
        return f"non-abelian certificate: {self.reason}"


def identify_from_profile(profile: OrderProfile) -> Union[AbelianGroupType, NonAbelianCertificate]:
    """Recover the abelian group with this order profile, or certify there is none.

    Per prime p with p^alpha || n, the cumulative counts psi(p^s) must be powers
    p^{e_s} with e_s = sum_i min(u_i, s).  The increments e_s - e_{s-1} count the
    parts of size >= s, so they must be non-increasing and reach total alpha.
    The candidate is finally checked against the whole profile, which catches
    profiles that are not multiplicative across primes.
    """
    n = profile.order
    comps = []
    for p, alpha in sorted(factorint(n).items()):
        e = [0]
        for s in range(1, alpha + 1):
            psi = profile.psi(p ** s)
            k = _exact_log(psi, p)
            if k is None:
                return NonAbelianCertificate(
                    f"{psi} elements have order dividing {p}^{s}, not a power of {p}", p)
            e.append(k)
        if e[-1] != alpha:
            return NonAbelianCertificate(
                f"{p}-elements number {p}^{e[-1]}, but the Sylow {p}-subgroup has order {p}^{alpha}", p)
        # u1: the largest s with psi(p^s) > psi(p^(s-1))
        u1 = max(s for s in range(1, alpha + 1) if e[s] > e[s - 1])
        at_least = [e[s] - e[s - 1] for s in range(1, u1 + 1)]
        if any(a < b for a, b in zip(at_least, at_least[1:])) or at_least[-1] <= 0:
            return NonAbelianCertificate(
                f"cumulative {p}-power counts are not those of any partition", p)
        parts = []
        for s in range(u1, 0, -1):
            exactly = at_least[s - 1] - (at_least[s] if s < u1 else 0)
            parts.extend([s] * exactly)
        comps.append((p, tuple(parts)))
    candidate = AbelianGroupType(tuple(comps))
    if order_profile(candidate) != profile:
        return NonAbelianCertificate(
            f"primary parts would form {candidate}, whose order profile differs")
    return candidate


# ---------------------------------------------------------------------------
# Subgroups and quotients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupHandle:
    ambient: GroupSpec
    elements: tuple
    iso_type: AbelianGroupType | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)


def _element_profile(g: AbelianGroupType, elems: Iterable[Element]) -> OrderProfile:
    elems = list(elems)
    return OrderProfile(len(elems), Counter(g.element_order(x) for x in elems))


def iso_type_of_subgroup(h: SubgroupHandle) -> AbelianGroupType:
    """Isomorphism type of an abelian subgroup, by inverting its order profile."""
    if not isinstance(h.ambient, AbelianGroupType):
        raise DomainError("iso_type_of_subgroup needs an abelian ambient group")
    result = identify_from_profile(_element_profile(h.ambient, h.elements))
    if isinstance(result, NonAbelianCertificate):
        raise DomainError(f"element set is not an abelian subgroup: {result.reason}")
    return result


def subgroup_from_elements(g: AbelianGroupType, elems: Iterable[Element]) -> SubgroupHandle:
    """Wrap an element set after checking closure; iso type is computed."""
    members = frozenset(tuple(x) for x in elems)
    if g.identity not in members:
        raise DomainError("subgroup must contain the identity")
    for x in members:
        if g.neg(x) not in members or any(g.add(x, y) not in members for y in members):
            raise DomainError("element set is not closed under the group law")
    h = SubgroupHandle(g, tuple(sorted(members)))
    return SubgroupHandle(g, h.elements, iso_type_of_subgroup(h))


def generated_subgroup(g: AbelianGroupType, gens: Iterable[Element]) -> SubgroupHandle:
    members = frozenset([g.identity])
    for x in gens:
        members = _adjoin(g.add, members, tuple(x))
    return subgroup_from_elements(g, members)


def _adjoin(add, H: frozenset, x: Element) -> frozenset:
    """<H, x> as the union of cosets H + kx."""
    K = set(H)
    y = x
    while y not in H:
        K.update(add(h, y) for h in H)
        y = add(y, x)
    return frozenset(K)


def _p_subgroups(moduli: tuple[int, ...]) -> list[frozenset]:
    """All subgroups of Z_{moduli[0]} x ..., by breadth-first adjunction of one element."""

    def add(x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, moduli))

    elems = list(product(*(range(m) for m in moduli)))
    trivial = frozenset([(0,) * len(moduli)])
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for H in frontier:
            for x in elems:
                if x in H:
                    continue
                K = _adjoin(add, H, x)
                if K not in seen:
                    seen.add(K)
                    nxt.append(K)
        frontier = nxt
    return list(seen)


@lru_cache(maxsize=64)
def _subgroups_cached(g: AbelianGroupType) -> tuple[SubgroupHandle, ...]:
    per_prime = []
    for p, lam in g.components:
        per_prime.append(_p_subgroups(tuple(p ** u for u in lam)))
    out = []
    for choice in product(*per_prime):
        elems = tuple(sorted(tuple(x for part in combo for x in part) for combo in product(*choice)))
        h = SubgroupHandle(g, elems)
        out.append(SubgroupHandle(g, elems, iso_type_of_subgroup(h)))
    out.sort(key=lambda h: (h.order, h.elements))
    return tuple(out)


def enumerate_subgroups(g: AbelianGroupType, bound: int = DEFAULT_SUBGROUP_BOUND) -> list[SubgroupHandle]:
    """Every subgroup of ``g`` exactly once, ordered by (order, sorted element tuple).

    A subgroup of an abelian group is the product of its intersections with the
    primary components, so the p-parts are enumerated separately and combined.
    """
    if not isinstance(g, AbelianGroupType):
        raise DomainError("subgroup enumeration is only supported for abelian groups")
    if g.order > bound:
        raise BoundExceeded(f"group order {g.order} exceeds subgroup enumeration bound {bound}")
    return list(_subgroups_cached(g))


def quotient_profile(g: AbelianGroupType, t: SubgroupHandle) -> tuple[AbelianGroupType, OrderProfile]:
    """Type and order profile of g / t, built from explicit cosets."""
    H = t.elements
    if t.ambient != g:
        raise DomainError("subgroup does not belong to this group")
    Hset = frozenset(H)
    reps = {}
    for x in g.elements():
        rep = min(g.add(x, h) for h in H)
        reps.setdefault(rep, None)
    counts: Counter = Counter()
    for x in reps:
        k, y = 1, x
        while y not in Hset:
            y = g.add(y, x)
            k += 1
        counts[k] += 1
    prof = OrderProfile(len(reps), counts)
    qtype = identify_from_profile(prof)
    if isinstance(qtype, NonAbelianCertificate):  # pragma: no cover - quotients of abelian groups are abelian
        raise DomainError(f"quotient classification failed: {qtype.reason}")
    return qtype, prof
