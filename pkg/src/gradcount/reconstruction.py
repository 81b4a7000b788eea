"""Inverse problems: from E(G, 1..M) back to the order profile, and from the profile to G.

Solving the matrix-algebra count at m = t' for the one unknown phi(t') works
because its coefficient |G|/t' is nonzero, and every other term involves only
orders t < t' that were recovered earlier.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from .elementary import count_elementary_matrix
from .errors import DomainError, InconsistentSequenceError, InsufficientTermsError
from .groups import (
    AbelianGroupType,
    GroupSpec,
    NonAbelianCertificate,
    OrderProfile,
    heisenberg_group,
    identify_from_profile,
    is_abelian,
    order_profile,
)

__all__ = [
    "AmbiguousOrderError",
    "CountSequence",
    "forward_sequence",
    "profile_from_sequence",
    "identify_from_profile",
    "identify_sequence",
    "NonAbelianCertificate",
    "round_trip",
    "collision_demo",
    "first_separating_m",
]

DEFAULT_ORDER_SEARCH_BOUND = 256


class AmbiguousOrderError(InconsistentSequenceError):
    """More than one group order is consistent with a finite prefix."""


@dataclass(frozen=True)
class CountSequence:
    """E(G, m) for m = 1..M, optionally with the group order."""

    terms: tuple[tuple[int, int], ...]
    claimed_order: int | None = None

    def __post_init__(self):
        terms = tuple((int(m), int(c)) for m, c in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise InsufficientTermsError("empty count sequence")
        for i, (m, c) in enumerate(terms, start=1):
            if m != i:
                raise InconsistentSequenceError(f"terms must be consecutive from m=1; got m={m} at position {i}")
            if c < 1:
                raise InconsistentSequenceError(f"count at m={m} is {c}; the trivial grading always exists")
        if terms[0][1] != 1:
            raise InconsistentSequenceError(f"E(G, 1) must be 1, got {terms[0][1]}")
        if self.claimed_order is not None and self.claimed_order < 1:
            raise InconsistentSequenceError("claimed order must be positive")

    @property
    def horizon(self) -> int:
        return len(self.terms)

    def counts(self) -> list[int]:
        return [c for _, c in self.terms]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "count"])
        w.writerows(self.terms)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, claimed_order: int | None = None) -> CountSequence:
        rows = list(csv.reader(io.StringIO(text)))
        rows = [r for r in rows if any(cell.strip() for cell in r)]
        if not rows or [c.strip().lower() for c in rows[0]] != ["m", "count"]:
            raise InconsistentSequenceError("sequence CSV must start with the header 'm,count'")
        try:
            terms = tuple((int(r[0]), int(r[1])) for r in rows[1:])
        except (ValueError, IndexError) as exc:
            raise InconsistentSequenceError(f"bad sequence row: {exc}") from exc
        return cls(terms, claimed_order)

    @classmethod
    def read(cls, path: Union[str, Path], claimed_order: int | None = None) -> CountSequence:
        return cls.from_csv(Path(path).read_text(), claimed_order)


def forward_sequence(g: Union[GroupSpec, OrderProfile], horizon: int) -> CountSequence:
    prof = order_profile(g)
    return CountSequence(tuple((m, count_elementary_matrix(prof, m)) for m in range(1, horizon + 1)), prof.order)


def _solve_for_order(n: int, counts: Sequence[int]) -> OrderProfile:
    M = len(counts)
    if M < n:
        raise InsufficientTermsError(f"need E(G, m) for m = 1..{n}, only {M} terms given")
    phi = {1: 1}
    for tp in range(2, M + 1):
        known = sum(math.comb(tp // t + n // t - 1, tp // t) * c
                    for t, c in phi.items() if tp % t == 0)
        target = n * counts[tp - 1]
        if n % tp == 0:
            coef = n // tp
            rest = target - known
            if rest < 0 or rest % coef:
                raise InconsistentSequenceError(
                    f"no nonnegative integer count of elements of order {tp} fits E(G, {tp}) = {counts[tp - 1]}")
            if rest:
                phi[tp] = rest // coef
        elif target != known:
            raise InconsistentSequenceError(f"E(G, {tp}) = {counts[tp - 1]} contradicts earlier terms")
    if sum(phi.values()) != n:
        raise InconsistentSequenceError(f"recovered counts sum to {sum(phi.values())}, not {n}")
    try:
        return OrderProfile(n, phi)
    except DomainError as exc:
        raise InconsistentSequenceError(str(exc)) from exc


def profile_from_sequence(seq: CountSequence, max_order: int = DEFAULT_ORDER_SEARCH_BOUND) -> OrderProfile:
    """Recover phi_G from E(G, 1..M).

    Without ``claimed_order`` every n up to min(M, max_order) is tried and the
    unique consistent one is used; several survivors raise AmbiguousOrderError.
    """
    counts = seq.counts()
    if seq.claimed_order is not None:
        return _solve_for_order(seq.claimed_order, counts)
    found = []
    for n in range(1, min(seq.horizon, max_order) + 1):
        try:
            found.append(_solve_for_order(n, counts))
        except InconsistentSequenceError:
            continue
    if not found:
        raise InconsistentSequenceError(
            f"no group order up to {min(seq.horizon, max_order)} is consistent with the sequence")
    if len(found) > 1:
        raise AmbiguousOrderError(
            f"orders {[p.order for p in found]} all fit the first {seq.horizon} terms; pass the order")
    return found[0]


def identify_sequence(seq: CountSequence, max_order: int = DEFAULT_ORDER_SEARCH_BOUND
                      ) -> Union[AbelianGroupType, NonAbelianCertificate]:
    return identify_from_profile(profile_from_sequence(seq, max_order))


@dataclass(frozen=True)
class RoundTripVerdict:
    group: AbelianGroupType
    horizon: int
    recovered: Union[AbelianGroupType, NonAbelianCertificate]
    profile_matches: bool

    @property
    def ok(self) -> bool:
        return self.profile_matches and self.recovered == self.group


def round_trip(g: AbelianGroupType, horizon: int | None = None, infer_order: bool = False) -> RoundTripVerdict:
    """E-sequence of ``g`` -> order profile -> abelian type, compared with ``g``."""
    M = g.order if horizon is None else horizon
    if M < g.order:
        raise DomainError(f"horizon {M} is shorter than |G| = {g.order}")
    seq = forward_sequence(g, M)
    if infer_order:
        seq = CountSequence(seq.terms)
    prof = profile_from_sequence(seq)
    return RoundTripVerdict(g, M, identify_from_profile(prof), prof == order_profile(g))


def first_separating_m(g: GroupSpec, h: GroupSpec, horizon: int) -> int | None:
    """Smallest m <= horizon with E(g, m) != E(h, m), or None."""
    for m in range(1, horizon + 1):
        if count_elementary_matrix(g, m) != count_elementary_matrix(h, m):
            return m
    return None


@dataclass(frozen=True)
class CollisionVerdict:
    p: int
    horizon: int
    nonabelian_profile: OrderProfile
    abelian_profile: OrderProfile
    sequences_equal: bool
    nonabelian_is_abelian: bool

    @property
    def ok(self) -> bool:
        return self.sequences_equal and not self.nonabelian_is_abelian


def collision_demo(p: int, horizon: int = 30) -> CollisionVerdict:
    """Heisenberg group mod p versus Z_p^3: equal E-sequences, different groups."""
    if p == 2:
        raise DomainError("every group of exponent 2 is abelian; use an odd prime")
    if p not in (3, 5):
        raise DomainError(f"collision demo supports p in {{3, 5}}, got {p}")
    heis = heisenberg_group(p)
    if heis.profile.exponent != p:
        raise DomainError(f"Heisenberg table has exponent {heis.profile.exponent}, expected {p}")
    elem = AbelianGroupType(((p, (1, 1, 1)),))
    same = forward_sequence(heis, horizon).terms == forward_sequence(elem, horizon).terms
    return CollisionVerdict(p, horizon, heis.profile, order_profile(elem), same, is_abelian(heis))
