"""All G-gradings (not only elementary ones) for finite abelian G.

Over an algebraically closed field of characteristic zero every grading on
UT(m) is an elementary grading tensored with a division grading, giving

    N(G, m) = sum_{k | all m_i} sum_{T in T(G, k)} D(T, k) * E(G/T, m/k).

E(G/T, .) only needs the quotient's order profile.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import divisors

from .division import count_nondegenerate_alternating, square_type_subgroups
from .elementary import as_shape, asymptotic_polynomial, count_elementary
from .errors import DomainError
from .groups import DEFAULT_SUBGROUP_BOUND, AbelianGroupType, quotient_profile


@dataclass(frozen=True)
class FullCountTerm:
    k: int
    subgroup_type: AbelianGroupType
    quotient_type: AbelianGroupType
    division_count: int
    elementary_count: int

    @property
    def value(self) -> int:
        return self.division_count * self.elementary_count


def full_count_terms(g: AbelianGroupType, shape, bound: int = DEFAULT_SUBGROUP_BOUND) -> list[FullCountTerm]:
    """The nonzero-support (k, T) terms of the N(G, m) sum, k ascending."""
    if not isinstance(g, AbelianGroupType):
        raise DomainError("N(G, m) is only defined here for abelian G")
    shape = as_shape(shape)
    terms = []
    for k in divisors(shape.gcd()):
        if g.order % (k * k):
            continue
        sub = shape.divided(k)
        for t in square_type_subgroups(g, k, bound):
            qtype, qprof = quotient_profile(g, t)
            terms.append(FullCountTerm(
                k, t.iso_type, qtype,
                count_nondegenerate_alternating(t.iso_type),
                count_elementary(qprof, sub),
            ))
    return terms


def count_all(g: AbelianGroupType, shape, bound: int = DEFAULT_SUBGROUP_BOUND) -> int:
    """N(G, m): isomorphism classes of all G-gradings on UT(m)."""
    return sum(term.value for term in full_count_terms(g, shape, bound))


def count_all_matrix(g: AbelianGroupType, m: int, bound: int = DEFAULT_SUBGROUP_BOUND) -> int:
    return count_all(g, (m,), bound)


@dataclass(frozen=True)
class SandwichReport:
    group: AbelianGroupType
    m: int
    elementary: int
    full: int
    correction: int
    upper_bound: Fraction

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.full, self.elementary)

    @property
    def ok(self) -> bool:
        return (self.elementary <= self.full <= self.upper_bound
                and self.full - self.elementary == self.correction)


def sandwich_check(g: AbelianGroupType, m: int, bound: int = DEFAULT_SUBGROUP_BOUND) -> SandwichReport:
    """E <= N <= E + sum_{k>1} D(T,k) p^{G/T}_{Exp(G/T)}(m/k), with N - E the k > 1 partial sum."""
    terms = full_count_terms(g, (m,), bound)
    e = count_elementary(g, (m,))
    n = sum(t.value for t in terms)
    correction = sum(t.value for t in terms if t.k > 1)
    upper = Fraction(e)
    for k in divisors(m)[1:]:
        if g.order % (k * k):
            continue
        for t in square_type_subgroups(g, k, bound):
            qtype, qprof = quotient_profile(g, t)
            poly = asymptotic_polynomial(qprof, qprof.exponent)
            upper += count_nondegenerate_alternating(t.iso_type) * poly(m // k)
    return SandwichReport(g, m, e, n, correction, upper)
