"""Counting elementary gradings on upper block-triangular matrix algebras.

E(G, m) is the number of orbits of G acting by translation on the maps
a: blocks x G -> Z_{>=0} with row sums m_i.  Burnside's lemma collapses the
orbit count to a divisor sum over element orders, so E depends on G only
through |G| and its order profile.

All arithmetic is exact: binomials via ``math.comb``, polynomials over
``fractions.Fraction``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from sympy import divisors, isprime, multiplicity

from .errors import DomainError, IntegralityError
from .groups import GroupSpec, OrderProfile, order_profile

ProfileLike = Union[GroupSpec, OrderProfile]


@dataclass(frozen=True)
class BlockShape:
    """Diagonal block sizes (m_1, ..., m_s) of UT(m)."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if not blocks:
            raise DomainError("a block shape needs at least one block")
        if any(b < 1 for b in blocks):
            raise DomainError(f"block sizes must be positive, got {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return sum(self.blocks)

    @property
    def s(self) -> int:
        return len(self.blocks)

    def gcd(self) -> int:
        return math.gcd(*self.blocks)

    def divided(self, k: int) -> BlockShape:
        if any(b % k for b in self.blocks):
            raise DomainError(f"{k} does not divide every block of {self.blocks}")
        return BlockShape(tuple(b // k for b in self.blocks))

    def __str__(self) -> str:
        return ",".join(map(str, self.blocks))


def as_shape(shape: Union[BlockShape, int, Iterable[int]]) -> BlockShape:
    if isinstance(shape, BlockShape):
        return shape
    if isinstance(shape, int):
        return BlockShape((shape,))
    return BlockShape(tuple(shape))


def compositions(n: int) -> list[BlockShape]:
    """All block shapes with total size ``n``."""
    out = []

    def rec(rest, prefix):
        if rest == 0:
            out.append(BlockShape(tuple(prefix)))
            return
        for first in range(1, rest + 1):
            rec(rest - first, prefix + [first])

    rec(n, [])
    return out


def fixed_points(group_order: int, t: int, shape: BlockShape) -> int:
    """Number of maps fixed by a translation of order ``t``."""
    if any(m % t for m in shape.blocks):
        return 0
    k = group_order // t
    return math.prod(math.comb(m // t + k - 1, m // t) for m in shape.blocks)


def burnside_numerator(g: ProfileLike, shape) -> int:
    """Sum over h in G of |Fix(h)|, grouped by element order."""
    prof = order_profile(g)
    shape = as_shape(shape)
    d = math.gcd(shape.gcd(), prof.exponent)
    q = prof.order
    # t with no elements of that order contribute nothing
    return sum(fixed_points(q, t, shape) * prof[t] for t in divisors(d))


def count_elementary(g: ProfileLike, shape) -> int:
    """E(G, m): isomorphism classes of elementary G-gradings on UT(m)."""
    prof = order_profile(g)
    num = burnside_numerator(prof, shape)
    value, rem = divmod(num, prof.order)
    if rem:
        raise IntegralityError(f"Burnside sum {num} not divisible by |G| = {prof.order}")
    return value


def count_elementary_matrix(g: ProfileLike, m: int) -> int:
    """E(G, m) for the full matrix algebra M_m."""
    return count_elementary(g, BlockShape((m,)))


def count_upper_triangular(g: ProfileLike, n: int) -> int:
    """Gradings on UT_n, i.e. shape (1, ..., 1); equals |G|^(n-1)."""
    return count_elementary(g, BlockShape((1,) * n))


def _check_prime(p: int) -> None:
    if not isprime(p):
        raise DomainError(f"{p} is not prime")


def count_prime_exponent(p: int, n: int, m: int) -> int:
    """E(G, m) for any group of prime exponent p and order p^n (two-case closed form)."""
    _check_prime(p)
    if n < 1 or m < 1:
        raise DomainError("need n >= 1 and m >= 1")
    q = p ** n
    num = math.comb(m + q - 1, m)
    if m % p == 0:
        num += math.comb(m // p + p ** (n - 1) - 1, m // p) * (q - 1)
    value, rem = divmod(num, q)
    if rem:
        raise IntegralityError(f"prime-exponent closed form not integral at p={p}, n={n}, m={m}")
    return value


def count_cyclic_prime_power(p: int, n: int, m: int) -> int:
    """E(Z_{p^n}, m) via the explicit sum over the p-adic valuation of m.

    With m = p^k m', the sum runs over i = 1..min(k, n): only element orders
    p^i dividing both m and p^n contribute.
    """
    _check_prime(p)
    if n < 1 or m < 1:
        raise DomainError("need n >= 1 and m >= 1")
    k = multiplicity(p, m)
    mp = m // p ** k
    num = math.comb(m + p ** n - 1, m)
    for i in range(1, min(k, n) + 1):
        top = p ** (k - i) * mp
        num += math.comb(top + p ** (n - i) - 1, top) * (p ** i - p ** (i - 1))
    value, rem = divmod(num, p ** n)
    if rem:
        raise IntegralityError(f"cyclic closed form not integral at p={p}, n={n}, m={m}")
    return value


# ---------------------------------------------------------------------------
# Polynomials p_d^G
# ---------------------------------------------------------------------------

def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def f_poly(group_order: int, t: int) -> list[Fraction]:
    """Coefficients (ascending) of prod_{j=1}^{k-1} (x/t + j) / (k-1)!, k = |G|/t.

    At x = m with t | m this is C(m/t + k - 1, m/t).
    """
    k = group_order // t
    coeffs = [Fraction(1)]
    for j in range(1, k):
        coeffs = _poly_mul(coeffs, [Fraction(j), Fraction(1, t)])
    scale = Fraction(1, math.factorial(k - 1))
    return [c * scale for c in coeffs]


@dataclass(frozen=True)
class AsymptoticPolynomial:
    """p_d^G as exact rational coefficients, constant term first."""

    coefficients: tuple[Fraction, ...]
    divisor: int

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1]

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def asymptotic_polynomial(g: ProfileLike, d: int) -> AsymptoticPolynomial:
    """p_d^G(x) = (1/|G|) sum_{t | d} f_t(x) phi_G(t); agrees with E(G, m) when gcd(Exp(G), m) = d."""
    prof = order_profile(g)
    if d < 1 or prof.exponent % d:
        raise DomainError(f"{d} does not divide the exponent {prof.exponent}")
    q = prof.order
    total = [Fraction(0)] * q
    for t in divisors(d):
        c = prof[t]
        if not c:
            continue
        for i, a in enumerate(f_poly(q, t)):
            total[i] += a * c
    return AsymptoticPolynomial(tuple(a / q for a in total), d)


def asymptotic_ratio(count: int, group_order: int, m: int) -> Fraction:
    """count * |G|! / m^(|G|-1), exactly."""
    return Fraction(count * math.factorial(group_order), m ** (group_order - 1))
