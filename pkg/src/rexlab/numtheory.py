"""Prime search, Bose-Chowla Sidon sets, their quotients, and sums of prime powers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np
from sympy import isprime

from .algebra import FiniteField, gf

__all__ = [
    "DifferenceSet",
    "PrimePowerDecomposition",
    "primes_up_to",
    "is_prime",
    "prime_in_interval",
    "bose_chowla",
    "quotient_set",
    "prime_power_decompose",
]


def is_prime(n: int) -> bool:
    return bool(isprime(n))


@lru_cache(maxsize=8)
def _sieve(limit: int) -> tuple[int, ...]:
    if limit < 2:
        return ()
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if flags[i]:
            flags[i * i :: 2 * i] = False
    return tuple(int(x) for x in np.flatnonzero(flags))


def primes_up_to(limit: int) -> list[int]:
    if limit > 10**8:
        raise ValueError("limit above 10^8")
    return list(_sieve(int(limit)))


def prime_in_interval(lo: int, hi: int, residue: Optional[tuple[int, int]] = None) -> Optional[int]:
    """Largest prime in [lo, hi], optionally restricted to p = r (mod mod)."""
    if lo > hi:
        return None
    r, mod = (0, 1) if residue is None else residue
    if mod < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(r, mod) != 1:
        raise ValueError(f"gcd({r}, {mod}) != 1")
    p = hi - ((hi - r) % mod)
    while p >= max(lo, 2):
        if isprime(p):
            return p
        p -= mod
    return None


@dataclass(frozen=True)
class DifferenceSet:
    """Residues mod ``modulus`` in which every nonzero difference occurs at most
    ``t_bound`` times as an ordered difference a - b.  ``t_bound == 1`` is Sidon."""

    elements: tuple[int, ...]
    modulus: int
    t_bound: int

    def __post_init__(self):
        els = tuple(int(a) for a in self.elements)
        object.__setattr__(self, "elements", els)
        if any(not 0 <= a < self.modulus for a in els):
            raise ValueError("elements must lie in [0, modulus)")
        if any(a >= b for a, b in zip(els, els[1:])):
            raise ValueError("elements must be strictly increasing")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a) -> bool:
        return a in self.elements

    def difference_counts(self) -> np.ndarray:
        """``counts[alpha]`` = #{(a, b): a - b = alpha (mod modulus)}."""
        a = np.array(self.elements, dtype=np.int64)
        diffs = (a[:, None] - a[None, :]) % self.modulus
        return np.bincount(diffs.ravel(), minlength=self.modulus)

    def max_representation(self) -> int:
        counts = self.difference_counts()
        return int(counts[1:].max()) if self.modulus > 1 else 0


def _certify(elements: Iterable[int], modulus: int, t: int) -> DifferenceSet:
    ds = DifferenceSet(tuple(sorted(elements)), modulus, t)
    worst = ds.max_representation()
    if worst > t:
        raise RuntimeError(f"difference bound {t} violated (found {worst}); field arithmetic is broken")
    return ds


def bose_chowla(p: int, F: Optional[FiniteField] = None) -> DifferenceSet:
    """{a in Z_{p^2-1} : g^a - g lies in GF(p)} for the generator g of GF(p^2)."""
    F = gf(p, 2) if F is None else F
    if F.q != p * p or F.p != p:
        raise ValueError(f"need the field of order {p}^2, got {F!r}")
    # g^a - g is in the prime subfield iff the X-coefficients agree
    x_coeff = F.digits[F.exp_table, 1]
    elements = np.flatnonzero(x_coeff == F.digits[F.generator.value, 1])
    if len(elements) != p:
        raise RuntimeError(f"Bose-Chowla set has {len(elements)} elements, expected {p}")
    return _certify(elements.tolist(), p * p - 1, 1)


def quotient_set(p: int, t: int, F: Optional[FiniteField] = None) -> DifferenceSet:
    """Reduce the Bose-Chowla set mod (p^2-1)/t; differences then repeat at most t times."""
    if t < 1 or (p - 1) % t:
        raise ValueError(f"t={t} does not divide p-1={p - 1}")
    base = bose_chowla(p, F)
    modulus = (p * p - 1) // t
    reduced = {a % modulus for a in base.elements}
    if len(reduced) != p:
        raise RuntimeError("reduction collapsed elements of the Sidon set")
    return _certify(reduced, modulus, t)


@dataclass(frozen=True)
class PrimePowerDecomposition:
    n: int
    s: int
    primes: tuple[int, ...]

    @property
    def spread(self) -> int:
        return self.primes[0] - self.primes[-1]

    @property
    def parts(self) -> int:
        return len(self.primes)

    def __post_init__(self):
        if sum(q**self.s for q in self.primes) != self.n:
            raise ValueError("prime powers do not sum to n")
        if list(self.primes) != sorted(self.primes, reverse=True):
            raise ValueError("primes must be non-increasing")


def _decompositions(n: int, s: int, parts: int, primes: list[int], first_only: bool):
    """Non-increasing prime lists of the given length whose s-th powers sum to n."""
    powers = [q**s for q in primes]  # descending
    smallest = powers[-1]
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def rec(start: int, remaining: int, k: int) -> bool:
        if k == 0:
            if remaining == 0:
                out.append(tuple(chosen))
                return first_only
            return False
        if remaining < k * smallest:
            return False
        for i in range(start, len(primes)):
            pw = powers[i]
            if pw * k < remaining:
                break  # remaining parts cannot be larger than this one
            if pw > remaining:
                continue
            chosen.append(primes[i])
            if rec(i, remaining - pw, k - 1):
                return True
            chosen.pop()
        return False

    rec(0, n, parts)
    return out


def prime_power_decompose(
    n: int,
    s: int,
    max_parts: int = 20,
    balance: bool = False,
    *,
    min_prime: int = 2,
    min_parts: int = 1,
) -> Optional[PrimePowerDecomposition]:
    """Write n as a sum of s-th powers of primes using the fewest parts.

    Without ``balance`` the lexicographically largest list is returned; with it,
    the one of smallest spread (ties to the lexicographically largest).
    """
    if s < 2:
        raise ValueError("s must be >= 2")
    if max_parts > 20:
        raise ValueError("max_parts is capped at 20")
    if n < 2**s:
        return None
    top = math.isqrt(n) if s == 2 else int(round(n ** (1.0 / s))) + 1
    primes = [q for q in primes_up_to(top) if q >= min_prime and q**s <= n][::-1]
    if not primes:
        return None
    for parts in range(max(1, min_parts), max_parts + 1):
        found = _decompositions(n, s, parts, primes, first_only=not balance)
        if found:
            # search order is lexicographically descending, so min() keeps the first on ties
            best = min(found, key=lambda d: d[0] - d[-1]) if balance else found[0]
            return PrimePowerDecomposition(n, s, best)
    return None
