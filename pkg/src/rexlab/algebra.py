"""Finite fields GF(p^m) in a polynomial basis, with norms, traces and characters.

Elements are stored as integers ``v = c_0 + c_1 p + ... + c_{m-1} p^{m-1}``
where ``c_i`` is the coefficient of ``X^i``.  Integer order on ``v`` is the
coefficient-lexicographic order (highest coefficient compared first), which
is the order used for every deterministic choice in this package.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence, Union

import numpy as np
from sympy import isprime, primefactors

MAX_ORDER = 10**6

__all__ = [
    "FiniteField",
    "FieldElement",
    "gf",
    "norm",
    "norm_values",
    "trace",
    "quad_char",
    "additive_char",
    "subgroup_char_sum",
    "gauss_sum",
]


# --- polynomials over GF(p): coefficient lists, lowest degree first ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * fc) % p
        _trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_powmod(base: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: ``f`` has no factor of degree k <= deg f / 2."""
    m = len(f) - 1
    if m < 1:
        return False
    x = [0, 1]
    power = x
    for _ in range(m // 2):
        power = _poly_powmod(power, p, f, p)
        g = _poly_gcd(f, _poly_sub(power, x, p), p)
        if len(g) > 1:
            return False
    return True


def _least_irreducible(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    for idx in range(p**m):
        low = [(idx // p**i) % p for i in range(m)]
        if low[0] == 0:
            continue  # divisible by X
        f = low + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise RuntimeError(f"no irreducible polynomial of degree {m} over GF({p})")


# --- the field --------------------------------------------------------------

class FiniteField:
    """GF(p^m) with a fixed irreducible modulus and a fixed primitive element.

    Use :func:`gf` rather than constructing directly; it caches instances.
    """

    def __init__(self, p: int, m: int = 1):
        if not isprime(p):
            raise ValueError(f"p={p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if p**m > MAX_ORDER:
            raise ValueError(f"field order {p}^{m} exceeds {MAX_ORDER}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus_poly = _least_irreducible(p, m)
        self._weights = np.array([p**i for i in range(m)], dtype=np.int64)
        self._gen = self._find_generator()
        self.generator = FieldElement(self, self._gen)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self) -> int:
        return hash((self.p, self.m))

    # integer <-> coefficient conversions
    def coeffs(self, v: int) -> tuple[int, ...]:
        return tuple((v // self.p**i) % self.p for i in range(self.m))

    def from_coeffs(self, coeffs: Iterable[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            raise ValueError(f"expected at most {self.m} coefficients")
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def __call__(self, x: Union[int, Sequence[int], "FieldElement"]) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field != self:
                raise ValueError("element belongs to another field")
            return x
        if isinstance(x, (int, np.integer)):
            if not 0 <= x < self.q:
                raise ValueError(f"{x} is not an element index of {self!r}")
            return FieldElement(self, int(x))
        return FieldElement(self, self.from_coeffs(x))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.q)]

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    # scalar arithmetic on integer representations
    def add(self, a: int, b: int) -> int:
        da, db = self.coeffs(a), self.coeffs(b)
        return self.from_coeffs(x + y for x, y in zip(da, db))

    def neg(self, a: int) -> int:
        return self.from_coeffs(-c for c in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul_poly(self, a: int, b: int) -> int:
        """Multiplication by polynomial reduction, independent of the log tables."""
        prod = _poly_mod(_poly_mul(_trim(list(self.coeffs(a))), _trim(list(self.coeffs(b))), self.p),
                         self.modulus_poly, self.p)
        return self.from_coeffs(prod)

    def pow_poly(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("use inv for negative exponents")
        return self.from_coeffs(_poly_powmod(_trim(list(self.coeffs(a))), e, self.modulus_poly, self.p))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp_table[(-int(self.log_table[a])) % (self.q - 1)])

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        factors = primefactors(self.q - 1)
        for g in range(2, self.q):
            if all(self.pow_poly(g, (self.q - 1) // r) != 1 for r in factors):
                return g
        raise RuntimeError("no generator found")  # impossible for a field

    # vectorised tables
    @cached_property
    def digits(self) -> np.ndarray:
        """``digits[v, i]`` is the coefficient of X^i in element ``v``."""
        v = np.arange(self.q, dtype=np.int64)
        out = np.empty((self.q, self.m), dtype=np.int64)
        for i in range(self.m):
            out[:, i] = (v // self.p**i) % self.p
        out.setflags(write=False)
        return out

    def from_digits(self, digits: np.ndarray) -> np.ndarray:
        return (np.asarray(digits) % self.p) @ self._weights

    def add_arrays(self, a, b) -> np.ndarray:
        return self.from_digits(self.digits[np.asarray(a)] + self.digits[np.asarray(b)])

    def neg_array(self, a) -> np.ndarray:
        return self.from_digits(-self.digits[np.asarray(a)])

    @cached_property
    def exp_table(self) -> np.ndarray:
        """``exp_table[k]`` is generator^k for 0 <= k < q-1."""
        n = self.q - 1
        # multiplication by a fixed element is GF(p)-linear; double a block of powers
        block = np.zeros((1, self.m), dtype=np.int64)
        block[0, 0] = 1
        step = self._gen
        while len(block) < n:
            images = np.array([self.coeffs(self.mul_poly(self.p**i, step)) for i in range(self.m)],
                              dtype=np.int64)
            block = np.vstack([block, (block @ images) % self.p])
            step = self.mul_poly(step, step)
        table = block[:n] @ self._weights
        if self.mul_poly(int(table[-1]), self._gen) != 1 or len(np.unique(table)) != n:
            raise RuntimeError("generator order check failed")
        table.setflags(write=False)
        return table

    @cached_property
    def log_table(self) -> np.ndarray:
        """Discrete log base the generator; entry 0 is -1 (undefined)."""
        table = np.full(self.q, -1, dtype=np.int64)
        table[self.exp_table] = np.arange(self.q - 1)
        table.setflags(write=False)
        return table

    def mul_arrays(self, a, b) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        out = self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    @cached_property
    def trace_table(self) -> np.ndarray:
        """Absolute trace of every element, as integers mod p."""
        basis_traces = []
        for i in range(self.m):
            x = self.p**i
            total = 0
            for _ in range(self.m):
                total = self.add(total, x)
                x = self.pow_poly(x, self.p)
            if total >= self.p:
                raise RuntimeError("trace left the prime field")
            basis_traces.append(total)
        table = (self.digits @ np.array(basis_traces, dtype=np.int64)) % self.p
        table.setflags(write=False)
        return table


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            # integers act through the prime subfield
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.sub(o, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(o)))

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(self.field, self.field.pow(self.field.inv(self.value), -e))
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field!r}{list(self.coeffs)}"


@lru_cache(maxsize=None)
def gf(p: int, m: int = 1) -> FiniteField:
    """The field of order ``p**m`` (cached; instances are immutable)."""
    return FiniteField(p, m)


def _value(F: FiniteField, a) -> int:
    return F(a).value


def norm(F: FiniteField, s_sub: int, a) -> FieldElement:
    """Norm from ``F`` down to the subfield of order ``q0`` with ``q0**s_sub == |F|``."""
    if s_sub < 1 or F.m % s_sub:
        raise ValueError(f"degree {s_sub} does not divide m={F.m}")
    q0 = F.p ** (F.m // s_sub)
    return FieldElement(F, F.pow(_value(F, a), (F.q - 1) // (q0 - 1)))


def norm_values(F: FiniteField, s_sub: int) -> np.ndarray:
    """Norms of all elements, indexed by element value."""
    if s_sub < 1 or F.m % s_sub:
        raise ValueError(f"degree {s_sub} does not divide m={F.m}")
    q0 = F.p ** (F.m // s_sub)
    e = (F.q - 1) // (q0 - 1)
    out = np.zeros(F.q, dtype=np.int64)
    out[1:] = F.exp_table[(F.log_table[1:] * e) % (F.q - 1)]
    return out


def trace(F: FiniteField, a) -> int:
    return int(F.trace_table[_value(F, a)])


def quad_char(F: FiniteField, a) -> int:
    if F.p == 2:
        raise ValueError("quadratic character needs a field of odd order")
    v = _value(F, a)
    if v == 0:
        return 0
    return 1 if F.log_table[v] % 2 == 0 else -1


def additive_char(F: FiniteField, b, x) -> complex:
    t = F.trace_table[F.mul(_value(F, b), _value(F, x))]
    return cmath.exp(2j * math.pi * int(t) / F.p)


def _char_values(F: FiniteField, b: int, xs: np.ndarray) -> np.ndarray:
    t = F.trace_table[F.mul_arrays(np.full(len(xs), b), xs)]
    return np.exp(2j * np.pi * t / F.p)


def subgroup_char_sum(F: FiniteField, h: int, b) -> complex:
    """Sum of the additive character chi_b over the subgroup generated by generator^h."""
    if h < 1 or (F.q - 1) % h:
        raise ValueError(f"h={h} does not divide q-1={F.q - 1}")
    H = F.exp_table[::h]
    return complex(_char_values(F, _value(F, b), H).sum())


def gauss_sum(F: FiniteField, j: int, b) -> complex:
    """Sum over x in F* of theta^j(x) chi_b(x), theta(generator^k) = exp(2 pi i k/(q-1))."""
    n = F.q - 1
    k = np.arange(n)
    theta = np.exp(2j * np.pi * ((j * k) % n) / n)
    return complex((theta * _char_values(F, _value(F, b), F.exp_table)).sum())
