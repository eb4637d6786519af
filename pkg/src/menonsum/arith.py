"""Exact integer arithmetic: factorization and multiplicative functions.

Everything here works on Python ints, so nothing wraps around no matter how
large ``sigma_k`` or the tuple counts get.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product
from math import gcd, prod
from typing import Iterable, Sequence, Union

from .errors import DomainError

# Deterministic Miller-Rabin witnesses, valid for n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@dataclass(frozen=True)
class Factorization:
    """A positive integer together with its prime factorization.

    ``parts`` is a tuple of ``(prime, exponent)`` pairs, primes ascending.
    """

    value: int
    parts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise DomainError(f"factorization of non-positive value {self.value}")
        last = 1
        for p, m in self.parts:
            if p <= last or m < 1 or not is_prime(p):
                raise DomainError(f"malformed factorization parts {self.parts!r}")
            last = p
        if prod(p**m for p, m in self.parts) != self.value:
            raise DomainError(f"parts {self.parts!r} do not multiply to {self.value}")

    def __int__(self) -> int:
        return self.value

    @property
    def prime_powers(self) -> list[int]:
        return [p**m for p, m in self.parts]

    def __str__(self) -> str:
        if not self.parts:
            return "1"
        return " * ".join(f"{p}^{m}" if m > 1 else str(p) for p, m in self.parts)


IntLike = Union[int, Factorization]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> Factorization:
    """Factor ``n >= 1`` by trial division.

    Once the unfactored cofactor tests prime the loop stops, so a large prime
    factor costs one primality test rather than a scan up to its square root.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"expected a positive integer, got {n!r}")
    if n < 1:
        raise DomainError(f"cannot factor {n}: input must be positive")
    return _factorize(n)


@lru_cache(maxsize=1 << 16)
def _factorize(n: int) -> Factorization:
    parts = []
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            m = 0
            while rest % p == 0:
                rest //= p
                m += 1
            parts.append((p, m))
            if is_prime(rest):
                break
        p += 1 if p == 2 else 2
    if rest > 1:
        parts.append((rest, 1))
    return Factorization(n, tuple(parts))


def as_factorization(n: IntLike) -> Factorization:
    if isinstance(n, Factorization):
        return n
    return factorize(n)


def euler_phi(n: IntLike) -> int:
    f = as_factorization(n)
    return prod(p**m - p ** (m - 1) for p, m in f.parts)


def sigma_k(n: IntLike, k: int) -> int:
    """Sum of the k-th powers of the divisors of n."""
    if k < 0:
        raise DomainError(f"sigma_k needs k >= 0, got {k}")
    f = as_factorization(n)
    if k == 0:
        return prod(m + 1 for _, m in f.parts)
    # each local factor is the geometric series 1 + p^k + ... + p^(mk)
    return prod((p ** (k * (m + 1)) - 1) // (p**k - 1) for p, m in f.parts)


def moebius(n: IntLike) -> int:
    f = as_factorization(n)
    if any(m > 1 for _, m in f.parts):
        return 0
    return -1 if len(f.parts) % 2 else 1


def divisors(n: IntLike) -> list[int]:
    """All positive divisors of n, ascending."""
    return list(_divisors(as_factorization(n)))


@lru_cache(maxsize=1 << 14)
def _divisors(f: Factorization) -> tuple[int, ...]:
    ranges = [[p**i for i in range(m + 1)] for p, m in f.parts]
    return tuple(sorted(prod(c) for c in product(*ranges)))


def crt_split(n: IntLike, a: int) -> list[int]:
    """Reduce ``a`` modulo each prime-power part of ``n``."""
    f = as_factorization(n)
    if not 0 <= a < f.value:
        raise DomainError(f"residue {a} out of range for modulus {f.value}")
    return [a % q for q in f.prime_powers]


def crt_combine(moduli: Sequence[int], residues: Sequence[int]) -> int:
    """The unique x mod prod(moduli) with x = r_i mod q_i for every i."""
    if len(moduli) != len(residues):
        raise DomainError("moduli and residues differ in length")
    for i, q in enumerate(moduli):
        if q < 1:
            raise DomainError(f"modulus {q} is not positive")
        for q2 in moduli[i + 1:]:
            if gcd(q, q2) != 1:
                raise DomainError(f"moduli {q} and {q2} are not coprime")
    n = prod(moduli)
    x = 0
    for q, r in zip(moduli, residues):
        if not 0 <= r < q:
            raise DomainError(f"residue {r} out of range for modulus {q}")
        rest = n // q
        x += r * rest * pow(rest, -1, q) if q > 1 else 0
    return x % n


def lcm_all(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)
