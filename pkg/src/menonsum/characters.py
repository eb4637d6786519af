"""Dirichlet characters modulo n with exact root-of-unity values.

The unit group mod n is split by CRT into unit groups mod p^m. Each of those
is generated explicitly (a primitive root for odd p and for 4, the pair
(-1, 5) for 2^m with m >= 3) and gets a full discrete-log table. A character
is then a vector of exponents, one per generator, and the character group is
enumerated in mixed-radix order over those exponent digits: primes ascending,
and for 2^m (m >= 3) the exponent on -1 is the more significant digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import gcd, prod
from typing import Sequence

import numpy as np

from .arith import Factorization, IntLike, as_factorization, divisors, euler_phi, factorize, lcm_all
from .cyclotomic import ONE, ZERO, CyclotomicSum, RootOfUnity
from .errors import DomainError, ResourceError

DEFAULT_GROUP_CAP = 10**6


def _smallest_primitive_root(p: int, q: int) -> int:
    phi = q - q // p
    primes = [r for r, _ in factorize(phi).parts]
    g = 2
    while True:
        if g % p and all(pow(g, phi // r, q) != 1 for r in primes):
            return g
        g += 1


@dataclass(frozen=True, eq=False)
class PrimePowerLocal:
    """Generators and discrete logs for the units mod ``q = p**m``."""

    p: int
    m: int
    q: int
    generators: tuple[tuple[int, int], ...]
    log_table: dict

    @cached_property
    def units(self) -> tuple[int, ...]:
        return tuple(sorted(self.log_table))

    @property
    def radices(self) -> tuple[int, ...]:
        return tuple(order for _, order in self.generators)

    def power(self, exponents: Sequence[int]) -> int:
        return prod(pow(g, e, self.q) for (g, _), e in zip(self.generators, exponents)) % self.q


@lru_cache(maxsize=None)
def prime_power_local(p: int, m: int) -> PrimePowerLocal:
    q = p**m
    if p == 2 and m >= 3:
        gens = ((q - 1, 2), (5, 2 ** (m - 2)))
    elif q == 2:
        gens = ((1, 1),)
    elif q == 4:
        gens = ((3, 2),)
    else:
        gens = ((_smallest_primitive_root(p, q), q - q // p),)
    table = {}
    for exps in product(*(range(order) for _, order in gens)):
        a = prod(pow(g, e, q) for (g, _), e in zip(gens, exps)) % q
        if a in table:
            raise AssertionError(f"generators {gens} mod {q} are not independent")
        table[a] = exps
    assert len(table) == q - q // p
    return PrimePowerLocal(p, m, q, gens, table)


@lru_cache(maxsize=1 << 16)
def _local_conductor_exponent(p: int, m: int, exps: tuple[int, ...]) -> int:
    """Smallest t such that the local character is trivial on U_t, by scanning."""
    local = prime_power_local(p, m)

    def trivial_at(r):
        log = local.log_table[r]
        # the character value at r is exp(2 pi i * sum e*l/o); trivial iff integral
        return sum(Fraction(e * l, o) for e, l, (_, o) in zip(exps, log, local.generators)) % 1 == 0

    t = 0
    while not all(trivial_at(r) for r in enumerate_unit_subgroup(local, t)):
        t += 1
    return t


def enumerate_unit_subgroup(local: PrimePowerLocal, i: int) -> list[int]:
    """The filtration subgroup 1 + p^i Z mod p^m (all units when i = 0)."""
    if not 0 <= i <= local.m:
        raise DomainError(f"filtration index {i} outside 0..{local.m}")
    if i == 0:
        return list(local.units)
    step = local.p**i
    return sorted((1 + step * j) % local.q for j in range(local.p ** (local.m - i)))


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: Factorization
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.modulus.parts):
            raise DomainError("one exponent vector per prime-power part required")
        for local, exps in zip(self.locals, self.exponents):
            if len(exps) != len(local.generators):
                raise DomainError(f"mod {local.q}: expected {len(local.generators)} exponents")
            if any(not 0 <= e < r for e, r in zip(exps, local.radices)):
                raise DomainError(f"mod {local.q}: exponents {exps} out of range {local.radices}")

    @property
    def n(self) -> int:
        return self.modulus.value

    @cached_property
    def locals(self) -> tuple[PrimePowerLocal, ...]:
        return tuple(prime_power_local(p, m) for p, m in self.modulus.parts)

    @cached_property
    def order(self) -> int:
        return lcm_all(o // gcd(e, o)
                       for local, exps in zip(self.locals, self.exponents)
                       for (_, o), e in zip(local.generators, exps))

    @cached_property
    def weights(self) -> tuple[tuple[int, ...], ...]:
        # chi(g)^l = zeta_N^(w*l) where w rescales e/ord to denominator N
        n = self.order
        out = []
        for local, exps in zip(self.locals, self.exponents):
            out.append(tuple(e * n // o for (_, o), e in zip(local.generators, exps)))
        return tuple(out)

    @property
    def digits(self) -> tuple[int, ...]:
        return tuple(e for exps in self.exponents for e in exps)

    @cached_property
    def index(self) -> int:
        idx = 0
        for local, exps in zip(self.locals, self.exponents):
            for r, e in zip(local.radices, exps):
                idx = idx * r + e
        return idx

    def is_trivial(self) -> bool:
        return not any(self.digits)

    def local_exponent(self, i: int, r: int) -> int:
        """Exponent over zeta_N of the i-th local component at unit r mod q_i."""
        log = self.locals[i].log_table[r]
        return sum(w * l for w, l in zip(self.weights[i], log)) % self.order

    def __call__(self, a: int) -> RootOfUnity:
        return evaluate(self, a)

    @cached_property
    def local_conductor_exponents(self) -> tuple[int, ...]:
        return tuple(_local_conductor_exponent(p, m, exps)
                     for (p, m), exps in zip(self.modulus.parts, self.exponents))

    @cached_property
    def local_conductors(self) -> tuple[int, ...]:
        return tuple(local.p**t for local, t in zip(self.locals, self.local_conductor_exponents))

    @property
    def conductor(self) -> int:
        return prod(self.local_conductors)

    def is_primitive(self) -> bool:
        return self.conductor == self.n

    def components(self) -> list[DirichletCharacter]:
        """The CRT factors of this character, one per prime-power part."""
        return [DirichletCharacter(factorize(local.q), (exps,))
                for local, exps in zip(self.locals, self.exponents)]

    def __repr__(self) -> str:
        return f"DirichletCharacter(n={self.n}, index={self.index})"


def evaluate(chi: DirichletCharacter, a: int) -> RootOfUnity:
    """chi(a) as an exact root of unity; ZERO off the units."""
    n = chi.n
    if not 0 <= a < n:
        raise DomainError(f"residue {a} out of range for modulus {n}")
    if gcd(a, n) != 1:
        return ZERO
    j = sum(chi.local_exponent(i, a % local.q) for i, local in enumerate(chi.locals))
    return RootOfUnity(j, chi.order)


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor


def _radices(f: Factorization) -> list[int]:
    return [r for p, m in f.parts for r in prime_power_local(p, m).radices]


def _from_digits(f: Factorization, digits: Sequence[int]) -> DirichletCharacter:
    exps, pos = [], 0
    for p, m in f.parts:
        k = len(prime_power_local(p, m).generators)
        exps.append(tuple(digits[pos:pos + k]))
        pos += k
    return DirichletCharacter(f, tuple(exps))


def character_group(n: IntLike, cap: int = DEFAULT_GROUP_CAP) -> list[DirichletCharacter]:
    """All phi(n) characters mod n; index 0 is the trivial character."""
    f = as_factorization(n)
    size = euler_phi(f)
    if size > cap:
        raise ResourceError(f"character group mod {f.value} has {size} elements, cap is {cap}")
    return [_from_digits(f, d) for d in product(*(range(r) for r in _radices(f)))]


def character_from_index(n: IntLike, index: int) -> DirichletCharacter:
    f = as_factorization(n)
    radices = _radices(f)
    if not 0 <= index < prod(radices):
        raise DomainError(f"character index {index} out of range 0..{prod(radices) - 1}")
    digits = []
    for r in reversed(radices):
        index, d = divmod(index, r)
        digits.append(d)
    return _from_digits(f, digits[::-1])


def trivial_character(n: IntLike) -> DirichletCharacter:
    return character_from_index(n, 0)


def crt_product(*chars: DirichletCharacter) -> DirichletCharacter:
    """The character mod prod(n_i) restricting to each given character.

    Moduli must be pairwise coprime.
    """
    parts = []
    for chi in chars:
        parts.extend(zip(chi.modulus.parts, chi.exponents))
    parts.sort()
    primes = [p for (p, _), _ in parts]
    if len(set(primes)) != len(primes):
        raise DomainError("moduli of combined characters are not coprime")
    value = prod(chi.n for chi in chars)
    f = Factorization(value, tuple(pm for pm, _ in parts))
    return DirichletCharacter(f, tuple(e for _, e in parts))


def restrict(chi: DirichletCharacter, divisor: int) -> DirichletCharacter:
    """The CRT factor of chi living on the coprime divisor ``divisor`` of n."""
    if chi.n % divisor or gcd(divisor, chi.n // divisor) != 1:
        raise DomainError(f"{divisor} is not a unitary divisor of {chi.n}")
    keep = [(pm, e) for pm, e in zip(chi.modulus.parts, chi.exponents) if divisor % pm[0] == 0]
    f = Factorization(divisor, tuple(pm for pm, _ in keep))
    return DirichletCharacter(f, tuple(e for _, e in keep))


def primitive_character(chi: DirichletCharacter) -> DirichletCharacter:
    """The character mod the conductor that induces chi."""
    parts, exps = [], []
    for i, (local, t) in enumerate(zip(chi.locals, chi.local_conductor_exponents)):
        if t == 0:
            continue
        small = prime_power_local(local.p, t)
        vec = []
        for g, o in small.generators:
            # g < p^t is already a unit mod p^m, so chi's local value there is defined
            j = chi.local_exponent(i, g % local.q)
            num = j * o
            assert num % chi.order == 0, "local character does not factor through p^t"
            vec.append(num // chi.order % o)
        parts.append((local.p, t))
        exps.append(tuple(vec))
    return DirichletCharacter(Factorization(chi.conductor, tuple(parts)), tuple(exps))


def char_sum_on_unit_subgroup(chi: DirichletCharacter, i: int) -> CyclotomicSum:
    """Exact sum of chi over the filtration subgroup U_i, chi mod a prime power."""
    if len(chi.locals) != 1:
        raise DomainError(f"expected a character mod a prime power, got modulus {chi.n}")
    total = CyclotomicSum(chi.order)
    for r in enumerate_unit_subgroup(chi.locals[0], i):
        total.add(chi.local_exponent(0, r))
    return total


def conductor_by_scan(chi: DirichletCharacter) -> int:
    """Smallest d | n with chi(a) = 1 for every unit a = 1 mod d.

    Independent of the local conductors; used to cross-check the product rule.
    """
    n = chi.n
    for d in divisors(n):
        if all(evaluate(chi, a) == ONE for a in range(1 % d, n, d) if gcd(a, n) == 1):
            return d
    raise AssertionError("unreachable: d = n always works")


@lru_cache(maxsize=256)
def unit_logs(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Units mod n (ascending) and their stacked discrete logs, one column per generator."""
    f = factorize(n)
    locals_ = [prime_power_local(p, m) for p, m in f.parts]
    units = [a for a in range(n) if gcd(a, n) == 1] if n > 1 else [0]
    cols = sum(len(L.generators) for L in locals_)
    logs = np.zeros((len(units), cols), dtype=np.int64)
    for row, a in enumerate(units):
        logs[row] = [l for L in locals_ for l in L.log_table[a % L.q]]
    units_arr = np.array(units, dtype=np.int64)
    units_arr.flags.writeable = False
    logs.flags.writeable = False
    return units_arr, logs

