"""The twisted gcd sum

    S(n, k, chi) = sum over units a mod n and b_1..b_k mod n of
                   gcd(a - 1, b_1, ..., b_k, n) * chi(a)

evaluated four independent ways:

``naive``
    the literal sum over a and every k-tuple b.
``grouped``
    group the tuples by g = gcd(b_1, ..., b_k, n); then the a-sum only sees
    gcd(a - 1, g), and the tuple count per g has a Moebius formula.
``local``
    factor chi by CRT, evaluate each prime-power factor from the closed forms
    of the two inner sums, multiply.
``closed``
    phi(n) * sigma_k(n / conductor).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Sequence

import numpy as np

from .arith import divisors, euler_phi, lcm_all, moebius, sigma_k
from .characters import DirichletCharacter, evaluate, unit_logs
from .cyclotomic import CyclotomicSum, NonInteger, extract_integer, extract_integers
from .errors import DomainError, IntegralityError, ResourceError

MODES = ("naive", "grouped", "local", "closed")
DEFAULT_WORK_CAP = 10**8

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class MenonEvaluation:
    n: int
    char_index: int
    k: int
    mode: str
    value: int
    conductor: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "char_index": self.char_index,
            "conductor": self.conductor,
            "k": self.k,
            "mode": self.mode,
            "value": str(self.value),
        }


def _record(chi: DirichletCharacter, k: int, mode: str, value: int) -> MenonEvaluation:
    return MenonEvaluation(chi.n, chi.index, k, mode, value, chi.conductor)


def _to_int(total: CyclotomicSum, what: str) -> int:
    value = extract_integer(total)
    if isinstance(value, NonInteger):
        raise IntegralityError(f"{what} did not reduce to an integer: {value}")
    return value


def _check_k(k: int) -> None:
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")


# -- the two inner sums -------------------------------------------------------

@lru_cache(maxsize=256)
def _gcd_classes(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Per unit, the index of gcd(a - 1, n) among the divisors of n, plus the
    matrix gcd(d_i, d_j) over pairs of divisors."""
    divs = divisors(n)
    where = {d: i for i, d in enumerate(divs)}
    units, _ = unit_logs(n)
    cls = np.array([where[gcd(int(a) - 1, n)] for a in units], dtype=np.int64)
    weights = np.array([[gcd(g, m) for g in divs] for m in divs], dtype=np.int64)
    cls.flags.writeable = False
    weights.flags.writeable = False
    return cls, weights


_CHUNK_CELLS = 1 << 21


def _gcd_sum_tables(chars: Sequence[DirichletCharacter], order: int) -> np.ndarray:
    """Shape (len(chars), d(n), order): entry [x, i, j] is the multiplicity of
    zeta_order^j in sum_a gcd(a - 1, d_i) chi_x(a), d_i the i-th divisor of n."""
    n = chars[0].n
    cls, weights = _gcd_classes(n)
    size = len(weights)
    _, logs = unit_logs(n)
    scale = np.array([[e * order // o
                       for local, exps in zip(chi.locals, chi.exponents)
                       for (_, o), e in zip(local.generators, exps)]
                      for chi in chars], dtype=np.int64).reshape(len(chars), logs.shape[1])
    exps = (logs @ (scale.T % order)) % order
    # how many units land on each (gcd(a-1, n), chi(a)) cell, per character
    rows = np.arange(len(chars), dtype=np.int64)[:, None]
    keys = (rows * size + cls[None, :]) * order + exps.T
    profile = np.bincount(keys.ravel(), minlength=len(chars) * size * order)
    return np.matmul(weights, profile.reshape(len(chars), size, order))


def _chunks(chars, cells_per_char):
    step = max(1, _CHUNK_CELLS // cells_per_char)
    for i in range(0, len(chars), step):
        yield chars[i:i + step]


def gcd_char_sum(chi: DirichletCharacter, divisor: int) -> CyclotomicSum:
    """sum over units a of gcd(a - 1, divisor) * chi(a), for divisor | n."""
    n = chi.n
    if divisor < 1 or n % divisor:
        raise DomainError(f"{divisor} does not divide {n}")
    row = divisors(n).index(divisor)
    return CyclotomicSum(chi.order, _gcd_sum_tables([chi], chi.order)[0, row].tolist())


def gcd_char_sum_closed(p: int, m: int, t: int, s: int) -> int:
    """Closed form of sum_{a unit mod p^m} gcd(a - 1, p^s) chi(a), conductor p^t."""
    if p < 2 or m < 1 or not 0 <= t <= m or not 0 <= s <= m:
        raise DomainError(f"need prime p, m >= 1 and 0 <= t, s <= m; got {(p, m, t, s)}")
    if s < t:
        return 0
    return (s - t + 1) * (p**m - p ** (m - 1))


def tuple_gcd_count(n: int, k: int, divisor: int) -> int:
    """Number of (b_1..b_k) in (Z/n)^k with gcd(b_1, ..., b_k, n) = divisor."""
    _check_k(k)
    if divisor < 1 or n % divisor:
        raise DomainError(f"{divisor} does not divide {n}")
    if k == 0:
        # the empty tuple: gcd(n) = n
        return 1 if divisor == n else 0
    rest = n // divisor
    return sum(moebius(e) * (rest // e) ** k for e in divisors(rest))


def prime_power_tuple_count(p: int, m: int, k: int, s: int) -> int:
    """Same count as :func:`tuple_gcd_count` for n = p^m, divisor p^s."""
    _check_k(k)
    if not 0 <= s <= m:
        raise DomainError(f"s must lie in 0..{m}, got {s}")
    if s == m:
        return 1
    if k == 0:
        return 0
    return p ** ((m - s) * k) - p ** ((m - s - 1) * k)


@lru_cache(maxsize=1024)
def _tuple_counts(n: int, k: int) -> tuple[int, ...]:
    return tuple(tuple_gcd_count(n, k, m) for m in divisors(n))


# -- the four evaluators -----------------------------------------------------

def naive_work(n: int, k: int) -> int:
    return n**k * euler_phi(n)


def menon_naive(chi: DirichletCharacter, k: int,
                work_cap: int = DEFAULT_WORK_CAP) -> MenonEvaluation:
    _check_k(k)
    n = chi.n
    work = naive_work(n, k)
    if work > work_cap:
        raise ResourceError(f"naive sum mod {n} with k={k} needs {work} steps, cap is {work_cap}")
    total = CyclotomicSum(chi.order)
    tuples = list(product(range(n), repeat=k))
    for a in range(n):
        if gcd(a, n) != 1:
            continue
        if k == 0:
            weight = gcd(a - 1, n)
        else:
            weight = sum(gcd(a - 1, *b, n) for b in tuples)
        total.add_root(evaluate(chi, a), weight)
    return _record(chi, k, "naive", _to_int(total, f"naive sum for {chi!r}, k={k}"))


def menon_grouped(chi: DirichletCharacter, k: int) -> MenonEvaluation:
    return menon_grouped_batch([chi], [k])[k][0]


def menon_grouped_batch(chars: Sequence[DirichletCharacter],
                        ks: Sequence[int]) -> dict[int, list[MenonEvaluation]]:
    """Grouped evaluation of many characters sharing one modulus.

    Sums the divisor terms tuple_gcd_count(n, k, d) * gcd_char_sum(chi, d) for
    every character at once, then extracts each total exactly.
    """
    for k in ks:
        _check_k(k)
    out = {k: [] for k in ks}
    if not chars:
        return out
    n = chars[0].n
    if any(chi.n != n for chi in chars):
        raise DomainError("batched characters must share a modulus")
    order = lcm_all(chi.order for chi in chars)
    size = len(divisors(n))
    for part in _chunks(list(chars), size * order):
        tables = _gcd_sum_tables(part, order)
        peak = int(np.abs(tables).max(initial=0)) * size
        for k in ks:
            counts = _tuple_counts(n, k)
            if max(counts) * peak < _INT64_SAFE:
                acc = np.tensordot(np.array(counts, dtype=np.int64), tables, axes=([0], [1]))
            else:
                acc = np.tensordot(np.array(counts, dtype=object), tables.astype(object),
                                   axes=([0], [1]))
            for chi, value in zip(part, extract_integers(acc, order)):
                if isinstance(value, NonInteger):
                    raise IntegralityError(f"grouped sum for {chi!r}, k={k} is not an integer: {value}")
                out[k].append(_record(chi, k, "grouped", value))
    return out


def menon_local(chi: DirichletCharacter, k: int) -> MenonEvaluation:
    _check_k(k)
    value = 1
    for (p, m), t in zip(chi.modulus.parts, chi.local_conductor_exponents):
        value *= sum(gcd_char_sum_closed(p, m, t, s) * prime_power_tuple_count(p, m, k, s)
                     for s in range(t, m + 1))
    return _record(chi, k, "local", value)


def menon_closed(chi: DirichletCharacter, k: int) -> MenonEvaluation:
    _check_k(k)
    f = chi.modulus
    return _record(chi, k, "closed", euler_phi(f) * sigma_k(f.value // chi.conductor, k))


def menon(chi: DirichletCharacter, k: int, mode: str,
          work_cap: int = DEFAULT_WORK_CAP) -> MenonEvaluation:
    if mode == "naive":
        return menon_naive(chi, k, work_cap)
    if mode == "grouped":
        return menon_grouped(chi, k)
    if mode == "local":
        return menon_local(chi, k)
    if mode == "closed":
        return menon_closed(chi, k)
    raise DomainError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")

