"""Exact sums of roots of unity.

A :class:`CyclotomicSum` stores ``sum_j counts[j] * zeta_N**j`` as an integer
vector. Deciding whether such a sum is a rational integer is done without any
floating point: either by reducing the counts polynomial modulo the cyclotomic
polynomial, or (the fast path) by splitting ``Q(zeta_N)`` into the tensor
product of its prime-power cyclotomic fields and reducing each axis separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

import numpy as np

from .arith import divisors, factorize


@dataclass(frozen=True, eq=False)
class RootOfUnity:
    """``zeta_order ** numerator``, or the distinguished zero value.

    Two roots compare equal when they are the same complex number, so
    ``RootOfUnity(1, 2) == RootOfUnity(2, 4)``.
    """

    numerator: int
    order: int
    is_zero: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"root of unity order must be positive, got {self.order}")
        object.__setattr__(self, "numerator", self.numerator % self.order)

    @property
    def angle(self) -> Fraction:
        """Argument as a fraction of a full turn, in [0, 1)."""
        return Fraction(self.numerator, self.order)

    def rescale(self, order: int) -> int:
        """Numerator of this root written with denominator ``order``."""
        if order % self.order:
            raise ValueError(f"order {self.order} does not divide {order}")
        return self.numerator * (order // self.order)

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        if self.is_zero or other.is_zero:
            return ZERO
        n = self.order * other.order // gcd(self.order, other.order)
        return RootOfUnity(self.rescale(n) + other.rescale(n), n)

    def __pow__(self, e: int) -> RootOfUnity:
        if self.is_zero:
            return ZERO if e else ONE
        return RootOfUnity(self.numerator * e, self.order)

    def __eq__(self, other):
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero == other.is_zero
        return self.angle == other.angle

    def __hash__(self):
        return hash(None) if self.is_zero else hash(self.angle)

    def __complex__(self) -> complex:
        if self.is_zero:
            return 0j
        return complex(np.exp(2j * np.pi * float(self.angle)))

    def __repr__(self) -> str:
        if self.is_zero:
            return "ZERO"
        return f"RootOfUnity({self.numerator}, {self.order})"


ZERO = RootOfUnity(0, 1, is_zero=True)
ONE = RootOfUnity(0, 1)


@dataclass(frozen=True)
class NonInteger:
    """Outcome of :func:`extract_integer` when the sum is not rational.

    ``remainder`` holds the coefficients (lowest degree first) of the counts
    polynomial reduced modulo the N-th cyclotomic polynomial.
    """

    order: int
    remainder: tuple[int, ...]

    def __bool__(self):
        return False


@dataclass
class CyclotomicSum:
    """Integer combination of N-th roots of unity."""

    order: int
    counts: list[int] = field(default=None)

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        if self.counts is None:
            self.counts = [0] * self.order
        elif len(self.counts) != self.order:
            raise ValueError(f"expected {self.order} counts, got {len(self.counts)}")
        elif not isinstance(self.counts, np.ndarray):
            self.counts = [int(c) for c in self.counts]

    @classmethod
    def of_integer(cls, c: int) -> CyclotomicSum:
        return cls(1, [c])

    @classmethod
    def from_roots(cls, roots: Iterable[RootOfUnity], weights: Iterable[int] | None = None,
                   order: int | None = None) -> CyclotomicSum:
        roots = list(roots)
        if weights is None:
            weights = [1] * len(roots)
        if order is None:
            order = 1
            for r in roots:
                if not r.is_zero:
                    order = order * r.order // gcd(order, r.order)
        total = cls(order)
        for r, w in zip(roots, weights):
            total.add_root(r, w)
        return total

    def _mutable(self) -> list[int]:
        if isinstance(self.counts, np.ndarray):
            self.counts = [int(c) for c in self.counts]
        return self.counts

    def add(self, j: int, weight: int = 1) -> None:
        self._mutable()[j % self.order] += weight

    def add_root(self, root: RootOfUnity, weight: int = 1) -> None:
        if not root.is_zero:
            self._mutable()[root.rescale(self.order)] += weight

    def rescaled(self, order: int) -> CyclotomicSum:
        if order % self.order:
            raise ValueError(f"order {self.order} does not divide {order}")
        step = order // self.order
        out = CyclotomicSum(order)
        for j, c in enumerate(self.counts):
            out.counts[j * step] = int(c)
        return out

    def __add__(self, other: CyclotomicSum) -> CyclotomicSum:
        n = self.order * other.order // gcd(self.order, other.order)
        a, b = self.rescaled(n), other.rescaled(n)
        return CyclotomicSum(n, [x + y for x, y in zip(a.counts, b.counts)])

    def __mul__(self, c: int) -> CyclotomicSum:
        return CyclotomicSum(self.order, [c * int(x) for x in self.counts])

    __rmul__ = __mul__

    def extract_integer(self) -> Union[int, NonInteger]:
        return extract_integer(self)

    def to_complex(self) -> complex:
        j = np.arange(self.order)
        return complex(np.dot(np.array(self.counts, dtype=float),
                              np.exp(2j * np.pi * j / self.order)))


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise ValueError(f"cyclotomic polynomial index must be positive, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num, rem = poly_divmod(num, cyclotomic_polynomial(d))
        assert not any(rem), f"inexact division by Phi_{d} while building Phi_{n}"
    return tuple(num)


def poly_divmod(num, den) -> tuple[list[int], list[int]]:
    """Divide integer polynomials; ``den`` must be monic. Lowest degree first."""
    den = list(den)
    while len(den) > 1 and den[-1] == 0:
        den.pop()
    if den[-1] != 1:
        raise ValueError("divisor polynomial must be monic")
    rem = list(num)
    dd = len(den) - 1
    if len(rem) <= dd:
        return [0], rem + [0] * (dd - len(rem))
    quot = [0] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                rem[i - dd + j] -= c * den[j]
    return quot, rem[:dd] if dd else [0]


def reduce_mod_cyclotomic(counts, n: int) -> list[int]:
    """Remainder of ``sum counts[j] x^j`` modulo the n-th cyclotomic polynomial."""
    _, rem = poly_divmod([int(c) for c in counts], cyclotomic_polynomial(n))
    return rem


@lru_cache(maxsize=4096)
def _tensor_layout(n: int):
    """Axes and exponent placement for ``Q(zeta_n)`` as a tensor product.

    With n = q_1 ... q_r (prime powers) and u_i = (n/q_i)^-1 mod q_i we have
    1/n = sum u_i/q_i mod 1, so zeta_n^j sits at position (j*u_i mod q_i).
    That map is a bijection (CRT), returned as flat positions per j.
    """
    axes = []
    for p, m in factorize(n).parts:
        q = p**m
        axes.append((p, q, pow(n // q, -1, q)))
    shape = tuple(q for _, q, _ in axes)
    j = np.arange(n, dtype=np.int64)
    flat = np.ravel_multi_index(tuple(j * u % q for _, q, u in axes), shape) if axes else j
    flat.flags.writeable = False
    return tuple(axes), shape, flat


def _canonical_rows(rows, n: int) -> np.ndarray:
    """Coordinates of each row's sum in the product of power bases of the
    prime-power cyclotomic fields. Row r is an integer sum iff every
    coordinate except column 0 vanishes."""
    axes, shape, flat = _tensor_layout(n)
    if not (isinstance(rows, np.ndarray) and rows.dtype == np.int64):
        rows = np.array([[int(c) for c in row] for row in rows], dtype=object)
    rows = rows.reshape(-1, n)
    # each axis pass subtracts at most one entry into every slot
    bound = int(np.abs(rows).max(initial=0)) << len(axes)
    dtype = np.int64 if bound < 2**62 else object
    arr = np.zeros(rows.shape, dtype=dtype)
    arr[:, flat] = rows.astype(dtype)
    arr = arr.reshape((len(rows),) + shape)
    for ax, (p, q, _) in enumerate(axes, start=1):
        # x^((p-1)b + r) = -sum_{l<p-1} x^(lb + r) modulo Phi_q, with b = q/p
        moved = np.moveaxis(arr, ax, 0)
        tail = moved.shape[1:]
        blocks = moved.reshape(p, q // p, -1)
        blocks[:p - 1] -= blocks[p - 1]
        blocks[p - 1] = 0
        arr = np.moveaxis(blocks.reshape((q,) + tail), 0, ax)
    return arr.reshape(len(rows), n)


def extract_integers(rows, n: int) -> list[Union[int, NonInteger]]:
    """:func:`extract_integer` for every row of an (R, n) count matrix."""
    if isinstance(rows, np.ndarray):
        rows = rows.reshape(-1, n)
    canon = _canonical_rows(rows, n)
    consts = canon[:, 0].copy()
    canon[:, 0] = 0
    bad = canon.any(axis=1)
    out = []
    for r, c in enumerate(consts):
        if bad[r]:
            out.append(NonInteger(n, tuple(reduce_mod_cyclotomic(rows[r], n))))
        else:
            out.append(int(c))
    return out


def extract_integer(s: CyclotomicSum) -> Union[int, NonInteger]:
    """Return the sum as an int, or a :class:`NonInteger` if it is not one.

    Never rounds: the decision is made on the exact canonical form of the sum
    in the cyclotomic field.
    """
    rows = s.counts if isinstance(s.counts, np.ndarray) else [s.counts]
    return extract_integers(rows, s.order)[0]


def extract_integer_by_division(s: CyclotomicSum) -> Union[int, NonInteger]:
    """Reference path: long division by the cyclotomic polynomial."""
    rem = reduce_mod_cyclotomic(s.counts, s.order)
    if not any(rem[1:]):
        return int(rem[0])
    return NonInteger(s.order, tuple(rem))


def orbit_sum(n: int) -> CyclotomicSum:
    """One copy of every n-th root of unity."""
    return CyclotomicSum(n, [1] * n)
