from math import gcd

import numpy as np
import pytest

from menonsum.arith import euler_phi, factorize
from menonsum.characters import (
    char_sum_on_unit_subgroup,
    character_from_index,
    character_group,
    conductor_by_scan,
    crt_product,
    enumerate_unit_subgroup,
    evaluate,
    prime_power_local,
    primitive_character,
    restrict,
)
from menonsum.cyclotomic import ONE, ZERO, CyclotomicSum, RootOfUnity, extract_integer
from menonsum.errors import DomainError, ResourceError

PRIME_POWERS_128 = [p**m for p in range(2, 128) if factorize(p).parts == ((p, 1),)
                    for m in range(1, 8) if p**m <= 128]


def value_table(chi):
    """Exponents over zeta_N for each residue, -1 off the units."""
    return [-1 if r.is_zero else r.rescale(chi.order)
            for r in (evaluate(chi, a) for a in range(chi.n))]


@pytest.mark.parametrize("q", PRIME_POWERS_128)
def test_prime_power_local_structure(q):
    (p, m), = factorize(q).parts
    local = prime_power_local(p, m)
    phi = q - q // p
    assert np.prod(local.radices) == phi
    assert len(local.log_table) == phi
    assert sorted(local.log_table) == [a for a in range(q) if a % p]
    for a, exps in local.log_table.items():
        assert local.power(exps) == a


def test_generator_choices():
    assert prime_power_local(2, 1).generators == ((1, 1),)
    assert prime_power_local(2, 2).generators == ((3, 2),)
    assert prime_power_local(2, 5).generators == ((31, 2), (5, 8))
    assert prime_power_local(5, 1).generators == ((2, 4),)
    assert prime_power_local(7, 2).generators == ((3, 42),)
    # 2 is not a primitive root mod 7
    assert prime_power_local(7, 1).generators[0][0] == 3


def test_group_of_one():
    group = character_group(1)
    assert len(group) == 1
    assert group[0].conductor == 1
    assert evaluate(group[0], 0) == ONE


def test_group_mod_8_has_four_distinct_characters():
    group = character_group(8)
    assert len(group) == euler_phi(8) == 4
    assert len({tuple(value_table(chi)) for chi in group}) == 4


def test_index_one_mod_5_sends_two_to_i():
    chi = character_group(5)[1]
    assert evaluate(chi, 2) == RootOfUnity(1, 4)
    assert evaluate(chi, 4) == RootOfUnity(2, 4)


def test_evaluate_examples():
    for chi in character_group(12):
        assert evaluate(chi, 1) == ONE
    for chi in character_group(6):
        assert evaluate(chi, 3) == ZERO
    with pytest.raises(DomainError):
        evaluate(character_group(6)[0], 6)


@pytest.mark.parametrize("n", range(1, 201))
def test_group_count_and_distinct_tables(n):
    group = character_group(n)
    assert len(group) == euler_phi(n)
    assert group[0].is_trivial()
    assert [chi.index for chi in group] == list(range(len(group)))
    tables = {tuple(value_table(chi)) for chi in group} if n <= 120 else None
    if tables is not None:
        assert len(tables) == len(group)


def test_character_from_index_round_trips():
    for n in (1, 8, 12, 16, 45, 120):
        for chi in character_group(n):
            assert character_from_index(n, chi.index) == chi
    with pytest.raises(DomainError):
        character_from_index(5, 4)


def test_group_cap():
    with pytest.raises(ResourceError):
        character_group(101, cap=50)


@pytest.mark.parametrize("n", range(1, 101))
def test_complete_multiplicativity(n):
    units = np.array([a for a in range(n) if gcd(a, n) == 1] if n > 1 else [0])
    for chi in character_group(n):
        t = np.array(value_table(chi))
        prod_vals = t[(units[:, None] * units[None, :]) % n]
        sums = (t[units][:, None] + t[units][None, :]) % chi.order
        assert (prod_vals == sums).all()


def test_conductor_examples():
    assert character_group(12)[0].conductor == 1
    # index 2 mod 8: chi(-1) = -1, chi(5) = 1
    chi = character_group(8)[2]
    assert evaluate(chi, 7) == RootOfUnity(1, 2) and evaluate(chi, 5) == ONE
    assert chi.conductor == 4
    # index 1 mod 8: chi(-1) = 1, chi(5) = -1
    assert character_group(8)[1].conductor == 8
    # exponent 3 on the generator 2 mod 9: order 2
    chi = character_group(9)[3]
    assert chi.order == 2 and chi.conductor == 3
    assert all(evaluate(chi, a) == ONE for a in (1, 4, 7))


@pytest.mark.parametrize("q", PRIME_POWERS_128)
def test_conductor_minimality(q):
    (p, m), = factorize(q).parts
    local = prime_power_local(p, m)
    for chi in character_group(q):
        t, = chi.local_conductor_exponents
        assert all(evaluate(chi, a) == ONE for a in enumerate_unit_subgroup(local, t))
        if t >= 1:
            assert any(evaluate(chi, a) != ONE for a in enumerate_unit_subgroup(local, t - 1))


def test_product_rule_matches_global_scan():
    for n in range(1, 121):
        for chi in character_group(n):
            assert chi.conductor == conductor_by_scan(chi)


def test_unit_subgroup_examples():
    assert enumerate_unit_subgroup(prime_power_local(3, 2), 2) == [1]
    assert enumerate_unit_subgroup(prime_power_local(3, 2), 1) == [1, 4, 7]
    assert enumerate_unit_subgroup(prime_power_local(2, 3), 0) == [1, 3, 5, 7]
    with pytest.raises(DomainError):
        enumerate_unit_subgroup(prime_power_local(3, 2), 3)


@pytest.mark.parametrize("q", PRIME_POWERS_128)
def test_filtration_is_a_strict_chain_of_subgroups(q):
    (p, m), = factorize(q).parts
    local = prime_power_local(p, m)
    sets = [set(enumerate_unit_subgroup(local, i)) for i in range(m + 1)]
    assert len(sets[0]) == q - q // p
    for i in range(1, m + 1):
        assert len(sets[i]) == p ** (m - i)
        assert sets[i] <= sets[i - 1]
        if p == 2 and i == 1:
            # every unit mod 2^m is odd, so U_1 = U_0
            assert sets[1] == sets[0]
        else:
            assert sets[i] < sets[i - 1]
        assert {a * b % q for a in sets[i] for b in sets[i]} == sets[i]


def test_char_sum_on_unit_subgroup_examples():
    group = character_group(9)
    assert extract_integer(char_sum_on_unit_subgroup(group[0], 1)) == 3
    primitive = group[1]
    assert primitive.conductor == 9
    assert extract_integer(char_sum_on_unit_subgroup(primitive, 1)) == 0
    for chi in group:
        assert extract_integer(char_sum_on_unit_subgroup(chi, 2)) == 1


def test_char_sum_on_unit_subgroup_needs_prime_power():
    with pytest.raises(DomainError):
        char_sum_on_unit_subgroup(character_group(12)[1], 1)


def test_orthogonality_small():
    for n in range(1, 61):
        for chi in character_group(n):
            total = CyclotomicSum.from_roots((evaluate(chi, a) for a in range(n)), order=chi.order)
            assert extract_integer(total) == (euler_phi(n) if chi.is_trivial() else 0)


def test_crt_product_and_restrict():
    for n1, n2 in [(4, 9), (8, 15), (5, 7), (1, 12)]:
        n = n1 * n2
        for c1 in character_group(n1):
            for c2 in character_group(n2):
                chi = crt_product(c1, c2)
                assert chi.n == n
                assert restrict(chi, n1) == c1 and restrict(chi, n2) == c2
                assert chi.conductor == c1.conductor * c2.conductor
                for c in range(n):
                    if gcd(c, n) == 1:
                        assert evaluate(chi, c) == evaluate(c1, c % n1) * evaluate(c2, c % n2)
    with pytest.raises(DomainError):
        crt_product(character_group(4)[1], character_group(6)[1])


def test_components_recombine():
    for chi in character_group(360):
        assert crt_product(*chi.components()) == chi


def test_induction_consistency():
    for n in range(1, 121):
        for chi in character_group(n):
            prim = primitive_character(chi)
            assert prim.n == chi.conductor
            assert prim.is_primitive()
            for a in range(n):
                if gcd(a, n) == 1:
                    assert evaluate(chi, a) == evaluate(prim, a % prim.n)
