"""Prime-set builders, counting routes, and density constants."""

import math

import pytest

from omega_proximity.primeset import (
    PrimeSetS,
    anchor_scale,
    coprime_count,
    coprime_count_inclusion_exclusion,
    density_constant,
    power_prime_set,
    reciprocal_sums,
    threshold_prime_set,
)

from oracles import coprime_count_slow, is_prime_slow


def test_threshold_set_examples():
    s = threshold_prime_set(0.5, 5)
    assert s.members == (2, 3, 7, 11, 13)
    assert s.classes == (None, 3, 3, 3, 1)
    assert s.kind == "paper"
    assert s.delta == 0.5
    assert threshold_prime_set(1.0, 4).members == (2, 5, 11, 17)


def test_power_set_examples():
    s = power_prime_set(2.0, 5)
    assert s.members == (3, 5, 11, 17, 29)
    assert s.classes == (3, 1, 3, 1, 1)
    assert s.kind == "power"
    assert power_prime_set(3.0, 3).members == (3, 11, 29)


def test_power_set_excludes_two_and_rejects_slow_growth():
    s = power_prime_set(2.0, 40)
    assert 2 not in s.members
    with pytest.raises(ValueError):
        power_prime_set(1.0, 5)


def test_builders_emit_increasing_primes():
    for s in (threshold_prime_set(0.5, 30), power_prime_set(2.0, 30)):
        assert all(is_prime_slow(m) for m in s.members)
        assert all(a < b for a, b in zip(s.members, s.members[1:]))


def test_from_members_validation():
    with pytest.raises(ValueError):
        PrimeSetS.from_members([3, 4])
    with pytest.raises(ValueError):
        PrimeSetS.from_members([5, 3])
    with pytest.raises(ValueError):
        PrimeSetS.from_members([3, 2])
    s = PrimeSetS.from_members([2, 13])
    assert s.classes == (None, 1)


def test_reciprocal_sums_split_by_class():
    s = PrimeSetS.from_members([3, 5, 7])
    r1, r3 = reciprocal_sums(s)
    assert math.isclose(r1, 1 / 5, rel_tol=1e-12)
    assert math.isclose(r3, 1 / 3 + 1 / 7, rel_tol=1e-12)


def test_reciprocal_sums_skip_member_two():
    with2 = PrimeSetS.from_members([2, 3, 5])
    without2 = PrimeSetS.from_members([3, 5])
    assert reciprocal_sums(with2) == reciprocal_sums(without2)


def test_density_constant():
    assert math.isclose(density_constant([3, 5, 7]), 16 / 35, rel_tol=1e-12)
    assert math.isclose(density_constant([2, 3, 7]), 2 / 7, rel_tol=1e-12)
    assert density_constant([]) == 1.0


def test_density_strictly_decreasing():
    members = list(power_prime_set(2.0, 12).members)
    densities = [density_constant(members[:i]) for i in range(len(members) + 1)]
    assert all(a > b for a, b in zip(densities, densities[1:]))


def test_convergence_witness_for_square_growth():
    # partial sums of 1/s_j with s_j >= j^2 stay under 1/3 + integral of t^-2
    s = power_prime_set(2.0, 10_000)
    assert s.recip_sum_1 + s.recip_sum_3 <= 1 / 3 + 1.0


def test_coprime_count_example():
    assert coprime_count(20, [3, 5]) == 11
    assert coprime_count_inclusion_exclusion(20, [3, 5]) == 11


def test_coprime_count_dual_route_exact():
    sets = [
        [2],
        [3, 5],
        [2, 3, 5, 7, 11],
        list(power_prime_set(2.0, 12).members),
        list(threshold_prime_set(0.5, 9).members),
    ]
    for members in sets:
        for y in (1, 97, 5000, 100_000):
            assert coprime_count(y, members) == coprime_count_inclusion_exclusion(y, members), (
                members,
                y,
            )


def test_coprime_count_matches_oracle():
    for members in ([3, 5], [2, 7, 13]):
        for y in (1, 50, 400):
            assert coprime_count(y, members) == coprime_count_slow(y, members)


def test_anchor_scale():
    assert anchor_scale(1) == (2, 1618)
    assert anchor_scale(2) == (4, None)
    assert anchor_scale(6) == (64, None)
    with pytest.raises(ValueError):
        anchor_scale(0)


def test_json_round_trip():
    s = power_prime_set(2.0, 5)
    d = s.to_json_dict()
    assert d["members"] == [3, 5, 11, 17, 29]
    assert math.isclose(d["density"], density_constant(s), rel_tol=1e-15)
    back = PrimeSetS.from_json_dict(d)
    assert back.members == s.members
    assert back.classes == s.classes
    assert back.kind == s.kind
