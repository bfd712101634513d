"""Integer number theory: factoring, orders, suborders."""

import random

import pytest

from cnbase import nt
from cnbase.errors import NotCoprime


def test_factorize_fixtures():
    assert nt.factorize(3**8 - 1).factors == ((2, 5), (5, 1), (41, 1))
    assert nt.factorize(11**8 - 1).factors == ((2, 5), (3, 1), (5, 1), (61, 1), (7321, 1))
    assert nt.factorize(1).factors == ()


def test_factorize_remultiplies_structure_checks():
    for m in range(1, 20000):
        fac = nt.factorize(m)
        prod = 1
        for p, e in fac.factors:
            prod *= p**e
        assert prod == m
        assert all(nt.is_prime(p) for p in fac.primes)
        assert list(fac.primes) == sorted(set(fac.primes))


def test_factorize_remultiplies_everything_up_to_1e6():
    for m in range(1, 10**6 + 1):
        fac = nt._factorize_raw(m, None)  # bypass the cache on purpose
        prod = 1
        for p, e in fac.factors:
            prod *= p**e
        assert prod == m


def test_factorize_large_semiprime():
    p, q = 1000003, 999983
    fac = nt.factorize(p * q)
    assert fac.factors == ((q, 1), (p, 1))


def test_factorize_time_budget_raises_unfactored():
    from cnbase.errors import Unfactored

    # composite with both prime factors above the trial-division bound
    m = 1000003 * 1000033 * 1000037
    with pytest.raises(Unfactored):
        nt.factorize(m, time_budget=0.0)


def test_mult_order_basics():
    assert nt.mult_order(3, 4) == 2
    assert nt.mult_order(3, 32) == 8
    assert nt.mult_order(5, 1) == 1
    with pytest.raises(NotCoprime):
        nt.mult_order(6, 9)


def test_mult_order_matches_brute_force():
    # independent oracle: repeated multiplication
    def brute(q, k):
        v = q % k
        s = 1
        while v != 1 % k:
            v = v * q % k
            s += 1
        return s

    assert nt.mult_order(3, 16) == brute(3, 16) == 4
    rng = random.Random(11)
    for _ in range(200):
        k = rng.randrange(2, 500)
        q = rng.randrange(2, 1000)
        import math

        if math.gcd(q, k) != 1:
            continue
        assert nt.mult_order(q, k) == brute(q, k)


def test_mult_order_divides_phi():
    rng = random.Random(3)
    import math

    checked = 0
    while checked < 1000:
        k = rng.randrange(2, 5000)
        q = rng.randrange(2, 10**6)
        if math.gcd(q, k) != 1:
            continue
        assert nt.euler_phi(k) % nt.mult_order(q, k) == 0
        checked += 1


def test_subord_profile_fixtures():
    prof = nt.subord_profile(3, 16)
    assert prof.ord == 4 and prof.subord == 4 and prof.tau == 2
    prof8 = nt.subord_profile(3, 8)
    assert prof8.ord == 2 and prof8.subord == 2 and prof8.tau == 1
    prof1 = nt.subord_profile(3, 1)
    assert prof1.subord == 1 and prof1.tau == 1 and prof1.alpha == {}


def test_subord_equals_order_of_q_to_u():
    # subord_k(q) = ord_k(q^u) with u = ord_{rad k}(q), on a divisor grid
    for q in (3, 7, 11, 19):
        for k in nt.divisors(2**6 * 3 * 5 * 7 * 11):
            if k % q == 0:
                continue
            prof = nt.subord_profile(q, k)
            u = nt.mult_order(q, nt.radical(k))
            assert prof.subord == nt.mult_order(pow(q, u, k) if k > 1 else q, k)


def test_central_index_square_identity():
    # ord_{k/tau}(q^tau) == ord_k(q) / tau^2 on the same grid
    for q in (3, 7, 11, 19):
        for k in nt.divisors(2**6 * 3 * 5 * 7 * 11):
            if k % q == 0 or k == 1:
                continue
            prof = nt.subord_profile(q, k)
            tau = prof.tau
            assert prof.ord % (tau * tau) == 0
            assert nt.mult_order(pow(q, tau, k), k // tau) == prof.ord // (tau * tau)


def test_radical_phi_moebius():
    assert nt.radical(48) == 6
    assert nt.radical(1) == 1
    assert nt.euler_phi(32) == 16
    assert nt.moebius(30) == -1
    assert nt.moebius(12) == 0
    assert nt.moebius(1) == 1


def test_divisors():
    assert nt.divisors(16) == [1, 2, 4, 8, 16]
    assert nt.divisors(1) == [1]


def test_split_prime_power():
    assert nt.split_prime_power(27) == (3, 3)
    assert nt.split_prime_power(7) == (7, 1)
    with pytest.raises(Exception):
        nt.split_prime_power(12)
