"""Exact integer number theory: factoring, orders, suborders, central indices.

Everything works on arbitrary-precision Python ints; no operation here ever
rounds.  Factoring runs trial division by sieved primes below 10**6 and then
Pollard's rho with Brent cycle detection on whatever remains.  Primality is
deterministic Miller-Rabin: the witness set {2,...,37} proves primality below
3.317e24, which covers every acceptance-scale input; above that range the
same fixed witness set is kept (deterministic procedure, no primality
certificates -- see module non-goals).

The rho stage is fully deterministic (fixed start value, increasing offset
constants), so repeated runs factor identically.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import lru_cache, reduce

from .errors import NotCoprime, NotPrimePower, Unfactored

_TRIAL_LIMIT = 1_000_000

# Witnesses proving primality for n < 3_317_044_064_679_887_385_961_981.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    """Primes below 10**6, sieved once."""
    limit = _TRIAL_LIMIT
    sieve = bytearray([1]) * limit
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i in range(limit) if sieve[i])


def primes_below(bound: int) -> list[int]:
    """All primes strictly below ``bound``."""
    if bound <= _TRIAL_LIMIT:
        out = []
        for r in _small_primes():
            if r >= bound:
                break
            out.append(r)
        return out
    return [m for m in range(2, bound) if is_prime(m)]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin with the fixed witness set 2..37."""
    if n < 2:
        return False
    for r in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % r == 0:
            return n == r
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
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


def _pollard_brent(n: int, deadline: float | None) -> int:
    """One nontrivial factor of composite odd n (deterministic Brent rho)."""
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        if deadline is not None and time.monotonic() > deadline:
            raise Unfactored(f"factoring budget exceeded on n={n}")
        y, r, q = 2, 1, 1
        g, x, ys = 1, 2, 2
        m = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            if deadline is not None and time.monotonic() > deadline:
                raise Unfactored(f"factoring budget exceeded on n={n}")
        if g == n:
            # Backtrack one step at a time.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1  # cycle degenerated; retry with the next offset


@dataclass(frozen=True)
class Factorization:
    """Prime factorization ``value = prod(p**e)`` with primes ascending."""

    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def omega(self) -> int:
        """Number of distinct prime divisors."""
        return len(self.factors)

    def radical(self) -> int:
        return reduce(lambda a, b: a * b, self.primes, 1)

    def euler_phi(self) -> int:
        phi = 1
        for p, e in self.factors:
            phi *= (p - 1) * p ** (e - 1)
        return phi

    def moebius(self) -> int:
        if any(e > 1 for _, e in self.factors):
            return 0
        return -1 if len(self.factors) % 2 else 1

    def divisors(self) -> list[int]:
        """All positive divisors, ascending."""
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**i for d in divs for i in range(e + 1)]
        return sorted(divs)


def _factor_into(n: int, out: dict[int, int], deadline: float | None) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n, deadline)
    _factor_into(d, out, deadline)
    _factor_into(n // d, out, deadline)


@lru_cache(maxsize=8192)
def _factorize_cached(m: int) -> Factorization:
    return _factorize_raw(m, None)


def _factorize_raw(m: int, deadline: float | None) -> Factorization:
    out: dict[int, int] = {}
    rem = m
    for r in _small_primes():
        if r * r > rem:
            break
        while rem % r == 0:
            out[r] = out.get(r, 0) + 1
            rem //= r
    if rem > 1:
        if rem < _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(rem):
            out[rem] = out.get(rem, 0) + 1
        else:
            _factor_into(rem, out, deadline)
    return Factorization(m, tuple(sorted(out.items())))


def factorize(m: int, time_budget: float | None = None) -> Factorization:
    """Full prime factorization of m >= 1 (m = 1 gives an empty factor list).

    ``time_budget`` (seconds) caps the rho stage; on expiry Unfactored is
    raised rather than returning a partial answer.
    """
    if m < 1:
        raise ValueError(f"factorize requires m >= 1, got {m}")
    if time_budget is None:
        return _factorize_cached(m)
    deadline = time.monotonic() + time_budget
    return _factorize_raw(m, deadline)


def radical(m: int) -> int:
    """Product of the distinct primes dividing m; radical(1) = 1."""
    return factorize(m).radical()


def euler_phi(m: int) -> int:
    return factorize(m).euler_phi()


def moebius(m: int) -> int:
    """Integer Moebius function (0 on non-squarefree input)."""
    return factorize(m).moebius()


def divisors(m: int) -> list[int]:
    return factorize(m).divisors()


def valuation(m: int, r: int) -> int:
    """Largest e with r**e dividing m."""
    e = 0
    while m % r == 0:
        m //= r
        e += 1
    return e


def split_prime_power(q: int) -> tuple[int, int]:
    """Write q = p**a with p prime, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    fac = factorize(q)
    if len(fac.factors) != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return fac.factors[0]


def mult_order(q: int, k: int) -> int:
    """Least s >= 1 with q**s == 1 mod k; requires gcd(q, k) = 1."""
    if k < 1:
        raise ValueError(f"modulus must be positive, got {k}")
    if k == 1:
        return 1
    qk = q % k
    if math.gcd(qk, k) != 1:
        raise NotCoprime(f"gcd({q}, {k}) > 1")
    o = euler_phi(k)
    for r in factorize(o).primes:
        while o % r == 0 and pow(qk, o // r, k) == 1:
            o //= r
    return o


@dataclass(frozen=True)
class SubordProfile:
    """Order, suborder and central index of q modulo k.

    ``subord = ord / ord_rad`` is supported only on primes dividing k;
    ``alpha`` records the exponent of each such prime (zeros included) and
    ``tau`` is the product of r**floor(alpha(r)/2).
    """

    k: int
    q: int
    ord: int
    ord_rad: int
    subord: int
    alpha: dict[int, int]
    tau: int


def subord_profile(q: int, k: int) -> SubordProfile:
    """Suborder decomposition of q mod k (subord_1(q) = 1 by convention)."""
    o = mult_order(q, k)
    rad = radical(k)
    o_rad = mult_order(q, rad)
    if o % o_rad:
        raise AssertionError(f"ord_rad does not divide ord for q={q}, k={k}")
    sub = o // o_rad
    alpha = {r: valuation(sub, r) for r in factorize(k).primes}
    check = 1
    for r, e in alpha.items():
        check *= r**e
    if check != sub:
        raise AssertionError(f"suborder {sub} has a prime outside pi({k})")
    tau = 1
    for r, e in alpha.items():
        tau *= r ** (e // 2)
    return SubordProfile(k=k, q=q, ord=o, ord_rad=o_rad, subord=sub, alpha=alpha, tau=tau)


def central_index(q: int, k: int) -> int:
    """The tau invariant of (q, k); divides k / radical(k)."""
    return subord_profile(q, k).tau
