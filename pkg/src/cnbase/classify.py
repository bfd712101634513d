"""Per-pair (q, n) classification, existence criteria and exact counts.

Everything here is integer arithmetic on the pair (q, n): regularity,
exceptional divisors, the divisor partition and component counts entering
the character-sum bound, the two sufficient existence criteria, the odd-cube
bound used for degrees not divisible by 8, and the closed-form count of
completely normal elements.

All criterion verdicts are exact: square-root comparisons are done in
squared integer form and log2 comparisons by clearing denominators
(2**A <= q**B), never in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from . import nt
from .errors import NotRegular, WrongParity


def is_regular(q: int, n: int) -> bool:
    """True iff gcd(ord_{rad(n')}(q), n) = 1 (n' the p-free part of n)."""
    p, _ = nt.split_prime_power(q)
    n_prime = n
    while n_prime % p == 0:
        n_prime //= p
    rad = nt.radical(n_prime)
    return math.gcd(nt.mult_order(q, rad), n) == 1


def regularity_diagnostic(q: int, n: int) -> dict:
    """Structured explanation of the regularity test (for reports)."""
    p, _ = nt.split_prime_power(q)
    n_prime = n
    while n_prime % p == 0:
        n_prime //= p
    rad = nt.radical(n_prime)
    order = nt.mult_order(q, rad)
    g = math.gcd(order, n)
    return {
        "n_prime": n_prime,
        "radical": rad,
        "order_mod_radical": order,
        "gcd_with_n": g,
        "regular": g == 1,
    }


def is_exceptional_divisor(q: int, k: int) -> bool:
    """q = 3 mod 4, 2-adic valuation c of k at least 3, and ord_{2^c}(q) = 2."""
    if q % 4 != 3:
        return False
    c = nt.valuation(k, 2)
    if c < 3:
        return False
    return nt.mult_order(q, 2**c) == 2


def is_completely_basic(q: int, n: int) -> bool:
    """Every normal element is already completely normal.

    Tested by the divisibility condition: for every prime r | n, the order
    of q modulo (n/r)' is not divisible by r.
    """
    p, _ = nt.split_prime_power(q)
    for r in nt.factorize(n).primes:
        m = n // r
        while m % p == 0:
            m //= p
        if nt.mult_order(q, m) % r == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Pair profile
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairProfile:
    """Full number-theoretic profile of a regular pair (q, n)."""

    q: int
    n: int
    p: int
    a: int  # n = p^a * n_prime
    n_prime: int
    b: int  # 2-adic valuation of n_prime
    n_bar: int  # odd part of n_prime
    e: int | None  # 2-adic valuation of q^2 - 1 (odd q only)
    divisor_partition: dict[int, tuple[int, ...]]
    set_N_prime: frozenset[int]
    set_N_doubleprime: frozenset[int]
    set_E: frozenset[int]
    F_counts: dict[int, int]
    F_eps_counts: dict[int, int]
    Omega: int
    Omega_eps: int
    Omega_c: int
    omega: int | None
    tau: dict[int, int] = field(default_factory=dict)

    @property
    def set_N(self) -> frozenset[int]:
        return self.set_N_prime | self.set_N_doubleprime

    @property
    def exceptional(self) -> bool:
        return bool(self.set_E)


def _pair_parts(q: int, n: int) -> tuple[int, int, int, int, int]:
    """(p, a, n', b, n_bar) for the pair."""
    p, _ = nt.split_prime_power(q)
    a = 0
    n_prime = n
    while n_prime % p == 0:
        n_prime //= p
        a += 1
    b = nt.valuation(n_prime, 2)
    return p, a, n_prime, b, n_prime >> b


def component_counts(q: int, n: int) -> tuple[dict[int, int], dict[int, int]]:
    """|F_k| for non-exceptional and |F^eps_k| for exceptional k | n'.

    |F_k| = tau_k phi(k) / ord_k(q) and |F^eps_k| = tau_k phi(k) / (2 ord_k(q));
    both divisions are exact.
    """
    if not is_regular(q, n):
        raise NotRegular(f"({q}, {n}) is not regular")
    _, _, n_prime, _, _ = _pair_parts(q, n)
    f_counts: dict[int, int] = {}
    f_eps: dict[int, int] = {}
    for k in nt.divisors(n_prime):
        tau = nt.central_index(q, k)
        o = nt.mult_order(q, k)
        phi = nt.euler_phi(k)
        if is_exceptional_divisor(q, k):
            num = tau * phi
            if num % (2 * o):
                raise AssertionError(f"|F^eps_{k}| not integral for q={q}")
            f_eps[k] = num // (2 * o)
        else:
            num = tau * phi
            if num % o:
                raise AssertionError(f"|F_{k}| not integral for q={q}")
            f_counts[k] = num // o
    return f_counts, f_eps


def profile(q: int, n: int, with_omega: bool = True, factor_budget: float | None = None) -> PairProfile:
    """Assemble the full PairProfile; requires a regular pair."""
    if not is_regular(q, n):
        raise NotRegular(f"({q}, {n}) is not regular")
    p, a, n_prime, b, n_bar = _pair_parts(q, n)
    e = nt.valuation(q * q - 1, 2) if q % 2 else None

    partition = {
        j: tuple(sorted(2**j * l for l in nt.divisors(n_bar))) for j in range(b + 1)
    }
    f_counts, f_eps = component_counts(q, n)
    set_e = frozenset(f_eps)

    if q % 4 == 3 and b >= 1:
        n1 = set(partition[0]) | set(partition[1])
        if b >= 2:
            n1 |= set(partition[2])
        n2: set[int] = set()
        assert e is not None
        if b > e:
            for j in range(e + 1, b + 1):
                n2 |= set(partition[j])
        expected_e = set()
        for j in range(3, min(b, e) + 1):
            expected_e |= set(partition[j])
        if expected_e != set_e:
            raise AssertionError(f"exceptional set mismatch for ({q}, {n})")
    else:
        n1 = set(f_counts)
        n2 = set()

    omega = None
    if with_omega:
        omega = nt.factorize(q**n - 1, time_budget=factor_budget).omega

    big_omega = sum(f_counts.values())
    big_omega_eps = sum(f_eps.values())
    return PairProfile(
        q=q,
        n=n,
        p=p,
        a=a,
        n_prime=n_prime,
        b=b,
        n_bar=n_bar,
        e=e,
        divisor_partition=partition,
        set_N_prime=frozenset(n1),
        set_N_doubleprime=frozenset(n2),
        set_E=set_e,
        F_counts=f_counts,
        F_eps_counts=f_eps,
        Omega=big_omega,
        Omega_eps=big_omega_eps,
        Omega_c=big_omega + 3 * big_omega_eps,
        omega=omega,
        tau={k: nt.central_index(q, k) for k in nt.divisors(n_prime)},
    )


# ---------------------------------------------------------------------------
# Existence criteria
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CriterionReport:
    """Exact verdict of the character-sum existence criterion."""

    pair: tuple[int, int]
    lhs: int | None  # q^{n/2} when n is even, else None (compare squared)
    rhs: int  # (2^omega - 1)(2^{Omega_c} - 1)
    holds: bool  # q^n > rhs^2, integer comparison
    detail: dict


def sufficient_criterion(
    q: int,
    n: int,
    allow_any_regular: bool = False,
    factor_budget: float | None = None,
) -> CriterionReport:
    """sqrt(q^n) > (2^omega - 1)(2^{Omega_c} - 1), compared as q^n > rhs^2.

    The stated hypotheses are q = 3 mod 4 and n even; pass allow_any_regular
    to evaluate other regular pairs (their exceptional set is empty).
    """
    if not is_regular(q, n):
        raise NotRegular(f"({q}, {n}) is not regular")
    if not allow_any_regular:
        if n % 2:
            raise WrongParity(f"criterion stated for even n, got n={n}")
        if q % 4 != 3:
            raise WrongParity(f"criterion stated for q = 3 mod 4, got q={q}")
    prof = profile(q, n, with_omega=True, factor_budget=factor_budget)
    omega = prof.omega
    assert omega is not None
    rhs = (2**omega - 1) * (2**prof.Omega_c - 1)
    qn = q**n
    holds = qn > rhs * rhs
    half = q ** (n // 2) if n % 2 == 0 else None
    return CriterionReport(
        pair=(q, n),
        lhs=half,
        rhs=rhs,
        holds=holds,
        detail={
            "omega": omega,
            "Omega": prof.Omega,
            "Omega_eps": prof.Omega_eps,
            "Omega_c": prof.Omega_c,
            "two_power": 2 ** (omega + prof.Omega_c),
            "half_power": half,
            "q_n": qn,
            "rhs_squared": rhs * rhs,
            "decided_by": "exact",
        },
    )


@dataclass(frozen=True)
class WeakReport:
    """Verdict of the relaxed (factorization-free) criterion."""

    pair: tuple[int, int]
    branch: str  # "4|n" or "n=2 mod 4"
    lhs: Fraction
    holds: bool  # lhs <= log2(q), certified by 2^A <= q^B
    detail: dict


def weak_criterion(q: int, n: int) -> WeakReport:
    """16/n + 9/(4 p^a) <= log2(q) for 4 | n, 16/n + 3/p^a <= log2(q) else.

    The comparison against log2(q) is certified exactly: with lhs = A/B in
    lowest terms, lhs <= log2(q) iff 2^A <= q^B.
    """
    if not is_regular(q, n):
        raise NotRegular(f"({q}, {n}) is not regular")
    if n % 2:
        raise WrongParity(f"weak criterion needs even n, got {n}")
    p, a, _, _, _ = _pair_parts(q, n)
    pa = p**a
    if n % 4 == 0:
        lhs = Fraction(16, n) + Fraction(9, 4 * pa)
        branch = "4|n"
    else:
        lhs = Fraction(16, n) + Fraction(3, pa)
        branch = "n=2 mod 4"
    holds = 2**lhs.numerator <= q**lhs.denominator
    return WeakReport(
        pair=(q, n),
        branch=branch,
        lhs=lhs,
        holds=holds,
        detail={
            "lhs": str(lhs),
            "certificate": f"2^{lhs.numerator} <= {q}^{lhs.denominator}: {holds}",
        },
    )


def lambda_primes(ell: int) -> list[int]:
    """All primes below ell (the default witness set of the omega bound)."""
    return nt.primes_below(ell)


def _log2_bound(x: int, upper: bool, scale: int = 64) -> Fraction:
    """Dyadic rational bound on log2(x) with denominator ``scale``."""
    y = x**scale
    bits = y.bit_length()
    exact_power = y == 1 << (bits - 1)
    if upper:
        t = bits - 1 if exact_power else bits  # ceil(log2 y)
    else:
        t = bits - 1  # floor(log2 y)
    return Fraction(t, scale)


def omega_upper_bound(q: int, n: int, ell: int = 64) -> Fraction:
    """Counting bound on the number of distinct primes of q^n - 1.

    Uses the prime set below ell with L = prod(primes); for ell = 64 this
    reduces to n/6 * log2(q) + 16/3 with floor(log2(L)) = 76 (log2(q) is
    replaced by a certified rational upper bound, so the result stays an
    upper bound).
    """
    if ell < 3:
        raise ValueError("ell must be at least 3")
    lam = lambda_primes(ell)
    big_l = reduce(lambda u, v: u * v, lam, 1)
    floor_log2_l = big_l.bit_length() - 1
    log2_q_ub = _log2_bound(q, upper=True)
    log2_ell_lb = Fraction(6) if ell == 64 else _log2_bound(ell, upper=False)
    return (n * log2_q_ub - floor_log2_l) / log2_ell_lb + len(lam)


def cube_divisor_criterion(q: int, n: int) -> WeakReport:
    """Sufficient criterion for regular non-completely-basic pairs with
    n not divisible by 8: uses the bound (2r-1)/r^2 * n' with r an odd
    prime whose square divides ord_{n'}(q) (then r^3 | n').

    Condition checked exactly: 16/n + (6r-3)/(r^2 p^a) <= log2(q), with the
    largest valid witness r.
    """
    if not is_regular(q, n):
        raise NotRegular(f"({q}, {n}) is not regular")
    p, a, n_prime, _, _ = _pair_parts(q, n)
    prof = nt.subord_profile(q, n_prime)
    witnesses = [r for r, alpha in prof.alpha.items() if r % 2 == 1 and alpha >= 2]
    if not witnesses:
        raise ValueError(f"({q}, {n}) has no odd prime with alpha(r) >= 2")
    r = max(witnesses)
    if n_prime % r**3:
        raise AssertionError(f"regularity should force {r}^3 | n' for ({q}, {n})")
    pa = p**a
    lhs = Fraction(16, n) + Fraction(6 * r - 3, r * r * pa)
    holds = 2**lhs.numerator <= q**lhs.denominator
    return WeakReport(
        pair=(q, n),
        branch=f"odd-cube r={r}",
        lhs=lhs,
        holds=holds,
        detail={"witness": r, "lhs": str(lhs)},
    )


# ---------------------------------------------------------------------------
# Exact count of completely normal elements
# ---------------------------------------------------------------------------


def count_cn(q: int, n: int) -> int:
    """Closed-form number of completely normal elements of the extension."""
    if not is_regular(q, n):
        raise NotRegular(f"({q}, {n}) is not regular")
    p, a, n_prime, _, _ = _pair_parts(q, n)
    pa = p**a
    total = 1
    for k in nt.divisors(n_prime):
        o = nt.mult_order(q, k)
        tau = nt.central_index(q, k)
        phi = nt.euler_phi(k)
        if o % tau:
            raise AssertionError("tau must divide ord_k(q)")
        if is_exceptional_divisor(q, k):
            base = q ** (2 * o // tau) - 4 * q ** (o // tau) + 3
            exp = tau * phi // (2 * o)
            if exp * 2 * o != tau * phi:
                raise AssertionError("non-integral exceptional exponent")
        else:
            base = q ** (o // tau) - 1
            exp = tau * phi // o
            if exp * o != tau * phi:
                raise AssertionError("non-integral exponent")
        total *= base**exp * q ** ((pa - 1) * phi)
    return total


# ---------------------------------------------------------------------------
# Range scans
# ---------------------------------------------------------------------------


def _prime_powers(lo: int, hi: int) -> list[int]:
    out = []
    for q in range(max(lo, 2), hi + 1):
        try:
            nt.split_prime_power(q)
        except Exception:
            continue
        out.append(q)
    return out


def _scan_one(pair: tuple[int, int], factor_budget: float | None) -> dict:
    q, n = pair
    row: dict = {"q": q, "n": n, "regular": True}
    if q % 4 == 3 and n % 2 == 0:
        weak = weak_criterion(q, n)
        row["weak_holds"] = weak.holds
        if weak.holds:
            row.update(
                {
                    "criterion_holds": True,
                    "decided_by": "weak",
                    "omega": None,
                    "Omega_c": None,
                }
            )
            return row
    else:
        row["weak_holds"] = None
    report = sufficient_criterion(q, n, allow_any_regular=True, factor_budget=factor_budget)
    row.update(
        {
            "criterion_holds": report.holds,
            "decided_by": "exact",
            "omega": report.detail["omega"],
            "Omega_c": report.detail["Omega_c"],
            "rhs": report.rhs,
            "lhs": report.lhs,
        }
    )
    return row


def scan_rows(
    q_max: int,
    n_max: int,
    *,
    q_min: int = 2,
    n_min: int = 1,
    n_mod: int | None = None,
    q_mod4: int | None = 3,
    factor_budget: float | None = 60.0,
    threads: int = 1,
) -> list[dict]:
    """Criterion verdict rows for every regular pair in range.

    Pairs certified by the relaxed criterion never factor q^n - 1 (the
    relaxed criterion implies the full one); the rest are decided exactly.
    Each (q, n) cell is independent; with threads > 1 cells are evaluated
    concurrently and merged back in deterministic ascending order.
    """
    pairs = []
    for q in _prime_powers(q_min, q_max):
        if q_mod4 is not None and q % 4 != q_mod4:
            continue
        for n in range(max(n_min, 1), n_max + 1):
            if n_mod is not None and n % n_mod:
                continue
            if is_regular(q, n):
                pairs.append((q, n))
    if threads > 1 and len(pairs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda pr: _scan_one(pr, factor_budget), pairs))
    return [_scan_one(pair, factor_budget) for pair in pairs]


def scan_pairs(
    q_max: int,
    n_max: int,
    *,
    q_min: int = 2,
    n_min: int = 1,
    n_mod: int | None = None,
    q_mod4: int | None = 3,
    factor_budget: float | None = 60.0,
    threads: int = 1,
) -> list[CriterionReport]:
    """Criterion failures over the range, ascending (q, n).

    ``threads`` > 1 evaluates the exact verdicts concurrently; the result
    order is unaffected (ordered reduction).
    """
    rows = scan_rows(
        q_max,
        n_max,
        q_min=q_min,
        n_min=n_min,
        n_mod=n_mod,
        q_mod4=q_mod4,
        factor_budget=factor_budget,
        threads=threads,
    )
    return [
        sufficient_criterion(
            r["q"], r["n"], allow_any_regular=True, factor_budget=factor_budget
        )
        for r in rows
        if not r["criterion_holds"]
    ]
