"""Dense univariate polynomial arithmetic over any FieldCtx.

Coefficients are FieldElem values of a single context; polynomials with
coefficients in different contexts never mix implicitly -- use
``map_coefficients`` with an explicit embedding.  The zero polynomial has
degree -infinity.

Factorization runs squarefree split, then distinct-degree, then equal-degree
splitting driven by a seeded deterministic pseudorandom sequence, so the
reported factor order is reproducible; the seed is recorded in the output.
Degrees stay small here (<= 2^12), so schoolbook multiplication is enough.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

from . import field as ff
from . import nt, polytext
from .errors import (
    CharacteristicDividesK,
    MixedContext,
    NotMonic,
    ZeroPolynomial,
)

NEG_INF = float("-inf")


class Poly:
    """Dense polynomial over a fixed FieldCtx; index i = coefficient of x^i."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: ff.FieldCtx, coeffs: Iterable[ff.FieldElem]):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ctx: ff.FieldCtx) -> "Poly":
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx: ff.FieldCtx) -> "Poly":
        return cls(ctx, (ctx.one(),))

    @classmethod
    def x(cls, ctx: ff.FieldCtx) -> "Poly":
        return cls(ctx, (ctx.zero(), ctx.one()))

    @classmethod
    def from_ints(cls, ctx: ff.FieldCtx, ints: Iterable[int]) -> "Poly":
        return cls(ctx, tuple(ctx.scalar(c) for c in ints))

    @classmethod
    def from_string(cls, ctx: ff.FieldCtx, text: str) -> "Poly":
        return cls.from_ints(ctx, polytext.parse_int_poly(text))

    @classmethod
    def x_pow_minus_one(cls, ctx: ff.FieldCtx, e: int) -> "Poly":
        cs = [ctx.zero()] * (e + 1)
        cs[0] = -ctx.one()
        cs[e] = ctx.one()
        return cls(ctx, cs)

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self):
        """Degree, with the zero polynomial at -infinity."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def lead(self) -> ff.FieldElem:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ctx.one()

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.ctx.one()

    def __getitem__(self, i: int) -> ff.FieldElem:
        return self.coeffs[i] if i < len(self.coeffs) else self.ctx.zero()

    def _same_ctx(self, other: "Poly") -> None:
        if self.ctx is not other.ctx:
            raise MixedContext(
                "polynomials over different contexts; use map_coefficients"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((id(self.ctx), self.coeffs))

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._same_ctx(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ctx, (self[i] + other[i] for i in range(n)))

    def __sub__(self, other: "Poly") -> "Poly":
        self._same_ctx(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ctx, (self[i] - other[i] for i in range(n)))

    def __neg__(self) -> "Poly":
        return Poly(self.ctx, (-c for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        self._same_ctx(other)
        if not self or not other:
            return Poly.zero(self.ctx)
        out = [self.ctx.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return Poly(self.ctx, out)

    def scale(self, c: ff.FieldElem) -> "Poly":
        return Poly(self.ctx, (a * c for a in self.coeffs))

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._same_ctx(other)
        if not other:
            raise ZeroPolynomial("division by the zero polynomial")
        ctx = self.ctx
        lead_inv = other.lead.inv()
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(ctx), self
        quot = [ctx.zero()] * (dq + 1)
        for shift in range(dq, -1, -1):
            c = rem[shift + len(other.coeffs) - 1] * lead_inv
            quot[shift] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[shift + i] = rem[shift + i] - c * b
        return Poly(ctx, quot), Poly(ctx, rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ValueError("division is not exact")
        return q

    def monic(self) -> "Poly":
        if not self:
            return self
        return self.scale(self.lead.inv())

    def pow(self, e: int) -> "Poly":
        result = Poly.one(self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self) -> "Poly":
        ctx = self.ctx
        return Poly(
            ctx,
            (ctx.scalar(i) * c for i, c in enumerate(self.coeffs) if i >= 1),
        )

    def evaluate(self, z: ff.FieldElem) -> ff.FieldElem:
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def inflate(self, k: int) -> "Poly":
        """Substitute x -> x^k."""
        if not self:
            return self
        out = [self.ctx.zero()] * ((len(self.coeffs) - 1) * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return Poly(self.ctx, out)

    def map_coefficients(self, fn: Callable[[ff.FieldElem], ff.FieldElem], new_ctx: ff.FieldCtx) -> "Poly":
        """Apply fn (e.g. a SubfieldEmbedding.map) to every coefficient."""
        return Poly(new_ctx, (fn(c) for c in self.coeffs))

    def to_string(self, var: str = "x") -> str:
        """Text form; only valid for prime-field-coefficient polynomials."""
        if self.ctx.m != 1 and any(any(c.coeffs[1:]) for c in self.coeffs):
            raise ValueError("text format requires prime-field coefficients")
        ints = tuple(c.coeffs[0] for c in self.coeffs)
        return polytext.format_int_poly(ints, var)

    def __repr__(self) -> str:
        try:
            return f"Poly({self.to_string()} over {self.ctx})"
        except ValueError:
            return f"Poly(deg {self.degree} over {self.ctx})"


# ---------------------------------------------------------------------------
# gcd and modular helpers
# ---------------------------------------------------------------------------


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic polynomial gcd."""
    a._same_ctx(b)
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s*a + t*b = g, g monic (or zero)."""
    a._same_ctx(b)
    ctx = a.ctx
    r0, r1 = a, b
    s0, s1 = Poly.one(ctx), Poly.zero(ctx)
    t0, t1 = Poly.zero(ctx), Poly.one(ctx)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0:
        c = r0.lead.inv()
        r0, s0, t0 = r0.scale(c), s0.scale(c), t0.scale(c)
    return r0, s0, t0


def pow_mod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.one(base.ctx)
    b = base % mod
    while e:
        if e & 1:
            result = result * b % mod
        b = b * b % mod
        e >>= 1
    return result


def is_irreducible(f: Poly) -> bool:
    """Rabin test over the coefficient field F_Q, Q = ctx.size."""
    deg = len(f.coeffs) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    q = f.ctx.size
    fm = f.monic()
    x = Poly.x(f.ctx)
    h = x
    for _ in range(deg):
        h = pow_mod(h, q, fm)
    if h != x % fm:
        return False
    for r in nt.factorize(deg).primes:
        h = x
        for _ in range(deg // r):
            h = pow_mod(h, q, fm)
        if gcd(h - x, fm).degree != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Factorization: squarefree / distinct-degree / equal-degree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyFactorization:
    """unit * prod(factor**exponent) == input; factors monic irreducible,
    sorted by (degree, coefficient tuple)."""

    input: Poly
    unit: ff.FieldElem
    factors: tuple[tuple[Poly, int], ...]
    seed: int

    def remultiply(self) -> Poly:
        acc = Poly.one(self.input.ctx).scale(self.unit)
        for f, e in self.factors:
            acc = acc * f.pow(e)
        return acc


def _factor_key(f: Poly) -> tuple:
    return (len(f.coeffs), tuple(c.coeffs for c in reversed(f.coeffs)))


def _pth_root(f: Poly) -> Poly:
    """Inverse of x -> x^p on polynomials of the form g(x^p)."""
    ctx = f.ctx
    p = ctx.p
    root_exp = ctx.size // p  # c -> c^(Q/p) is the inverse of c -> c^p
    out = []
    for i in range(0, len(f.coeffs), p):
        out.append(ctx.pow(f.coeffs[i], root_exp))
    return Poly(ctx, out)


def _squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """[(g_i, e_i)] with f = prod g_i^{e_i}, g_i squarefree, e_i distinct."""
    ctx = f.ctx
    p = ctx.p
    out: list[tuple[Poly, int]] = []

    def recurse(g: Poly, mult: int) -> None:
        if g.degree == 0:
            return
        d = g.derivative()
        if not d:
            recurse(_pth_root(g), mult * p)
            return
        c = gcd(g, d)
        w = g.exact_div(c)
        # w is the product of squarefree factors with exponent not divisible by p
        i = 1
        while not w.is_one():
            y = gcd(w, c)
            part = w.exact_div(y)
            if part.degree >= 1:
                out.append((part.monic(), i * mult))
            w = y
            c = c.exact_div(y)
            i += 1
        if not c.is_one():
            recurse(_pth_root(c), mult * p)

    recurse(f.monic(), 1)
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """[(product of irreducibles of degree d, d)] for monic squarefree f."""
    ctx = f.ctx
    q = ctx.size
    out = []
    x = Poly.x(ctx)
    h = x
    rem = f
    d = 0
    while rem.degree > 0:
        d += 1
        if 2 * d > rem.degree:
            out.append((rem, int(rem.degree)))
            break
        h = pow_mod(h, q, rem)
        g = gcd(h - x, rem)
        if g.degree >= 1:
            out.append((g, d))
            rem = rem.exact_div(g)
            h = h % rem
    return out


def _equal_degree_split(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Split monic squarefree f (all factors of degree d) into irreducibles."""
    ctx = f.ctx
    if f.degree == d:
        return [f]
    q = ctx.size

    def random_poly() -> Poly:
        deg = int(f.degree) - 1
        return Poly(
            ctx,
            tuple(ctx.from_lex_index(rng.randrange(ctx.size)) for _ in range(deg + 1)),
        )

    while True:
        a = random_poly()
        if a.degree < 1:
            continue
        g = gcd(a, f)
        if 0 < g.degree < f.degree:
            split = g
        else:
            if ctx.p == 2:
                # char 2: additive trace map of a modulo f
                t = a % f
                acc = t
                for _ in range(ctx.m * d - 1):
                    t = t * t % f
                    acc = (acc + t) % f
                split = gcd(acc, f)
            else:
                b = pow_mod(a, (q**d - 1) // 2, f)
                split = gcd(b - Poly.one(ctx), f)
            if not (0 < split.degree < f.degree):
                continue
        left = _equal_degree_split(split.monic(), d, rng)
        right = _equal_degree_split(f.exact_div(split.monic()).monic(), d, rng)
        return left + right


def factor(f: Poly, seed: int = 0) -> PolyFactorization:
    """Deterministic full factorization into monic irreducibles."""
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    unit = f.lead
    work = f.monic()
    rng = random.Random(seed)
    found: dict[Poly, int] = {}
    for sqfree, mult in _squarefree_decomposition(work):
        for same_deg, d in _distinct_degree(sqfree):
            for irr in _equal_degree_split(same_deg.monic(), d, rng):
                found[irr] = found.get(irr, 0) + mult
    factors = tuple(sorted(found.items(), key=lambda fe: _factor_key(fe[0])))
    return PolyFactorization(input=f, unit=unit, factors=factors, seed=seed)


def roots(f: Poly, seed: int = 0) -> list[ff.FieldElem]:
    """Roots of f in its coefficient field, ascending in lex order."""
    ctx = f.ctx
    x_q_minus_x = pow_mod(Poly.x(ctx), ctx.size, f) - Poly.x(ctx) % f
    linear_part = gcd(x_q_minus_x, f)
    out = []
    if linear_part.degree >= 1:
        for g, e in factor(linear_part, seed).factors:
            if len(g.coeffs) == 2:
                out.append(-g.coeffs[0])
    return sorted(out, key=lambda z: z.coeffs)


def one_root(f: Poly, seed: int = 0) -> ff.FieldElem | None:
    """One root of f in its coefficient field, or None.

    Cheaper than ``roots`` when only a single root is needed (it follows one
    branch of the equal-degree split); deterministic for a fixed seed.
    """
    ctx = f.ctx
    q = ctx.size
    fm = f.monic()
    lin = gcd(pow_mod(Poly.x(ctx), q, fm) - Poly.x(ctx) % fm, fm)
    if lin.degree < 1:
        return None
    rng = random.Random(seed)
    g = lin.monic()
    while g.degree > 1:
        deg = int(g.degree)
        a = Poly(
            ctx,
            tuple(ctx.from_lex_index(rng.randrange(ctx.size)) for _ in range(deg)),
        )
        if a.degree < 1:
            continue
        if ctx.p == 2:
            t = a % g
            cand_src = t
            for _ in range(ctx.m - 1):
                t = t * t % g
                cand_src = (cand_src + t) % g
            cand = gcd(cand_src, g)
        else:
            b = pow_mod(a, (q - 1) // 2, g)
            cand = gcd(b - Poly.one(ctx), g)
        if 0 < cand.degree < g.degree:
            other = g.exact_div(cand).monic()
            g = cand.monic() if cand.degree <= other.degree else other
    return -g.coeffs[0]


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and the polynomial-ring phi / mu
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _cyclotomic_int(k: int, p: int) -> tuple[int, ...]:
    prime = ff.build_field(p, 1)
    if k == 1:
        return (p - 1, 1)
    f = Poly.x_pow_minus_one(prime, k)
    for d in nt.divisors(k):
        if d < k:
            f = f.exact_div(Poly.from_ints(prime, _cyclotomic_int(d, p)))
    return tuple(c.coeffs[0] for c in f.coeffs)


def cyclotomic_poly(k: int, ctx: ff.FieldCtx) -> Poly:
    """The k-th cyclotomic polynomial reduced mod p, over ctx.

    Coefficients always lie in the prime field; requires gcd(k, p) = 1.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k % ctx.p == 0:
        raise CharacteristicDividesK(f"p={ctx.p} divides k={k}")
    return Poly.from_ints(ctx, _cyclotomic_int(k, ctx.p))


def poly_euler_phi(g: Poly, seed: int = 0) -> int:
    """Number of units of F_Q[x]/(g); multiplicative over coprime factors."""
    if not g:
        raise ZeroPolynomial("phi of the zero polynomial")
    if not g.is_monic():
        raise NotMonic(f"{g!r} is not monic")
    q = g.ctx.size
    total = 1
    for h, e in factor(g, seed).factors:
        delta = len(h.coeffs) - 1
        total *= q ** (delta * e) - q ** (delta * (e - 1))
    return total


def poly_moebius(g: Poly, seed: int = 0) -> int:
    """Polynomial Moebius function: 0 unless squarefree, else (-1)^#factors."""
    if not g:
        raise ZeroPolynomial("mu of the zero polynomial")
    if not g.is_monic():
        raise NotMonic(f"{g!r} is not monic")
    fac = factor(g, seed)
    if any(e > 1 for _, e in fac.factors):
        return 0
    return -1 if len(fac.factors) % 2 else 1


def factor_xm_minus_1(ctx: ff.FieldCtx, m: int, seed: int = 0) -> PolyFactorization:
    """Factorization of x^m - 1 over ctx, via x^m - 1 = (x^{m'} - 1)^{p^a}."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    p = ctx.p
    a = nt.valuation(m, p)
    m_prime = m // p**a
    found: dict[Poly, int] = {}
    for k in nt.divisors(m_prime):
        phi_k = cyclotomic_poly(k, ctx)
        for irr, e in factor(phi_k, seed).factors:
            found[irr] = found.get(irr, 0) + e * p**a
    factors = tuple(sorted(found.items(), key=lambda fe: _factor_key(fe[0])))
    return PolyFactorization(
        input=Poly.x_pow_minus_one(ctx, m),
        unit=ctx.one(),
        factors=factors,
        seed=seed,
    )
