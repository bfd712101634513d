"""Prime and extension fields F_{p^m} as quotients F_p[x]/(f).

A FieldCtx fixes the characteristic p, the degree m and a monic irreducible
modulus f; it is immutable after construction and safe to share across
threads.  Elements are coefficient vectors in the polynomial basis
(index i = coefficient of x^i), wrapped in FieldElem.

Element enumeration order ("lex order") compares coefficient tuples
(c_0, c_1, ..., c_{m-1}) lexicographically, c_0 most significant; index 0 is
the zero element.  The default modulus is the lexicographically smallest
monic irreducible of the requested degree, coefficients compared as integer
tuples with the constant term last, so contexts reproduce across runs.

Frobenius maps z -> z^{p^e} are precomputed as F_p-matrices (degree <= 64)
because enumeration workloads apply them millions of times.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from . import fplinalg, nt, polytext
from .errors import (
    DivisionByZero,
    MixedContext,
    NotADivisor,
    NotInSubfield,
    NotIrreducible,
    NotPrime,
    OrderUnavailable,
    ZeroElement,
)

_FROB_MATRIX_MAX_DEGREE = 64


# ---------------------------------------------------------------------------
# Low-level polynomial arithmetic on little-endian int lists mod p.
# Only used for modulus validation and Frobenius table construction;
# general polynomial arithmetic lives in cnbase.poly.
# ---------------------------------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([v % p for v in out])


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    # f monic
    a = list(a)
    df = len(f) - 1
    while len(a) - 1 >= df and a:
        c = a[-1] % p
        if c:
            shift = len(a) - 1 - df
            for i in range(df):
                a[shift + i] = (a[shift + i] - c * f[i]) % p
        a.pop()
    return _trim(a)


def _ppowmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    b = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, b, p), f, p)
        b = _pmod(_pmul(b, b, p), f, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([v % p for v in a]), _trim([v % p for v in b])
    while b:
        lead_inv = pow(b[-1], p - 2, p)
        bm = [v * lead_inv % p for v in b]
        a, b = b, _pmod(a, bm, p)
    if a:
        lead_inv = pow(a[-1], p - 2, p)
        a = [v * lead_inv % p for v in a]
    return a


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _is_irreducible_int(f: list[int], p: int) -> bool:
    """Rabin irreducibility test for a monic f over F_p."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(m):
        h = _ppowmod(h, p, f, p)
    if _psub(h, x, p):
        return False  # x^(p^m) != x mod f
    for r in nt.factorize(m).primes:
        t = m // r
        h = x
        for _ in range(t):
            h = _ppowmod(h, p, f, p)
        if _pgcd(_psub(h, x, p), f, p) != [1]:
            return False
    return True


# ---------------------------------------------------------------------------
# Field elements and contexts
# ---------------------------------------------------------------------------


class FieldElem:
    """Element of a FieldCtx: an immutable coefficient vector mod p."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: "FieldCtx", coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def _same_ctx(self, other: "FieldElem") -> None:
        if self.ctx is not other.ctx:
            raise MixedContext(f"elements of {self.ctx} and {other.ctx}")

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((id(self.ctx), self.coeffs))

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._same_ctx(other)
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        self._same_ctx(other)
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FieldElem":
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._same_ctx(other)
        return FieldElem(self.ctx, self.ctx._mul_coeffs(self.coeffs, other.coeffs))

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        return self * other.inv()

    def __pow__(self, e: int) -> "FieldElem":
        return self.ctx.pow(self, e)

    def inv(self) -> "FieldElem":
        return self.ctx.inv(self)

    def to_vector(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __repr__(self) -> str:
        return f"FieldElem({polytext.format_int_poly(self.coeffs)} in {self.ctx})"


class FieldCtx:
    """A concrete field F_{p^m} with precomputed Frobenius machinery."""

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        if not nt.is_prime(p):
            raise NotPrime(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError(f"degree must be >= 1, got {m}")
        mod = tuple(c % p for c in modulus)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {m}")
        if not _is_irreducible_int(list(mod), p):
            raise NotIrreducible(
                f"{polytext.format_int_poly(mod)} is reducible over F_{p}"
            )
        self.p = p
        self.m = m
        self.modulus = mod
        self.size = p**m
        self.order = self.size - 1  # multiplicative group order
        # Reduction rows: x^{m+t} mod f for t = 0 .. m-2.
        rows = []
        cur = [(-c) % p for c in mod[:m]]  # x^m mod f
        rows.append(tuple(cur))
        for _ in range(m - 2):
            nxt = [0] + cur[: m - 1]
            top = cur[m - 1]
            if top:
                nxt = [(nv + top * rv) % p for nv, rv in zip(nxt, rows[0])]
            rows.append(tuple(nxt))
            cur = nxt
        self._red = rows
        self._frob_cache: dict[int, np.ndarray] = {}
        self._primitive: FieldElem | None = None
        self._trace_vec: tuple[int, ...] | None = None

    # -- constructors -------------------------------------------------------

    def zero(self) -> FieldElem:
        return FieldElem(self, (0,) * self.m)

    def one(self) -> FieldElem:
        return FieldElem(self, (1,) + (0,) * (self.m - 1))

    def scalar(self, c: int) -> FieldElem:
        return FieldElem(self, (c % self.p,) + (0,) * (self.m - 1))

    def gen(self) -> FieldElem:
        """The residue class of x (equals -f_0 in a prime field)."""
        if self.m == 1:
            return self.scalar(-self.modulus[0])
        return FieldElem(self, (0, 1) + (0,) * (self.m - 2))

    def elem(self, coeffs: Sequence[int]) -> FieldElem:
        if len(coeffs) > self.m:
            raise ValueError(f"too many coefficients for degree {self.m}")
        padded = tuple(c % self.p for c in coeffs) + (0,) * (self.m - len(coeffs))
        return FieldElem(self, padded)

    # -- enumeration --------------------------------------------------------

    def from_lex_index(self, i: int) -> FieldElem:
        """Element at position i of the lex enumeration (0 = zero element)."""
        digits = []
        for _ in range(self.m):
            i, d = divmod(i, self.p)
            digits.append(d)
        return FieldElem(self, tuple(reversed(digits)))

    def to_lex_index(self, z: FieldElem) -> int:
        i = 0
        for c in z.coeffs:
            i = i * self.p + c
        return i

    def elements(self) -> Iterator[FieldElem]:
        """All elements in lex order (zero first)."""
        for i in range(self.size):
            yield self.from_lex_index(i)

    def lex_vectors(self, start: int, stop: int) -> np.ndarray:
        """Coefficient rows for lex indices [start, stop), shape (n, m)."""
        idx = np.arange(start, stop, dtype=np.int64)
        out = np.empty((len(idx), self.m), dtype=np.int64)
        for j in range(self.m - 1, -1, -1):
            out[:, j] = idx % self.p
            idx //= self.p
        return out

    def elem_from_vector(self, row: np.ndarray) -> FieldElem:
        return FieldElem(self, tuple(int(v) % self.p for v in row))

    # -- arithmetic ---------------------------------------------------------

    def _mul_coeffs(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p, m = self.p, self.m
        if m == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        for d in range(2 * m - 2, m - 1, -1):
            c = prod[d] % p
            if c:
                row = self._red[d - m]
                for t in range(m):
                    prod[t] += c * row[t]
        return tuple(v % p for v in prod[:m])

    def pow(self, z: FieldElem, e: int) -> FieldElem:
        if e < 0:
            return self.pow(self.inv(z), -e)
        result = self.one()
        base = z
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inv(self, z: FieldElem) -> FieldElem:
        if not z:
            raise DivisionByZero("inverse of zero")
        return self.pow(z, self.size - 2)

    # -- Frobenius ----------------------------------------------------------

    def frob_matrix(self, e: int) -> np.ndarray:
        """Matrix of z -> z^{p^e} acting on coefficient columns."""
        e %= self.m
        cached = self._frob_cache.get(e)
        if cached is not None:
            return cached
        if 1 not in self._frob_cache and self.m > 1:
            xp = _ppowmod([0, 1], self.p, list(self.modulus), self.p)
            cols = []
            col = [1] + [0] * (self.m - 1)
            for j in range(self.m):
                cols.append(tuple(col[: self.m] + [0] * (self.m - len(col))))
                if j < self.m - 1:
                    col = list(self._mul_coeffs(cols[-1], tuple(xp + [0] * (self.m - len(xp)))))
            self._frob_cache[1] = np.array(cols, dtype=np.int64).T % self.p
        if self.m == 1:
            mat = fplinalg.identity(1)
        else:
            mat = fplinalg.mat_pow(self._frob_cache[1], e, self.p)
        self._frob_cache[e] = mat
        return mat

    def frobenius(self, z: FieldElem, e: int) -> FieldElem:
        """z^{p^e}; e may be any integer (reduced mod m)."""
        e %= self.m
        if e == 0:
            return z
        if self.m <= _FROB_MATRIX_MAX_DEGREE:
            mat = self.frob_matrix(e)
            vec = (mat @ np.array(z.coeffs, dtype=np.int64)) % self.p
            return FieldElem(self, tuple(int(v) for v in vec))
        return self.pow(z, self.p**e)

    def trace_to_prime(self, z: FieldElem) -> int:
        """Absolute trace Tr_{F_{p^m}/F_p}(z), returned as an int in [0, p)."""
        if self._trace_vec is None:
            total = np.zeros((self.m, self.m), dtype=np.int64)
            for e in range(self.m):
                total = (total + self.frob_matrix(e)) % self.p
            self._trace_vec = tuple(int(v) for v in total[0])
        return sum(t * c for t, c in zip(self._trace_vec, z.coeffs)) % self.p

    # -- multiplicative structure -------------------------------------------

    def is_primitive(self, z: FieldElem) -> bool:
        """True iff z generates the multiplicative group."""
        if not z:
            raise ZeroElement("0 cannot be primitive")
        one = self.one()
        for r in nt.factorize(self.order).primes:
            if self.pow(z, self.order // r) == one:
                return False
        return True

    def primitive_element(self) -> FieldElem:
        """Deterministic primitive element: first in lex order."""
        if self._primitive is None:
            for i in range(1, self.size):
                z = self.from_lex_index(i)
                if self.is_primitive(z):
                    self._primitive = z
                    break
            else:  # pragma: no cover - the group is cyclic, cannot happen
                raise AssertionError("no primitive element found")
        return self._primitive

    def mult_order(self, z: FieldElem) -> int:
        """Multiplicative order of a nonzero element."""
        if not z:
            raise ZeroElement("0 has no multiplicative order")
        o = self.order
        for r in nt.factorize(self.order).primes:
            while o % r == 0 and self.pow(z, o // r) == self.one():
                o //= r
        return o

    def mul_matrix(self, c: FieldElem) -> np.ndarray:
        """Matrix of multiplication by a fixed element c."""
        cols = []
        basis = self.one()
        x = self.gen()
        for _ in range(self.m):
            cols.append((c * basis).coeffs)
            basis = basis * x
        return np.array(cols, dtype=np.int64).T

    def __repr__(self) -> str:
        return f"F_{self.p}^{self.m}"


@lru_cache(maxsize=256)
def _build_field_cached(p: int, m: int, modulus: tuple[int, ...]) -> FieldCtx:
    return FieldCtx(p, m, modulus)


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over F_p.

    Coefficients are compared as the integer tuple (c_{m-1}, ..., c_1, c_0),
    i.e. constant term last.
    """
    if not nt.is_prime(p):
        raise NotPrime(f"characteristic {p} is not prime")
    for i in range(p**m):
        digits = []
        k = i
        for _ in range(m):
            k, d = divmod(k, p)
            digits.append(d)  # little-endian: c_0 first
        cand = digits + [1]
        if _is_irreducible_int(list(cand), p):
            return tuple(cand)
    raise AssertionError(f"no irreducible of degree {m} over F_{p}")  # pragma: no cover


def build_field(p: int, m: int, modulus=None) -> FieldCtx:
    """Construct (or fetch the cached) F_{p^m}.

    ``modulus`` may be omitted (deterministic default policy), a little-endian
    coefficient sequence, or a polynomial text string such as
    ``"x^8+x^7+2x^3+2x^2+2"``.
    """
    if modulus is None:
        mod = default_modulus(p, m)
    elif isinstance(modulus, str):
        mod = tuple(c % p for c in polytext.parse_int_poly(modulus))
    else:
        mod = tuple(c % p for c in modulus)
    return _build_field_cached(p, m, mod)


def primitive_root_of_unity(ctx: FieldCtx, k: int) -> FieldElem:
    """Deterministic element of multiplicative order exactly k."""
    if k < 1 or ctx.order % k:
        raise OrderUnavailable(f"no element of order {k} in {ctx}")
    g = ctx.primitive_element()
    return ctx.pow(g, ctx.order // k)


# ---------------------------------------------------------------------------
# Subfield embeddings
# ---------------------------------------------------------------------------


class SubfieldEmbedding:
    """Ring embedding of F_{p^d} into F_{p^M} fixing the prime field.

    The image of the subfield generator is the lex-least root of the subfield
    modulus inside the big field, which makes the embedding deterministic;
    any other root gives an isomorphic embedding.
    """

    def __init__(self, sub: FieldCtx, big: FieldCtx, image_of_generator: FieldElem):
        self.sub = sub
        self.big = big
        self.image_of_generator = image_of_generator
        cols = []
        power = big.one()
        for _ in range(sub.m):
            cols.append(power.coeffs)
            power = power * image_of_generator
        self.matrix = np.array(cols, dtype=np.int64).T  # shape (big.m, sub.m)
        self._section_data: tuple[list[int], np.ndarray] | None = None

    def map(self, z: FieldElem) -> FieldElem:
        if z.ctx is not self.sub:
            raise MixedContext("element does not live in the subfield context")
        vec = (self.matrix @ np.array(z.coeffs, dtype=np.int64)) % self.big.p
        return FieldElem(self.big, tuple(int(v) for v in vec))

    def _section_solver(self) -> tuple[list[int], np.ndarray]:
        if self._section_data is None:
            _, pivots = fplinalg.rref(self.matrix.T, self.big.p)
            # pivots index rows of `matrix` forming an invertible d x d block
            block = self.matrix[pivots, :]
            self._section_data = (pivots, fplinalg.mat_inv(block, self.big.p))
        return self._section_data

    def section(self, z: FieldElem) -> FieldElem:
        """Preimage in the subfield; raises NotInSubfield when z is outside."""
        if z.ctx is not self.big:
            raise MixedContext("element does not live in the big context")
        rows, inv = self._section_solver()
        vec = np.array(z.coeffs, dtype=np.int64)
        x = (inv @ vec[rows]) % self.big.p
        if np.any((self.matrix @ x) % self.big.p != vec % self.big.p):
            raise NotInSubfield(f"{z!r} is not in the embedded subfield")
        return FieldElem(self.sub, tuple(int(v) for v in x))

    def contains(self, z: FieldElem) -> bool:
        try:
            self.section(z)
            return True
        except NotInSubfield:
            return False


def embed_subfield(big: FieldCtx, d: int, sub: FieldCtx | None = None) -> SubfieldEmbedding:
    """Embedding of the degree-d subfield (d divides big.m, absolute degrees)."""
    if big.m % d:
        raise NotADivisor(f"{d} does not divide {big.m}")
    if sub is None:
        sub = build_field(big.p, d)
    if sub.p != big.p or sub.m != d:
        raise ValueError("subfield context does not match the requested degree")
    if d == big.m and sub.modulus == big.modulus:
        return SubfieldEmbedding(sub, big, big.gen())
    if d == 1:
        return SubfieldEmbedding(sub, big, big.scalar(-sub.modulus[0]))
    from . import poly  # deferred: poly depends on this module

    f_big = poly.Poly.from_ints(big, sub.modulus)
    root = poly.one_root(f_big)
    if root is None:  # pragma: no cover - d | m guarantees splitting
        raise AssertionError("subfield modulus has no root in the big field")
    # All d roots form the orbit of `root` under z -> z^p; pick the lex-least.
    conjugates = []
    z = root
    for _ in range(d):
        conjugates.append(z)
        z = big.frobenius(z, 1)
    image = min(conjugates, key=lambda w: w.coeffs)
    # The chosen image must actually be a root.
    acc = big.zero()
    power = big.one()
    for c in sub.modulus:
        acc = acc + big.scalar(c) * power
        power = power * image
    if acc:
        raise AssertionError("embedding root fails to satisfy the subfield modulus")
    return SubfieldEmbedding(sub, big, image)
