"""Frobenius-module structure of F_{q^n} over a designated base F_q.

A ModuleFrame fixes the big field F_{q^n} (one absolute context over the
prime field; intermediate fields enter only through embeddings), the base
Frobenius sigma: z -> z^q, and caches per divisor d of n the subfield
F_{q^d}, its embedding and the factorization of x^{n/d} - 1 over it.

Polynomials f over F_{q^d} act on the big field by f(sigma^d); every such
action is an F_p-linear map and is materialized once as an F_p-matrix, so
censuses reduce to batched integer matrix products.  q^d-orders are computed
per irreducible factor through a ladder of annihilator matrices, which
certifies minimality constructively.

Cyclotomic projectors are CRT idempotents of F_q[x]/(x^n - 1): c_k = 1 mod
Phi_k^{p^a} and 0 mod the cofactor; the component map is c_k(sigma).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from . import classify, field as ff, fplinalg, nt, poly
from .errors import (
    NotExceptional,
    NotInModule,
    NotRegular,
    TooLarge,
)

DEFAULT_BUDGET = 2**24
_CHUNK = 1 << 16


@dataclass
class _DivisorData:
    d: int
    sub: ff.FieldCtx
    emb: ff.SubfieldEmbedding
    xfact: poly.PolyFactorization  # x^{n/d} - 1 over sub


@dataclass
class _WData:
    """Machinery of one exceptional summand W_{k,f}."""

    k: int
    f: poly.Poly  # over F_{q^{tau}}
    tau: int
    delta: int
    annihilator_matrix: np.ndarray  # of f(x^2)^{p^a} at sigma^tau
    g_factors: tuple[poly.Poly, poly.Poly]  # f(x^2) = g1 g2 over F_{q^tau}
    h_factors: tuple[poly.Poly, poly.Poly]  # f(y) = h1 h2 over F_{q^{2tau}}
    g_ladders: tuple[list[np.ndarray], list[np.ndarray]]
    h_ladders: tuple[list[np.ndarray], list[np.ndarray]]


@dataclass(frozen=True)
class OrderPair:
    """Radical order pair of an element of W_{k,f}: one of the six lattice
    values (1,1), (f(x^2),h_i), (g_i,f), (f(x^2),f)."""

    k: int
    f: poly.Poly
    ord_Q: poly.Poly  # over F_{q^{tau}}: 1, g1, g2 or f(x^2)
    ord_Q2: poly.Poly  # over F_{q^{2tau}}: 1, h1, h2 or f(y)
    label: str


class ModuleFrame:
    """All module-theoretic operations for one extension F_{q^n}/F_q."""

    def __init__(self, q: int, n: int, modulus=None):
        p, a0 = nt.split_prime_power(q)
        self.q = q
        self.n = n
        self.p = p
        self.a0 = a0
        self.big = ff.build_field(p, a0 * n, modulus)
        a = 0
        n_prime = n
        while n_prime % p == 0:
            n_prime //= p
            a += 1
        self.a = a
        self.pa = p**a
        self.n_prime = n_prime
        self.regular = classify.is_regular(q, n)
        self.exceptional_divisors = frozenset(
            k for k in nt.divisors(n_prime) if classify.is_exceptional_divisor(q, k)
        )
        self._div: dict[int, _DivisorData] = {}
        self._op_mats: dict[tuple[int, poly.Poly], np.ndarray] = {}
        self._ladders: dict[int, list[tuple[poly.Poly, int, list[np.ndarray]]]] = {}
        self._projectors: dict[int, np.ndarray] = {}
        self._membership: dict[int, np.ndarray] = {}
        self._cg_mats: dict[int, list[np.ndarray]] = {}
        self._module_basis: dict[int, np.ndarray] = {}
        self._wdata: dict[tuple[int, poly.Poly], _WData] = {}
        self._split_mats: dict[int, list[tuple[poly.Poly, np.ndarray]]] = {}

    # -- per-divisor lattice --------------------------------------------

    def divisor_data(self, d: int) -> _DivisorData:
        if self.n % d:
            raise ValueError(f"{d} does not divide n={self.n}")
        data = self._div.get(d)
        if data is None:
            if d == self.n:
                sub = self.big
                emb = ff.embed_subfield(self.big, self.big.m, sub=self.big)
            else:
                emb = ff.embed_subfield(self.big, self.a0 * d)
                sub = emb.sub
            xfact = poly.factor_xm_minus_1(sub, self.n // d)
            data = _DivisorData(d=d, sub=sub, emb=emb, xfact=xfact)
            self._div[d] = data
        return data

    def op_matrix(self, d: int, f: poly.Poly) -> np.ndarray:
        """F_p-matrix of f(sigma^d) where f has coefficients in F_{q^d}."""
        key = (d, f)
        mat = self._op_mats.get(key)
        if mat is not None:
            return mat
        data = self.divisor_data(d)
        if f.ctx is not data.sub:
            raise ValueError("polynomial not over the F_{q^d} context")
        big = self.big
        p = self.p
        step = big.frob_matrix(self.a0 * d)
        size = big.m
        if not f:
            mat = np.zeros((size, size), dtype=np.int64)
        else:
            mat = big.mul_matrix(data.emb.map(f.coeffs[-1]))
            for i in range(len(f.coeffs) - 2, -1, -1):
                mat = (mat @ step) % p
                c = f.coeffs[i]
                if c:
                    mat = (mat + big.mul_matrix(data.emb.map(c))) % p
        self._op_mats[key] = mat
        return mat

    def apply(self, d: int, f: poly.Poly, z: ff.FieldElem) -> ff.FieldElem:
        """f(sigma^d)(z)."""
        mat = self.op_matrix(d, f)
        vec = (mat @ np.array(z.coeffs, dtype=np.int64)) % self.p
        return self.big.elem_from_vector(vec)

    def _order_ladder(self, d: int) -> list[tuple[poly.Poly, int, list[np.ndarray]]]:
        """Per irreducible factor f of x^{n/d}-1: matrices of
        (x^{n/d}-1 / f^e) * f^j for j = 0..e-1 (j = e is the zero map)."""
        ladder = self._ladders.get(d)
        if ladder is not None:
            return ladder
        data = self.divisor_data(d)
        ladder = []
        for f, e in data.xfact.factors:
            cof = poly.Poly.one(data.sub)
            for g, eg in data.xfact.factors:
                if g != f:
                    cof = cof * g.pow(eg)
            mats = []
            cur = cof
            for _ in range(e):
                mats.append(self.op_matrix(d, cur))
                cur = cur * f
            ladder.append((f, e, mats))
        self._ladders[d] = ladder
        return ladder

    # -- orders and normality ---------------------------------------------

    def q_order(self, z: ff.FieldElem, d: int) -> poly.Poly:
        """Monic polynomial over F_{q^d} of least degree annihilating z."""
        data = self.divisor_data(d)
        vec = np.array(z.coeffs, dtype=np.int64)
        order = poly.Poly.one(data.sub)
        for f, e, mats in self._order_ladder(d):
            gamma = e
            for j, mat in enumerate(mats):
                if not ((mat @ vec) % self.p).any():
                    gamma = j
                    break
            if gamma:
                order = order * f.pow(gamma)
        return order

    def normal_test_matrices(self, d: int) -> list[np.ndarray]:
        """Maximal-proper-divisor matrices; z normal iff all are nonzero."""
        return [mats[-1] for _, _, mats in self._order_ladder(d)]

    def is_normal(self, z: ff.FieldElem, d: int) -> bool:
        vec = np.array(z.coeffs, dtype=np.int64)
        return all(((m @ vec) % self.p).any() for m in self.normal_test_matrices(d))

    def is_completely_normal(self, z: ff.FieldElem) -> bool:
        return all(self.is_normal(z, d) for d in nt.divisors(self.n))

    # -- cyclotomic decomposition ------------------------------------------

    def projector_matrix(self, k: int) -> np.ndarray:
        mat = self._projectors.get(k)
        if mat is not None:
            return mat
        if self.n_prime % k:
            raise ValueError(f"{k} does not divide n'={self.n_prime}")
        prime = ff.build_field(self.p, 1)
        a_poly = poly.cyclotomic_poly(k, prime).pow(self.pa)
        xn = poly.Poly.x_pow_minus_one(prime, self.n)
        b_poly = xn.exact_div(a_poly)
        g, s, t = poly.ext_gcd(a_poly, b_poly)
        if not g.is_one():
            raise AssertionError("cyclotomic factors are not coprime")
        c = t * b_poly % xn  # c = 1 mod A, 0 mod B
        base = self.divisor_data(1).sub
        c_base = poly.Poly.from_ints(base, tuple(v.coeffs[0] for v in c.coeffs))
        mat = self.op_matrix(1, c_base)
        self._projectors[k] = mat
        return mat

    def membership_matrix(self, k: int) -> np.ndarray:
        """Matrix of Phi_k(sigma)^{p^a}; kernel is the cyclotomic module."""
        mat = self._membership.get(k)
        if mat is None:
            base = self.divisor_data(1).sub
            ann = poly.cyclotomic_poly(k, base).pow(self.pa)
            mat = self.op_matrix(1, ann)
            self._membership[k] = mat
        return mat

    def cyclotomic_component(self, z: ff.FieldElem, k: int) -> ff.FieldElem:
        vec = (self.projector_matrix(k) @ np.array(z.coeffs, dtype=np.int64)) % self.p
        return self.big.elem_from_vector(vec)

    def components(self, z: ff.FieldElem) -> dict[int, ff.FieldElem]:
        return {k: self.cyclotomic_component(z, k) for k in nt.divisors(self.n_prime)}

    def in_module(self, w: ff.FieldElem, k: int) -> bool:
        vec = np.array(w.coeffs, dtype=np.int64)
        return not ((self.membership_matrix(k) @ vec) % self.p).any()

    def module_basis(self, k: int) -> np.ndarray:
        """F_p-basis of C_k, rows of shape (dim, big.m)."""
        basis = self._module_basis.get(k)
        if basis is None:
            basis = fplinalg.kernel_basis(self.membership_matrix(k), self.p)
            expected = self.a0 * self.pa * nt.euler_phi(k)
            if basis.shape[0] != expected:
                raise AssertionError(
                    f"dim C_{k} = {basis.shape[0]}, expected {expected}"
                )
            self._module_basis[k] = basis
        return basis

    def module_vectors(self, k: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        """All elements of C_k as coefficient rows."""
        basis = self.module_basis(k)
        return span_vectors(basis, self.p, budget)

    # -- central index and component polynomials ---------------------------

    def tau(self, k: int) -> int:
        return nt.central_index(self.q, k)

    def component_polys(self, k: int) -> list[poly.Poly]:
        """F_k (non-exceptional) or F^eps_k (exceptional): the irreducible
        factors over F_{q^{tau_k}} entering the component split of C_k."""
        tau = self.tau(k)
        sub = self.divisor_data(tau).sub
        if k in self.exceptional_divisors:
            target = poly.cyclotomic_poly(k // (2 * tau), sub)
        else:
            target = poly.cyclotomic_poly(k // tau, sub)
        fac = poly.factor(target)
        return [f for f, _ in fac.factors]

    # -- complete generators ------------------------------------------------

    def _require_regular(self) -> None:
        if not self.regular:
            raise NotRegular(f"({self.q}, {self.n}) is not regular")

    def _cg_matrices(self, k: int) -> list[np.ndarray]:
        """Matrices that must all be nonzero on w for w to be a complete
        generator of C_k (maximal-divisor cofactors at tau, and also at
        2*tau when k is exceptional)."""
        mats = self._cg_mats.get(k)
        if mats is not None:
            return mats
        self._require_regular()
        tau = self.tau(k)
        mats = []
        sub = self.divisor_data(tau).sub
        full = poly.cyclotomic_poly(k // tau, sub).pow(self.pa)
        for h, _ in poly.factor(poly.cyclotomic_poly(k // tau, sub)).factors:
            mats.append(self.op_matrix(tau, full.exact_div(h)))
        if k in self.exceptional_divisors:
            sub2 = self.divisor_data(2 * tau).sub
            full2 = poly.cyclotomic_poly(k // (2 * tau), sub2).pow(self.pa)
            for h, _ in poly.factor(poly.cyclotomic_poly(k // (2 * tau), sub2)).factors:
                mats.append(self.op_matrix(2 * tau, full2.exact_div(h)))
        self._cg_mats[k] = mats
        return mats

    def is_complete_generator(self, w: ff.FieldElem, k: int) -> bool:
        """Order test of the central-index criterion (both orders for
        exceptional k); w must lie in C_k."""
        self._require_regular()
        if not self.in_module(w, k):
            raise NotInModule(f"element is not in the cyclotomic module C_{k}")
        vec = np.array(w.coeffs, dtype=np.int64)
        return all(((m @ vec) % self.p).any() for m in self._cg_matrices(k))

    # -- exceptional split and order pairs -----------------------------------

    def _split_matrices(self, k: int) -> list[tuple[poly.Poly, np.ndarray]]:
        """CRT idempotent matrices for C_k = direct sum of W_{k,f}."""
        mats = self._split_mats.get(k)
        if mats is not None:
            return mats
        if k not in self.exceptional_divisors:
            raise NotExceptional(f"C_{k} is not exceptional for q={self.q}")
        tau = self.tau(k)
        sub = self.divisor_data(tau).sub
        ambient = poly.cyclotomic_poly(k // tau, sub).pow(self.pa)
        mats = []
        for f in self.component_polys(k):
            a_poly = f.inflate(2).pow(self.pa)
            b_poly = ambient.exact_div(a_poly)
            g, s, t = poly.ext_gcd(a_poly, b_poly)
            if not g.is_one():
                raise AssertionError("W-summand annihilators are not coprime")
            c = t * b_poly % ambient
            mats.append((f, self.op_matrix(tau, c)))
        self._split_mats[k] = mats
        return mats

    def w_component_matrix(self, k: int, f: poly.Poly) -> np.ndarray:
        """Matrix sending z to its W_{k,f} component (projector onto C_k
        composed with the summand idempotent)."""
        split = dict(self._split_matrices(k))
        return (split[f] @ self.projector_matrix(k)) % self.p

    def exceptional_split(self, w: ff.FieldElem, k: int) -> list[tuple[poly.Poly, ff.FieldElem]]:
        """Decompose w in C_k into its W_{k,f} components (sum equals w)."""
        if not self.in_module(w, k):
            raise NotInModule(f"element is not in the cyclotomic module C_{k}")
        vec = np.array(w.coeffs, dtype=np.int64)
        out = []
        for f, mat in self._split_matrices(k):
            out.append((f, self.big.elem_from_vector((mat @ vec) % self.p)))
        return out

    def w_data(self, k: int, f: poly.Poly) -> _WData:
        key = (k, f)
        data = self._wdata.get(key)
        if data is not None:
            return data
        if k not in self.exceptional_divisors:
            raise NotExceptional(f"C_{k} is not exceptional for q={self.q}")
        tau = self.tau(k)
        sub = self.divisor_data(tau).sub
        sub2 = self.divisor_data(2 * tau).sub
        if f.ctx is not sub:
            raise ValueError("f must be a polynomial over F_{q^{tau_k}}")
        fx2 = f.inflate(2)
        gfac = poly.factor(fx2)
        if len(gfac.factors) != 2 or any(e != 1 for _, e in gfac.factors):
            raise AssertionError("f(x^2) must split into two distinct factors")
        g1, g2 = (g for g, _ in gfac.factors)
        sub_emb = ff.embed_subfield(sub2, sub.m, sub=sub)
        f_up = f.map_coefficients(sub_emb.map, sub2)
        hfac = poly.factor(f_up)
        if len(hfac.factors) != 2 or any(e != 1 for _, e in hfac.factors):
            raise AssertionError("f(y) must split into two distinct factors over F_{q^{2tau}}")
        h1, h2 = (h for h, _ in hfac.factors)
        pa = self.pa
        ann = fx2.pow(pa)
        ann2 = f_up.pow(pa)

        def ladder(d: int, piece: poly.Poly, other_full: poly.Poly) -> list[np.ndarray]:
            mats = []
            cur = other_full
            for _ in range(pa):
                mats.append(self.op_matrix(d, cur))
                cur = cur * piece
            return mats

        data = _WData(
            k=k,
            f=f,
            tau=tau,
            delta=int(f.degree),
            annihilator_matrix=self.op_matrix(tau, ann),
            g_factors=(g1, g2),
            h_factors=(h1, h2),
            g_ladders=(
                ladder(tau, g1, g2.pow(pa)),
                ladder(tau, g2, g1.pow(pa)),
            ),
            h_ladders=(
                ladder(2 * tau, h1, h2.pow(pa)),
                ladder(2 * tau, h2, h1.pow(pa)),
            ),
        )
        self._wdata[key] = data
        return data

    def w_basis(self, k: int, f: poly.Poly) -> np.ndarray:
        data = self.w_data(k, f)
        basis = fplinalg.kernel_basis(data.annihilator_matrix, self.p)
        expected = self.a0 * data.tau * 2 * data.delta * self.pa
        if basis.shape[0] != expected:
            raise AssertionError(f"dim W_({k},f) = {basis.shape[0]}, expected {expected}")
        return basis

    def order_pair(self, w: ff.FieldElem, k: int, f: poly.Poly) -> OrderPair:
        """Radical order pair of w in W_{k,f}, one of the six lattice values.

        A side is attained iff the full p^a-th power of the factor divides
        the corresponding order (multiplicities below p^a are stripped).
        """
        data = self.w_data(k, f)
        vec = np.array(w.coeffs, dtype=np.int64)
        if ((data.annihilator_matrix @ vec) % self.p).any():
            raise NotInModule(f"element is not in W_({k}, {f!r})")
        bits = []
        for ladders in (data.g_ladders, data.h_ladders):
            for mats in ladders:
                bits.append(bool(((mats[-1] @ vec) % self.p).any()))
        return self._classify_bits(data, tuple(bits))

    def _classify_bits(self, data: _WData, bits: tuple[bool, bool, bool, bool]) -> OrderPair:
        g1, g2 = data.g_factors
        h1, h2 = data.h_factors
        sub = g1.ctx
        sub2 = h1.ctx
        bg1, bg2, bh1, bh2 = bits
        fx2 = data.f.inflate(2)
        f_up = (h1 * h2).monic()
        if not any(bits):
            return OrderPair(data.k, data.f, poly.Poly.one(sub), poly.Poly.one(sub2), "(1,1)")
        table = {
            (True, True, True, False): (fx2, h1, "(f(x^2),h1)"),
            (True, True, False, True): (fx2, h2, "(f(x^2),h2)"),
            (True, False, True, True): (g1, f_up, "(g1,f)"),
            (False, True, True, True): (g2, f_up, "(g2,f)"),
            (True, True, True, True): (fx2, f_up, "(f(x^2),f)"),
        }
        entry = table.get(bits)
        if entry is None:
            raise AssertionError(f"illegal order-pair bits {bits}; mixed-order property violated")
        oq, oq2, label = entry
        return OrderPair(data.k, data.f, oq, oq2, label)

    # -- certificates ---------------------------------------------------------

    def minimal_polynomial(self, z: ff.FieldElem) -> poly.Poly:
        """Minimal polynomial of z over the base field F_q (as a Poly over
        the degree-a0 subfield context)."""
        conjugates = []
        w = z
        seen = set()
        while w.coeffs not in seen:
            seen.add(w.coeffs)
            conjugates.append(w)
            w = self.big.frobenius(w, self.a0)
        prod = poly.Poly.one(self.big)
        x = poly.Poly.x(self.big)
        for c in conjugates:
            prod = prod * (x - poly.Poly(self.big, (c,)))
        base = self.divisor_data(1)
        return prod.map_coefficients(base.emb.section, base.sub)


def span_vectors(basis: np.ndarray, p: int, budget: int) -> np.ndarray:
    """All F_p-combinations of the basis rows, shape (p^dim, m)."""
    dim = basis.shape[0]
    count = p**dim
    if count > budget:
        raise TooLarge(f"module has {count} elements, budget {budget}")
    idx = np.arange(count, dtype=np.int64)
    digits = np.empty((count, dim), dtype=np.int64)
    for j in range(dim):
        digits[:, j] = idx % p
        idx //= p
    return (digits @ basis) % p


@lru_cache(maxsize=64)
def _cached_frame(q: int, n: int, modulus_key) -> ModuleFrame:
    return ModuleFrame(q, n, modulus_key)


def build_frame(q: int, n: int, modulus=None) -> ModuleFrame:
    """Frame for F_{q^n}/F_q; frames are cached and immutable."""
    if modulus is None:
        key = None
    elif isinstance(modulus, str):
        key = modulus
    else:
        key = tuple(modulus)
    return _cached_frame(q, n, key)


# ---------------------------------------------------------------------------
# Pair-level operations
# ---------------------------------------------------------------------------


def _mask_nonzero(V: np.ndarray, mat: np.ndarray, p: int) -> np.ndarray:
    return np.any((V @ mat.T) % p, axis=1)


def cn_census(
    q: int,
    n: int,
    budget: int = DEFAULT_BUDGET,
    modulus=None,
    frame: ModuleFrame | None = None,
    threads: int = 1,
) -> int:
    """Exhaustive count of completely normal elements of F_{q^n}/F_q.

    The element space is partitioned into chunks; with threads > 1 the
    chunks are counted concurrently and reduced by summation.
    """
    frame = frame or build_frame(q, n, modulus)
    size = frame.big.size
    if size > budget:
        raise TooLarge(f"field has {size} elements, budget {budget}")
    mats = []
    for d in nt.divisors(n):
        mats.extend(frame.normal_test_matrices(d))
    p = frame.p

    def count_chunk(start: int) -> int:
        stop = min(start + _CHUNK, size)
        V = frame.big.lex_vectors(start, stop)
        ok = np.ones(stop - start, dtype=bool)
        for mat in mats:
            ok &= _mask_nonzero(V, mat, p)
            if not ok.any():
                break
        return int(ok.sum())

    starts = range(0, size, _CHUNK)
    if threads > 1 and size > _CHUNK:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(count_chunk, starts))
    return sum(count_chunk(s) for s in starts)


def complete_generator_census(
    q: int,
    n: int,
    k: int,
    budget: int = DEFAULT_BUDGET,
    modulus=None,
    frame: ModuleFrame | None = None,
) -> int:
    """Number of complete generators of the cyclotomic module C_k."""
    frame = frame or build_frame(q, n, modulus)
    V = frame.module_vectors(k, budget)
    ok = np.ones(V.shape[0], dtype=bool)
    for mat in frame._cg_matrices(k):
        ok &= _mask_nonzero(V, mat, frame.p)
    return int(ok.sum())


def module_census_product(
    q: int, n: int, budget: int = DEFAULT_BUDGET, modulus=None
) -> dict:
    """Per-module complete-generator counts and their product."""
    frame = build_frame(q, n, modulus)
    counts = {
        k: complete_generator_census(q, n, k, budget, frame=frame)
        for k in nt.divisors(frame.n_prime)
    }
    return {"per_module": counts, "product": reduce(lambda u, v: u * v, counts.values(), 1)}


_BIT_LABELS = {
    0b0000: "(1,1)",
    0b0111: "(f(x^2),h1)",  # bits: g1 | g2<<1 | h1<<2 | h2<<3
    0b1011: "(f(x^2),h2)",
    0b1101: "(g1,f)",
    0b1110: "(g2,f)",
    0b1111: "(f(x^2),f)",
}


def order_pair_census(
    q: int,
    n: int,
    k: int,
    f: poly.Poly | int | None = None,
    budget: int = DEFAULT_BUDGET,
    modulus=None,
) -> dict[str, int]:
    """Census of radical order pairs over W_{k,f} (f defaults to the first
    component polynomial; an int selects by position)."""
    frame = build_frame(q, n, modulus)
    f_poly = resolve_component_poly(frame, k, f)
    data = frame.w_data(k, f_poly)
    V = span_vectors(frame.w_basis(k, f_poly), frame.p, budget)
    codes = np.zeros(V.shape[0], dtype=np.int64)
    weight = 1
    for ladders in (data.g_ladders, data.h_ladders):
        for mats in ladders:
            codes += weight * _mask_nonzero(V, mats[-1], frame.p)
            weight <<= 1
    tallies = np.bincount(codes, minlength=16)
    illegal = [c for c in range(16) if tallies[c] and c not in _BIT_LABELS]
    if illegal:
        raise AssertionError(
            f"illegal order-pair bit patterns {illegal}; mixed-order property violated"
        )
    return {label: int(tallies[code]) for code, label in _BIT_LABELS.items() if tallies[code]}


def resolve_component_poly(frame: ModuleFrame, k: int, f: poly.Poly | int | None) -> poly.Poly:
    polys = frame.component_polys(k)
    if f is None:
        return polys[0]
    if isinstance(f, int):
        return polys[f]
    if f not in polys:
        raise ValueError(f"f is not one of the {len(polys)} component polynomials of C_{k}")
    return f


def _exponent_array(V: np.ndarray, mats: list[np.ndarray], p: int) -> np.ndarray:
    """Per row: least j with mats[j] @ row == 0, or len(mats) if none."""
    count = V.shape[0]
    exps = np.full(count, len(mats), dtype=np.int64)
    open_rows = np.arange(count)
    for j, mat in enumerate(mats):
        if open_rows.size == 0:
            break
        killed = ~_mask_nonzero(V[open_rows], mat, p)
        exps[open_rows[killed]] = j
        open_rows = open_rows[~killed]
    return exps


def mixed_order_check(
    q: int,
    n: int,
    k: int,
    f: poly.Poly | int | None = None,
    budget: int = DEFAULT_BUDGET,
    modulus=None,
) -> bool:
    """Exhaustively verify the mixed-order property on W_{k,f}: an order
    that is maximal on exactly one side of one level forces the full order
    on the other level, in both directions."""
    frame = build_frame(q, n, modulus)
    f_poly = resolve_component_poly(frame, k, f)
    data = frame.w_data(k, f_poly)
    V = span_vectors(frame.w_basis(k, f_poly), frame.p, budget)
    pa = frame.pa
    gamma1 = _exponent_array(V, data.g_ladders[0], frame.p)
    gamma2 = _exponent_array(V, data.g_ladders[1], frame.p)
    alpha1 = _exponent_array(V, data.h_ladders[0], frame.p)
    alpha2 = _exponent_array(V, data.h_ladders[1], frame.p)
    h_one_sided = (alpha1 == pa) ^ (alpha2 == pa)
    g_maximal = (gamma1 == pa) & (gamma2 == pa)
    if not bool(np.all(~h_one_sided | g_maximal)):
        return False
    g_one_sided = (gamma1 == pa) ^ (gamma2 == pa)
    h_maximal = (alpha1 == pa) & (alpha2 == pa)
    return bool(np.all(~g_one_sided | h_maximal))


def decomposition_equivalence(
    q: int,
    n: int,
    budget: int = DEFAULT_BUDGET,
    modulus=None,
) -> bool:
    """Exhaustively check: z completely normal iff every cyclotomic
    component of z is a complete generator of its module."""
    frame = build_frame(q, n, modulus)
    if not frame.regular:
        raise NotRegular(f"({q}, {n}) is not regular")
    size = frame.big.size
    if size > budget:
        raise TooLarge(f"field has {size} elements, budget {budget}")
    direct_mats = []
    for d in nt.divisors(n):
        direct_mats.extend(frame.normal_test_matrices(d))
    ks = nt.divisors(frame.n_prime)
    p = frame.p
    for start in range(0, size, _CHUNK):
        stop = min(start + _CHUNK, size)
        V = frame.big.lex_vectors(start, stop)
        direct = np.ones(stop - start, dtype=bool)
        for mat in direct_mats:
            direct &= _mask_nonzero(V, mat, p)
        via_components = np.ones(stop - start, dtype=bool)
        for k in ks:
            W = (V @ frame.projector_matrix(k).T) % p
            for mat in frame._cg_matrices(k):
                via_components &= _mask_nonzero(W, mat, p)
        if not np.array_equal(direct, via_components):
            return False
    return True
