"""Complex-valued verification of the character identities on tiny fields.

Additive characters chi_u(z) = exp(2 pi i Tr(u z) / p) are evaluated through
the trace pairing matrix B[i][j] = Tr(x^i x^j), so batch evaluation over all
(u, z) is one integer matrix product.  Multiplicative characters use a
discrete-log table of the deterministic primitive element.

The module-action duality makes exact order bookkeeping possible on the
character side: g(x) . chi_u = chi_{g(sigma^{-d})(u)}, hence the q^d-order
of chi_u is the monic reciprocal of the q^d-order of u.

Everything here is double precision with an explicit tolerance (1e-6 per
summand); exact verdicts always come from modstruct, this module only
verifies that the character sums reproduce them.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from . import field as ff, fplinalg, modstruct, nt, poly
from .errors import TooLarge, ZeroPolynomial

MAX_FIELD_SIZE = 2**16
TOL_PER_TERM = 1e-6


def monic_reciprocal(g: poly.Poly) -> poly.Poly:
    """x^{deg g} g(1/x), normalized monic (g must have nonzero constant)."""
    if not g:
        raise ZeroPolynomial("reciprocal of the zero polynomial")
    if g.degree == 0:
        return poly.Poly.one(g.ctx)
    if not g.coeffs[0]:
        raise ValueError("reciprocal requires a nonzero constant term")
    return poly.Poly(g.ctx, tuple(reversed(g.coeffs))).monic()


class CharVerifier:
    """Character tables and numeric identity checks for one frame."""

    def __init__(self, frame: modstruct.ModuleFrame, max_size: int = MAX_FIELD_SIZE):
        if frame.big.size > max_size:
            raise TooLarge(
                f"field of size {frame.big.size} exceeds character budget {max_size}"
            )
        self.frame = frame
        ctx = frame.big
        self.ctx = ctx
        self.p = ctx.p
        self.size = ctx.size
        self.vectors = ctx.lex_vectors(0, ctx.size)
        # trace pairing: Tr(u z) = u^T B z over F_p
        m = ctx.m
        power = ctx.one()
        x = ctx.gen()
        traces = []
        for _ in range(2 * m - 1):
            traces.append(ctx.trace_to_prime(power))
            power = power * x
        self._pairing = np.array(
            [[traces[i + j] for j in range(m)] for i in range(m)], dtype=np.int64
        )
        # discrete logs of the deterministic primitive element
        g = ctx.primitive_element()
        self._dlog = np.full(ctx.size, -1, dtype=np.int64)
        z = ctx.one()
        for t in range(ctx.order):
            self._dlog[ctx.to_lex_index(z)] = t
            z = z * g
        self._unity_p = cmath.exp(2j * math.pi / self.p)

    # -- raw character values ------------------------------------------------

    def additive_values(self, u: ff.FieldElem) -> np.ndarray:
        """chi_u at every field element (lex order)."""
        w = (np.array(u.coeffs, dtype=np.int64) @ self._pairing) % self.p
        return self._unity_p ** ((self.vectors @ w) % self.p)

    def additive_value(self, u: ff.FieldElem, z: ff.FieldElem) -> complex:
        t = self.ctx.trace_to_prime(u * z)
        return self._unity_p**t

    def _additive_matrix(self, U: np.ndarray) -> np.ndarray:
        """Values chi_u(z) for u rows of U and all z: shape (len(U), size)."""
        exps = (U @ self._pairing % self.p) @ self.vectors.T % self.p
        return self._unity_p**exps

    def multiplicative_values(self, j: int) -> np.ndarray:
        """psi_j at every field element; psi_j(0) = 0 unless j = 0 mod order."""
        order = self.ctx.order
        j %= order
        out = np.exp(2j * math.pi * j * self._dlog / order)
        zero_idx = self.ctx.to_lex_index(self.ctx.zero())
        out[zero_idx] = 1.0 if j == 0 else 0.0
        return out

    def multiplicative_char_order(self, j: int) -> int:
        order = self.ctx.order
        return order // math.gcd(j % order, order)

    # -- order duality ---------------------------------------------------------

    def char_order_additive(self, u: ff.FieldElem, d: int) -> poly.Poly:
        """q^d-order of chi_u: the monic reciprocal of the q^d-order of u."""
        return monic_reciprocal(self.frame.q_order(u, d))

    def gamma_vectors(self, d: int, g: poly.Poly) -> np.ndarray:
        """Rows u with Ord_{q^d}(chi_u) dividing g; count q^{d deg g}."""
        mat = self.frame.op_matrix(d, monic_reciprocal(g))
        basis = fplinalg.kernel_basis(mat, self.p)
        U = modstruct.span_vectors(basis, self.p, MAX_FIELD_SIZE)
        expected = self.frame.divisor_data(d).sub.size ** int(g.degree)
        if U.shape[0] != expected:
            raise AssertionError(
                f"|Gamma_({d},g)| = {U.shape[0]}, expected {expected}"
            )
        return U

    # -- orthogonality ---------------------------------------------------------

    def orthogonality_check(self, d: int, g: poly.Poly) -> float:
        """Max deviation of sum_{chi in Gamma_{d,g}} chi(z) from its exact
        value (|Gamma| on the dual module, 0 off it)."""
        U = self.gamma_vectors(d, g)
        sums = self._additive_matrix(U).sum(axis=0)
        n_over_d = self.frame.n // d
        full = poly.Poly.x_pow_minus_one(g.ctx, n_over_d)
        cofactor = full.exact_div(g)
        dual_mat = self.frame.op_matrix(d, cofactor)
        in_dual = ~np.any((self.vectors @ dual_mat.T) % self.p, axis=1)
        expected = np.where(in_dual, float(U.shape[0]), 0.0)
        return float(np.abs(sums - expected).max())

    # -- characteristic functions ----------------------------------------------

    def _a_gd_values(self, d: int, g: poly.Poly) -> np.ndarray:
        """Complex values of the divisibility indicator built from Gamma_{d,g}."""
        sub = self.frame.divisor_data(d).sub
        U = self.gamma_vectors(d, g)
        coeffs = np.empty(U.shape[0], dtype=np.complex128)
        for i, row in enumerate(U):
            u = self.ctx.elem_from_vector(row)
            order = self.char_order_additive(u, d)
            mu = poly.poly_moebius(order)
            coeffs[i] = 0.0 if mu == 0 else mu / poly.poly_euler_phi(order)
        values = coeffs @ self._additive_matrix(U)
        scale = poly.poly_euler_phi(g) / sub.size ** int(g.degree)
        return scale * values

    def verify_A_gd(self, d: int, g: poly.Poly) -> bool:
        """Character sum equals the exact indicator of g^{p^a} | Ord_{q^d}(z)."""
        approx = self._a_gd_values(d, g)
        exact = np.ones(self.size, dtype=bool)
        full = poly.Poly.x_pow_minus_one(g.ctx, self.frame.n // d)
        for h, _ in poly.factor(g).factors:
            cof = full.exact_div(h)
            mat = self.frame.op_matrix(d, cof)
            exact &= np.any((self.vectors @ mat.T) % self.p, axis=1)
        tol = TOL_PER_TERM * max(self.size, 1)
        return bool(np.abs(approx - exact.astype(float)).max() <= tol)

    def verify_Bk(self, k: int) -> bool:
        """The rescaled indicator equals the plain Gamma_k character sum."""
        frame = self.frame
        tau = frame.tau(k)
        sub = frame.divisor_data(tau).sub
        phi_poly = poly.cyclotomic_poly(k // tau, sub)
        lhs = (
            sub.size ** int(phi_poly.degree) / poly.poly_euler_phi(phi_poly)
        ) * self._a_gd_values(tau, phi_poly)
        U = self.gamma_vectors(tau, phi_poly)
        coeffs = np.empty(U.shape[0], dtype=np.complex128)
        for i, row in enumerate(U):
            u = self.ctx.elem_from_vector(row)
            order = self.char_order_additive(u, tau)
            mu = poly.poly_moebius(order)
            coeffs[i] = 0.0 if mu == 0 else mu / poly.poly_euler_phi(order)
        rhs = coeffs @ self._additive_matrix(U)
        tol = TOL_PER_TERM * U.shape[0]
        return bool(np.abs(lhs - rhs).max() <= tol)

    # -- exceptional product formula ---------------------------------------------

    def char_order_pair_census(self, k: int, f: poly.Poly | int | None = None) -> dict[str, int]:
        """Census of character order pairs over Gamma^eps_{k,f}.

        By duality this is the element order-pair census of W_{k, f*} with
        f* the monic reciprocal of f, with multiplicities stripped.
        """
        counts, _, _ = self._exceptional_tables(k, f)
        return counts

    def _exceptional_tables(self, k: int, f: poly.Poly | int | None):
        frame = self.frame
        f_poly = modstruct.resolve_component_poly(frame, k, f)
        tau = frame.tau(k)
        sub = frame.divisor_data(tau).sub
        sub2 = frame.divisor_data(2 * tau).sub
        f_star = monic_reciprocal(f_poly)
        fx2_star = f_star.inflate(2)
        # characters annihilated by f(x^2): u annihilated by f*(x^2)
        mat = frame.op_matrix(tau, fx2_star)
        U = modstruct.span_vectors(fplinalg.kernel_basis(mat, self.p), self.p, MAX_FIELD_SIZE)
        g_stars = [g for g, _ in poly.factor(fx2_star).factors]
        emb = ff.embed_subfield(sub2, sub.m, sub=sub)
        f_star_up = f_star.map_coefficients(emb.map, sub2)
        h_stars = [h for h, _ in poly.factor(f_star_up).factors]
        bit_mats = [frame.op_matrix(tau, fx2_star.exact_div(g)) for g in g_stars]
        bit_mats += [frame.op_matrix(2 * tau, f_star_up.exact_div(h)) for h in h_stars]
        bits = np.stack(
            [np.any((U @ m.T) % self.p, axis=1) for m in bit_mats], axis=1
        )
        labels = {
            (False, False, False, False): "(1,1)",
            (True, True, True, False): "(f(x^2),h1)",
            (True, True, False, True): "(f(x^2),h2)",
            (True, False, True, True): "(g1,f)",
            (False, True, True, True): "(g2,f)",
            (True, True, True, True): "(f(x^2),f)",
        }
        counts: dict[str, int] = {}
        per_row = []
        for row in bits:
            label = labels.get(tuple(bool(v) for v in row))
            if label is None:
                raise AssertionError("illegal character order pair; duality violated")
            per_row.append(label)
            counts[label] = counts.get(label, 0) + 1
        return counts, U, per_row

    def verify_exceptional_product(self, k: int, f: poly.Poly | int | None = None) -> bool:
        """The six-class character sum reproduces the complete-generator
        indicator of W_{k,f} at every field element, and the class sizes
        match the order-pair lattice table."""
        frame = self.frame
        f_poly = modstruct.resolve_component_poly(frame, k, f)
        data = frame.w_data(k, f_poly)
        tau, delta = data.tau, data.delta
        sub = frame.divisor_data(tau).sub
        big_q = sub.size  # Q = q^tau
        counts, U, labels = self._exceptional_tables(k, f_poly)
        atom = big_q**delta - 1
        top = big_q ** (2 * delta) - 4 * big_q**delta + 3
        expected_phi = {
            "(1,1)": 1,
            "(f(x^2),h1)": atom,
            "(f(x^2),h2)": atom,
            "(g1,f)": atom,
            "(g2,f)": atom,
            "(f(x^2),f)": top,
        }
        if counts != expected_phi:
            return False
        mu_values = {
            "(1,1)": 1,
            "(f(x^2),h1)": -1,
            "(f(x^2),h2)": -1,
            "(g1,f)": -1,
            "(g2,f)": -1,
            "(f(x^2),f)": 3,
        }
        if sum(abs(v) for v in mu_values.values()) != 8:
            raise AssertionError("lattice Moebius values must sum to 8 in absolute value")
        coeffs = np.array(
            [mu_values[lbl] / expected_phi[lbl] for lbl in labels], dtype=np.complex128
        )
        scale = top / big_q ** (2 * delta)
        approx = scale * (coeffs @ self._additive_matrix(U))
        # exact indicator: the (k, f)-component of z is a complete generator
        comp = frame.w_component_matrix(k, f_poly)
        W = (self.vectors @ comp.T) % self.p
        exact = np.ones(self.size, dtype=bool)
        for ladders in (data.g_ladders, data.h_ladders):
            for mats in ladders:
                exact &= np.any((W @ mats[-1].T) % self.p, axis=1)
        tol = TOL_PER_TERM * U.shape[0]
        return bool(np.abs(approx - exact.astype(float)).max() <= tol)

    # -- Gauss sums and primitivity ------------------------------------------------

    def gauss_sum(self, j: int, u: ff.FieldElem) -> complex:
        """G(psi_j, chi_u) = sum over the whole field of psi_j(w) chi_u(w)."""
        return complex(np.sum(self.multiplicative_values(j) * self.additive_values(u)))

    def verify_gauss_magnitudes(self, sample: int = 12, seed: int = 0) -> bool:
        """|G| = q^{n/2} for nontrivial pairs; q^n and 0 in the trivial cases."""
        import random

        rng = random.Random(seed)
        ctx = self.ctx
        tol = TOL_PER_TERM * self.size
        if abs(self.gauss_sum(0, ctx.zero()) - self.size) > tol:
            return False
        expected = math.sqrt(self.size)
        for _ in range(sample):
            j = rng.randrange(1, ctx.order)
            u = ctx.from_lex_index(rng.randrange(1, ctx.size))
            if abs(abs(self.gauss_sum(j, u)) - expected) > tol:
                return False
            if abs(self.gauss_sum(j, ctx.zero())) > tol:
                return False
            if abs(self.gauss_sum(0, u)) > tol:
                return False
        return True

    def primitivity_values(self) -> np.ndarray:
        """The multiplicative-character sum for the primitivity indicator,
        evaluated at every field element."""
        order = self.ctx.order
        phi = nt.euler_phi(order)
        total = np.zeros(self.size, dtype=np.complex128)
        for e in nt.divisors(nt.radical(order)):
            mu = nt.moebius(e)
            js = [j for j in range(order) if self.multiplicative_char_order(j) == e]
            part = np.zeros(self.size, dtype=np.complex128)
            for j in js:
                part += self.multiplicative_values(j)
            total += (mu / nt.euler_phi(e)) * part
        return (phi / order) * total

    def verify_P(self) -> bool:
        """The character sum flags exactly the primitive elements; at zero it
        evaluates to phi(q^n - 1)/(q^n - 1) by the psi(0) convention."""
        values = self.primitivity_values()
        order = self.ctx.order
        tol = TOL_PER_TERM * max(order, 1)
        for idx in range(self.size):
            z = self.ctx.from_lex_index(idx)
            if not z:
                expected = nt.euler_phi(order) / order
            else:
                expected = 1.0 if self.ctx.is_primitive(z) else 0.0
            if abs(values[idx] - expected) > tol:
                return False
        return True

    def primitivity_values_full_sum(self) -> np.ndarray:
        """Same indicator via the sum over every multiplicative character."""
        order = self.ctx.order
        phi = nt.euler_phi(order)
        total = np.zeros(self.size, dtype=np.complex128)
        for j in range(order):
            e = self.multiplicative_char_order(j)
            mu = nt.moebius(e)
            if mu == 0:
                continue
            total += (mu / nt.euler_phi(e)) * self.multiplicative_values(j)
        return (phi / order) * total


@lru_cache(maxsize=16)
def _cached_verifier(q: int, n: int, modulus_key) -> CharVerifier:
    return CharVerifier(modstruct.build_frame(q, n, modulus_key))


def get_verifier(q: int, n: int, modulus=None) -> CharVerifier:
    if modulus is None:
        key = None
    elif isinstance(modulus, str):
        key = modulus
    else:
        key = tuple(modulus)
    return _cached_verifier(q, n, key)
