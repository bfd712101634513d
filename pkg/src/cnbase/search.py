"""Search and certification of primitive completely normal elements.

A certificate records everything needed to re-verify the element from
scratch: the field modulus, the coefficient vector, one witness power per
prime divisor of the group order, the per-level order confirmations and the
minimal polynomial.  ``recheck`` rebuilds the field from the certificate
alone and replays every check.

Strategies: "exhaustive" scans coefficient vectors in lex order and returns
the lex-least qualifying element (deterministic); "random" samples with a
seeded generator; "sieved" enumerates complete generators module by module
and combines them, which prunes the search to elements that are already
completely normal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import product

import numpy as np

from . import field as ff, modstruct, nt, poly, polytext
from .errors import (
    ExhaustedNoneFound,
    NotRegular,
    Reducible,
    TooLarge,
    UnsupportedPair,
)

DEFAULT_BUDGET = 2**24
_CHUNK = 1 << 14


@dataclass
class PcnCertificate:
    """Re-verifiable evidence that an element is primitive and completely
    normal for its extension."""

    q: int
    n: int
    modulus: str  # big-field modulus over the prime field, text form
    element: list[int]  # coefficient vector in the big field
    primitive_witnesses: list[dict]  # [{"r": prime, "power": coeffs != 1}]
    normality_orders: dict[str, str]  # d -> "x^{n/d}-1" (as verified)
    minimal_polynomial: list[list[int]]  # coeffs over F_q, each as F_p vector
    strategy: str = "exhaustive"
    seed: int = 0

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "modulus": self.modulus,
            "element": self.element,
            "primitive_witnesses": self.primitive_witnesses,
            "normality_orders": self.normality_orders,
            "minimal_polynomial": self.minimal_polynomial,
            "strategy": self.strategy,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PcnCertificate":
        return cls(
            q=data["q"],
            n=data["n"],
            modulus=data["modulus"],
            element=list(data["element"]),
            primitive_witnesses=[dict(w) for w in data["primitive_witnesses"]],
            normality_orders={str(k): v for k, v in data["normality_orders"].items()},
            minimal_polynomial=[list(c) for c in data["minimal_polynomial"]],
            strategy=data.get("strategy", "exhaustive"),
            seed=data.get("seed", 0),
        )


def _certificate(frame: modstruct.ModuleFrame, z: ff.FieldElem, strategy: str, seed: int) -> PcnCertificate:
    ctx = frame.big
    witnesses = []
    for r in nt.factorize(ctx.order).primes:
        power = ctx.pow(z, ctx.order // r)
        if power == ctx.one():
            raise AssertionError("witness power collapsed; element is not primitive")
        witnesses.append({"r": r, "power": list(power.coeffs)})
    orders = {}
    for d in nt.divisors(frame.n):
        order = frame.q_order(z, d)
        full = poly.Poly.x_pow_minus_one(order.ctx, frame.n // d)
        if order != full:
            raise AssertionError(f"element is not normal at level d={d}")
        orders[str(d)] = order.to_string()
    minpoly = frame.minimal_polynomial(z)
    if minpoly.degree != frame.n:
        raise AssertionError("minimal polynomial degree is not n")
    return PcnCertificate(
        q=frame.q,
        n=frame.n,
        modulus=poly.Poly.from_ints(ctx, ctx.modulus).to_string(),
        element=list(z.coeffs),
        primitive_witnesses=witnesses,
        normality_orders=orders,
        minimal_polynomial=[list(c.coeffs) for c in minpoly.coeffs],
        strategy=strategy,
        seed=seed,
    )


def _is_pcn(frame: modstruct.ModuleFrame, z: ff.FieldElem) -> bool:
    return frame.is_completely_normal(z) and frame.big.is_primitive(z)


def _first_pcn_in_chunk(frame, mats, start: int, stop: int):
    ctx = frame.big
    vecs = ctx.lex_vectors(start, stop)
    ok = np.ones(stop - start, dtype=bool)
    for mat in mats:
        ok &= np.any((vecs @ mat.T) % frame.p, axis=1)
    for offset in np.flatnonzero(ok):
        z = ctx.elem_from_vector(vecs[offset])
        if ctx.is_primitive(z):
            return z
    return None


def find_pcn(
    q: int,
    n: int,
    strategy: str = "exhaustive",
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    modulus=None,
    threads: int = 1,
) -> PcnCertificate:
    """Find and certify a primitive completely normal element.

    "exhaustive" returns the lex-least qualifying coefficient vector and
    raises ExhaustedNoneFound only after scanning the whole field (for a
    regular pair passing the existence criterion that indicates a bug, and
    the error message says so).  With threads > 1 the candidate space is
    partitioned into chunks examined concurrently; the ordered reduction
    keeps the first-in-lex-order result.
    """
    frame = modstruct.build_frame(q, n, modulus)
    ctx = frame.big
    if strategy == "exhaustive":
        if ctx.size > budget:
            raise TooLarge(f"field has {ctx.size} elements, budget {budget}")
        mats = []
        for d in nt.divisors(n):
            mats.extend(frame.normal_test_matrices(d))
        bounds = [
            (start, min(start + _CHUNK, ctx.size))
            for start in range(1, ctx.size, _CHUNK)
        ]
        if threads > 1 and len(bounds) > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=threads) as pool:
                for z in pool.map(lambda b: _first_pcn_in_chunk(frame, mats, *b), bounds):
                    if z is not None:
                        return _certificate(frame, z, strategy, seed)
        else:
            for start, stop in bounds:
                z = _first_pcn_in_chunk(frame, mats, start, stop)
                if z is not None:
                    return _certificate(frame, z, strategy, seed)
        raise ExhaustedNoneFound(
            f"no primitive completely normal element in F_{q}^{n}; "
            "for a regular pair satisfying the existence criterion this "
            "indicates an implementation bug"
        )
    if strategy == "random":
        rng = random.Random(seed)
        attempts = min(budget, 64 * ctx.size)
        for _ in range(attempts):
            z = ctx.from_lex_index(rng.randrange(1, ctx.size))
            if _is_pcn(frame, z):
                return _certificate(frame, z, strategy, seed)
        raise ExhaustedNoneFound(f"random sampling budget ({attempts}) exhausted")
    if strategy == "sieved":
        if not frame.regular:
            raise NotRegular(
                f"sieved strategy needs the component decomposition; ({q}, {n}) is not regular"
            )
        generator_lists = []
        for k in nt.divisors(frame.n_prime):
            vectors = frame.module_vectors(k, budget)
            keep = np.ones(vectors.shape[0], dtype=bool)
            for mat in frame._cg_matrices(k):
                keep &= np.any((vectors @ mat.T) % frame.p, axis=1)
            generator_lists.append(vectors[keep])
        for combo in product(*generator_lists):
            total = np.zeros(ctx.m, dtype=np.int64)
            for part in combo:
                total = (total + part) % frame.p
            z = ctx.elem_from_vector(total)
            if ctx.is_primitive(z):
                return _certificate(frame, z, strategy, seed)
        raise ExhaustedNoneFound(
            f"every completely normal element of F_{q}^{n} fails primitivity"
        )
    raise ValueError(f"unknown strategy {strategy!r}")


def verify_pcn_poly(p: int, f, base_q: int | None = None) -> bool:
    """True iff the monic polynomial over F_p is irreducible with primitive
    completely normal roots (the root checked is the class of x in
    F_p[x]/(f); its conjugates share all properties)."""
    if isinstance(f, str):
        coeffs = tuple(c % p for c in polytext.parse_int_poly(f))
    else:
        coeffs = tuple(c.coeffs[0] for c in f.coeffs)
    base_q = base_q or p
    p_check, a0 = nt.split_prime_power(base_q)
    if p_check != p:
        raise ValueError(f"base field F_{base_q} does not have characteristic {p}")
    deg = len(coeffs) - 1
    if deg % a0:
        raise ValueError(f"degree {deg} is not a multiple of [F_{base_q}:F_{p}]")
    n = deg // a0
    try:
        frame = modstruct.ModuleFrame(base_q, n, coeffs)
    except Exception as exc:
        if "reducible" in str(exc).lower():
            raise Reducible(str(exc)) from exc
        raise
    root = frame.big.gen()
    return frame.big.is_primitive(root) and frame.is_completely_normal(root)


@dataclass
class ConstructionReport:
    """Certificate plus the individual component facts of the explicit
    root-of-unity constructions."""

    certificate: PcnCertificate
    component_facts: dict[str, bool] = dc_field(default_factory=dict)


def construct_roots_of_unity(q: int, n: int) -> ConstructionReport:
    """Explicit primitive completely normal elements for (3,8) and (3,16),
    assembled from powers of a 32nd (resp. 64th) root of unity."""
    if (q, n) == (3, 8):
        frame = modstruct.build_frame(3, 8, "x^8+x^4-1")
        ctx = frame.big
        zeta = ctx.gen()
        facts = {}
        facts["zeta_has_order_32"] = ctx.mult_order(zeta) == 32
        w8 = zeta + ctx.pow(zeta, 3)
        facts["zeta_plus_zeta3_generates_C8"] = frame.is_complete_generator(w8, 8)
        w4 = ctx.pow(zeta, 2)
        facts["zeta2_generates_C4"] = frame.is_complete_generator(w4, 4)
        z4 = ctx.pow(zeta, 4)
        facts["zeta4_in_f9"] = ctx.frobenius(z4, 2) == z4
        c1 = frame.cyclotomic_component(z4, 1)
        c2 = frame.cyclotomic_component(z4, 2)
        facts["zeta4_normal_over_f3"] = bool(c1) and bool(c2)
        v = z4 + w4 + w8
        facts["v_completely_normal"] = frame.is_completely_normal(v)
        facts["v_primitive"] = ctx.is_primitive(v)
        if not all(facts.values()):
            raise AssertionError(f"construction failed: {facts}")
        return ConstructionReport(_certificate(frame, v, "construction", 0), facts)
    if (q, n) == (3, 16):
        frame = modstruct.build_frame(3, 16, "x^16+x^8-1")
        ctx = frame.big
        eta = ctx.gen()
        facts = {}
        facts["eta_has_order_64"] = ctx.mult_order(eta) == 64
        u = (
            eta
            + ctx.pow(eta, 3)
            + ctx.pow(eta, 5)
            + ctx.pow(eta, 7)
        )
        facts["u_generates_C16"] = frame.is_complete_generator(u, 16)
        zeta = ctx.pow(eta, 2)
        facts["zeta_has_order_32"] = ctx.mult_order(zeta) == 32
        w8 = zeta + ctx.pow(zeta, 3)
        facts["zeta_plus_zeta3_generates_C8"] = frame.is_complete_generator(w8, 8)
        w4 = ctx.pow(zeta, 2)
        facts["zeta2_generates_C4"] = frame.is_complete_generator(w4, 4)
        z4 = ctx.pow(zeta, 4)
        c1 = frame.cyclotomic_component(z4, 1)
        c2 = frame.cyclotomic_component(z4, 2)
        facts["zeta4_normal_over_f3"] = bool(c1) and bool(c2)
        v = z4 + w4 + w8
        z = v + u
        facts["v_plus_u_completely_normal"] = frame.is_completely_normal(z)
        facts["v_plus_u_primitive"] = ctx.is_primitive(z)
        if not all(facts.values()):
            raise AssertionError(f"construction failed: {facts}")
        return ConstructionReport(_certificate(frame, z, "construction", 0), facts)
    raise UnsupportedPair(f"explicit construction available for (3,8) and (3,16), not ({q},{n})")


def recheck(cert: PcnCertificate | dict) -> bool:
    """Re-verify a certificate from scratch: fresh contexts, powers redone,
    orders recomputed, minimal polynomial re-evaluated."""
    if isinstance(cert, dict):
        cert = PcnCertificate.from_json(cert)
    frame = modstruct.ModuleFrame(cert.q, cert.n, cert.modulus)
    ctx = frame.big
    z = ctx.elem(cert.element)
    if not z:
        return False
    expected_primes = set(nt.factorize(ctx.order).primes)
    seen = set()
    for witness in cert.primitive_witnesses:
        r = witness["r"]
        seen.add(r)
        power = ctx.pow(z, ctx.order // r)
        if tuple(witness["power"]) != power.coeffs or power == ctx.one():
            return False
    if seen != expected_primes:
        return False
    for d in nt.divisors(cert.n):
        order = frame.q_order(z, d)
        if order != poly.Poly.x_pow_minus_one(order.ctx, cert.n // d):
            return False
        if cert.normality_orders.get(str(d)) != order.to_string():
            return False
    base = frame.divisor_data(1)
    coeffs = [base.sub.elem(c) for c in cert.minimal_polynomial]
    minpoly = poly.Poly(base.sub, coeffs)
    if minpoly.degree != cert.n or not minpoly.is_monic():
        return False
    if minpoly != frame.minimal_polynomial(z):
        return False
    if not poly.is_irreducible(minpoly):
        return False
    acc = ctx.zero()
    power = ctx.one()
    for c in coeffs:
        acc = acc + base.emb.map(c) * power
        power = power * z
    return not acc
