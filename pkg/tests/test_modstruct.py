"""Frobenius-module layer: orders, decomposition, generators, censuses."""

import random
from itertools import product

import numpy as np
import pytest

from cnbase import classify, field as ff, modstruct, nt, poly
from cnbase.errors import NotExceptional, NotInModule, TooLarge

PCN8 = "x^8+x^7+2x^3+2x^2+2"
Z32 = "x^8+x^4-1"

FRAME38 = modstruct.build_frame(3, 8)
FRAME38_Z = modstruct.build_frame(3, 8, Z32)


def _sigma_eval(frame, g_ints, z, d=1):
    """Independent oracle for prime-coefficient g: g(sigma^d)(z) via powering."""
    ctx = frame.big
    acc = ctx.zero()
    for i, c in enumerate(g_ints):
        term = ctx.pow(z, frame.q ** (d * i))
        acc = acc + ctx.scalar(c) * term
    return acc


def _brute_q_order(frame, z):
    """Least-degree monic divisor of x^n - 1 annihilating z under sigma
    (independent of the ladder implementation; d = 1, prime coefficients)."""
    prime = ff.build_field(frame.p, 1)
    fac = poly.factor_xm_minus_1(prime, frame.n)
    best = None
    for exps in product(*[range(e + 1) for _, e in fac.factors]):
        g = poly.Poly.one(prime)
        for (f, _), e in zip(fac.factors, exps):
            g = g * f.pow(e)
        ints = tuple(c.coeffs[0] for c in g.coeffs)
        if not _sigma_eval(frame, ints, z):
            if best is None or g.degree < best.degree:
                best = g
    return best


def test_q_order_trivial_cases():
    frame = FRAME38
    assert frame.q_order(frame.big.zero(), 1).is_one()
    assert frame.q_order(frame.big.one(), 1).to_string() == "x+2"  # x - 1
    assert frame.q_order(frame.big.zero(), 8).is_one()


def test_q_order_divides_xn_minus_1_and_is_minimal():
    frame = FRAME38
    rng = random.Random(20)
    for _ in range(12):
        z = frame.big.from_lex_index(rng.randrange(frame.big.size))
        order = frame.q_order(z, 1)
        rem = poly.Poly.x_pow_minus_one(order.ctx, 8) % order
        assert not rem
        brute = _brute_q_order(frame, z)
        ints = tuple(c.coeffs[0] for c in order.coeffs)
        assert ints == tuple(c.coeffs[0] for c in brute.coeffs)


def test_q_order_of_32nd_root_of_unity():
    # zeta spans a 4-dimensional sigma-module: its q-order is Phi_8 = x^4 + 1,
    # while its field minimal polynomial is the chosen octic factor of Phi_32.
    frame = FRAME38_Z
    zeta = frame.big.gen()
    assert frame.big.mult_order(zeta) == 32
    order = frame.q_order(zeta, 1)
    assert order.to_string() == "x^4+1"
    assert tuple(c.coeffs[0] for c in _brute_q_order(frame, zeta).coeffs) == (1, 0, 0, 0, 1)
    minpoly = frame.minimal_polynomial(zeta)
    assert minpoly.to_string() == "x^8+x^4+2"  # x^8 + x^4 - 1 mod 3


def test_q_order_galois_invariance():
    frame = FRAME38
    rng = random.Random(21)
    for d in (1, 2, 4):
        for _ in range(6):
            z = frame.big.from_lex_index(rng.randrange(frame.big.size))
            conj = frame.big.frobenius(z, frame.a0 * d)
            assert frame.q_order(z, d) == frame.q_order(conj, d)


def test_is_normal_and_completely_normal():
    frame = modstruct.build_frame(3, 8, PCN8)
    root = frame.big.gen()
    assert frame.is_normal(root, 1)
    assert frame.is_completely_normal(root)
    assert not frame.is_normal(frame.big.zero(), 1)
    assert not frame.is_completely_normal(frame.big.zero())
    assert not frame.is_normal(frame.big.one(), 1)  # order x - 1 != x^8 - 1


def test_normal_iff_order_is_full():
    frame = FRAME38
    rng = random.Random(22)
    full = poly.Poly.x_pow_minus_one(frame.divisor_data(2).sub, 4)
    for _ in range(20):
        z = frame.big.from_lex_index(rng.randrange(frame.big.size))
        assert frame.is_normal(z, 2) == (frame.q_order(z, 2) == full)


def test_projector_completeness_and_idempotence():
    frame = FRAME38
    rng = random.Random(23)
    ks = nt.divisors(frame.n_prime)
    for _ in range(1000):
        z = frame.big.from_lex_index(rng.randrange(frame.big.size))
        parts = [frame.cyclotomic_component(z, k) for k in ks]
        total = frame.big.zero()
        for part, k in zip(parts, ks):
            total = total + part
            assert frame.in_module(part, k)
        assert total == z
    # z in C_k maps to itself under P_k and to 0 under P_j, j != k
    w = frame.cyclotomic_component(frame.big.gen(), 8)
    assert frame.cyclotomic_component(w, 8) == w
    assert frame.cyclotomic_component(w, 4) == frame.big.zero()


def test_module_dimensions_exhaustive():
    frame = FRAME38
    for k in (1, 2, 4, 8):
        vectors = frame.module_vectors(k)
        assert vectors.shape[0] == 3 ** (nt.euler_phi(k))
        # every enumerated vector is annihilated by Phi_k(sigma)^{p^a}
        mat = frame.membership_matrix(k)
        assert not np.any((vectors @ mat.T) % 3)


def test_complete_generators_of_c4_and_c8():
    frame = FRAME38_Z
    zeta = frame.big.gen()
    z3 = frame.big.pow(zeta, 3)
    w8 = zeta + z3
    assert frame.in_module(w8, 8)
    assert frame.is_complete_generator(w8, 8)
    w4 = frame.big.pow(zeta, 2)
    assert frame.in_module(w4, 4)
    assert frame.is_complete_generator(w4, 4)
    assert frame.is_complete_generator(frame.big.one(), 1)
    assert not frame.is_complete_generator(frame.big.zero(), 1)
    with pytest.raises(NotInModule):
        frame.is_complete_generator(zeta, 4)


def test_zeta4_is_normal_in_f9_over_f3():
    # zeta^4 has multiplicative order 8, lies in the F_9 subfield, and is
    # normal there: its component in C_1 and C_2 must both be nonzero.
    frame = FRAME38_Z
    z4 = frame.big.pow(frame.big.gen(), 4)
    assert frame.big.frobenius(z4, 2) == z4  # inside F_9
    c1 = frame.cyclotomic_component(z4, 1)
    c2 = frame.cyclotomic_component(z4, 2)
    assert c1 and c2 and c1 + c2 == z4
    assert frame.is_complete_generator(c1, 1)
    assert frame.is_complete_generator(c2, 2)


def test_complete_generator_census_matches_formula_terms():
    # per-module censuses of (3,8): 2, 2, 8, 48 with product 1536
    counts = modstruct.module_census_product(3, 8)
    assert counts["per_module"] == {1: 2, 2: 2, 4: 8, 8: 48}
    assert counts["product"] == 1536


def test_central_index_criterion_equals_every_level_check():
    # non-exceptional k in F_{3^8}: the single-order criterion at tau_k agrees
    # with generation at every divisor d of the module character,
    # checked exhaustively per module.
    frame = FRAME38
    prime = ff.build_field(3, 1)
    for k in (1, 2, 4):
        char = frame.pa * k // nt.radical(k)
        rad = nt.radical(k)
        for row in frame.module_vectors(k):
            w = frame.big.elem_from_vector(row)
            via_criterion = frame.is_complete_generator(w, k)
            via_levels = True
            for d in nt.divisors(char):
                target = poly.cyclotomic_poly(rad, frame.divisor_data(d).sub).inflate(
                    frame.pa * k // (rad * d)
                )
                if frame.q_order(w, d) != target:
                    via_levels = False
                    break
            assert via_criterion == via_levels


def test_exceptional_split_38():
    frame = FRAME38
    fs = frame.component_polys(8)
    assert len(fs) == 1 and fs[0].to_string() == "x^2+1"
    rng = random.Random(24)
    for _ in range(10):
        z = frame.big.from_lex_index(rng.randrange(frame.big.size))
        w = frame.cyclotomic_component(z, 8)
        parts = frame.exceptional_split(w, 8)
        assert len(parts) == 1
        assert parts[0][1] == w
    assert all(not part for _, part in frame.exceptional_split(frame.big.zero(), 8))
    with pytest.raises(NotExceptional):
        frame.exceptional_split(frame.big.zero(), 4)


def test_exceptional_split_716():
    frame = modstruct.build_frame(7, 16)
    fs = frame.component_polys(16)
    assert len(fs) == 2  # |F^eps_16| = 2
    rng = random.Random(25)
    z = frame.big.from_lex_index(rng.randrange(frame.big.size))
    w = frame.cyclotomic_component(z, 16)
    parts = frame.exceptional_split(w, 16)
    assert len(parts) == 2
    total = frame.big.zero()
    for f, part in parts:
        total = total + part
        # each part is annihilated by f(x^2)^{p^a}
        ann = frame.op_matrix(frame.tau(16), f.inflate(2).pow(frame.pa))
        assert not ((ann @ np.array(part.coeffs, dtype=np.int64)) % 7).any()
    assert total == w
    fs8 = frame.component_polys(8)
    assert len(fs8) == 1  # |F^eps_8| = 1


def test_order_pair_census_38():
    counts = modstruct.order_pair_census(3, 8, 8)
    assert counts["(1,1)"] == 1
    assert counts["(f(x^2),f)"] == 48
    atoms = [v for lbl, v in counts.items() if lbl not in ("(1,1)", "(f(x^2),f)")]
    assert sorted(atoms) == [8, 8, 8, 8]
    assert sum(counts.values()) == 81


def test_order_pair_values():
    frame = FRAME38_Z
    zeta = frame.big.gen()
    w = zeta + frame.big.pow(zeta, 3)
    f = frame.component_polys(8)[0]
    pair = frame.order_pair(w, 8, f)
    assert pair.label == "(f(x^2),f)"
    zero_pair = frame.order_pair(frame.big.zero(), 8, f)
    assert zero_pair.label == "(1,1)"
    assert zero_pair.ord_Q.is_one() and zero_pair.ord_Q2.is_one()
    with pytest.raises(NotInModule):
        frame.order_pair(frame.big.pow(zeta, 2), 8, f)


def test_mixed_order_check_small():
    assert modstruct.mixed_order_check(3, 8, 8)
    assert modstruct.mixed_order_check(7, 8, 8)


def test_mixed_order_check_with_multiplicities():
    # (3, 24): p^a = 3, so W_{8,f} is annihilated by (x^4+1)^3 and the
    # exponent ladders genuinely run over multiplicities 0..3
    assert modstruct.mixed_order_check(3, 24, 8)


def test_order_pair_census_with_multiplicities():
    # multiplicity-stripped census of (3,24), k=8: the lattice class sizes
    # scale the radical sizes {1, 8x4, 48} by q^{(p^a - 1) phi(k)} = 3^8
    counts = modstruct.order_pair_census(3, 24, 8)
    scale = 3**8
    assert counts == {
        "(1,1)": scale,
        "(f(x^2),h1)": 8 * scale,
        "(f(x^2),h2)": 8 * scale,
        "(g1,f)": 8 * scale,
        "(g2,f)": 8 * scale,
        "(f(x^2),f)": 48 * scale,
    }
    # the top class is exactly the complete-generator count of C_8, which
    # equals the k = 8 factor of the closed-form count
    per = modstruct.module_census_product(3, 24)
    assert per["per_module"][8] == 48 * scale
    assert per["product"] == classify.count_cn(3, 24)


def test_cn_census_small_pairs_match_formula():
    for q, n in ((2, 2), (2, 4), (3, 2), (3, 4), (5, 2)):
        assert modstruct.cn_census(q, n) == classify.count_cn(q, n)


def test_cn_census_trivial_extension():
    assert modstruct.cn_census(5, 1) == 4  # nonzero elements of F_5


def test_unit_is_not_completely_normal_in_f9():
    frame = modstruct.build_frame(3, 2)
    assert not frame.is_completely_normal(frame.big.one())
    assert not frame.is_completely_normal(frame.big.zero())
    # an element with sigma(z) independent of z is normal, hence CN here
    count = sum(
        1 for z in frame.big.elements() if frame.is_completely_normal(z)
    )
    assert count == classify.count_cn(3, 2)


def test_cn_census_budget():
    with pytest.raises(TooLarge):
        modstruct.cn_census(3, 16, budget=1000)


def test_decomposition_equivalence_small():
    assert modstruct.decomposition_equivalence(3, 4)
    assert modstruct.decomposition_equivalence(5, 4)


def test_decomposition_equivalence_requires_regular():
    from cnbase.errors import NotRegular

    with pytest.raises(NotRegular):
        modstruct.decomposition_equivalence(2, 6)


def test_census_threads_match_sequential():
    assert modstruct.cn_census(3, 8, threads=4) == modstruct.cn_census(3, 8)


def test_minimal_polynomial_of_modulus_root():
    frame = modstruct.build_frame(3, 8, PCN8)
    minpoly = frame.minimal_polynomial(frame.big.gen())
    assert minpoly.to_string() == "x^8+x^7+2*x^3+2*x^2+2"


def test_frame_with_prime_power_base():
    # base field F_9 inside F_81: q = 9 = 3^2, n = 2
    frame = modstruct.build_frame(9, 2)
    assert frame.big.size == 81
    assert frame.a0 == 2
    # normal elements over F_9: sigma(z) = z^9 must not fix z (order x^2 - 1)
    count = modstruct.cn_census(9, 2)
    assert count == classify.count_cn(9, 2)
