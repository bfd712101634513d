"""Field contexts, arithmetic, Frobenius, embeddings, roots of unity."""

import random

import pytest

from cnbase import field as ff
from cnbase import nt
from cnbase.errors import (
    DivisionByZero,
    NotADivisor,
    NotIrreducible,
    NotPrime,
    OrderUnavailable,
    ZeroElement,
)

F9 = ff.build_field(3, 2)
F81 = ff.build_field(3, 4)
F3_8 = ff.build_field(3, 8)
PCN8 = "x^8+x^7+2x^3+2x^2+2"


def test_build_field_with_explicit_modulus():
    ctx = ff.build_field(3, 8, PCN8)
    assert ctx.size == 3**8
    assert ctx.modulus == (2, 0, 2, 2, 0, 0, 0, 1, 1)


def test_build_field_prime_field():
    f3 = ff.build_field(3, 1)
    assert f3.size == 3
    assert f3.gen() == f3.zero()  # default modulus is x


def test_build_field_rejects_reducible_and_composite():
    with pytest.raises(NotIrreducible):
        ff.build_field(3, 8, [2, 0, 0, 0, 0, 0, 0, 0, 1])  # x^8 - 1
    with pytest.raises(NotPrime):
        ff.build_field(4, 2)


def test_default_modulus_is_deterministic_and_minimal():
    # lex-min monic irreducible quadratic over F_3 is x^2 + 1
    assert ff.build_field(3, 2).modulus == (1, 0, 1)
    assert ff.build_field(3, 2) is ff.build_field(3, 2)  # cached


def test_field_axioms_on_random_triples():
    rng = random.Random(5)
    for ctx in (F9, F81):
        for _ in range(50):
            a = ctx.from_lex_index(rng.randrange(ctx.size))
            b = ctx.from_lex_index(rng.randrange(ctx.size))
            c = ctx.from_lex_index(rng.randrange(ctx.size))
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)


def test_inverse_and_fermat():
    rng = random.Random(9)
    ctx = F3_8
    one = ctx.one()
    assert one.inv() == one
    for _ in range(25):
        z = ctx.from_lex_index(rng.randrange(1, ctx.size))
        assert z * z.inv() == one
        assert ctx.pow(z, ctx.size - 2) * z == one
    with pytest.raises(DivisionByZero):
        ctx.zero().inv()


def test_generator_order_in_f9():
    g = F9.primitive_element()
    assert F9.pow(g, 8) == F9.one()
    assert F9.pow(g, 4) == -F9.one()
    # brute-force order oracle
    powers = set()
    z = F9.one()
    for _ in range(8):
        z = z * g
        powers.add(z.coeffs)
    assert len(powers) == 8


def test_frobenius_fixes_prime_field_and_closes_orbit():
    rng = random.Random(2)
    for c in range(3):
        z = F3_8.scalar(c)
        assert F3_8.frobenius(z, 1) == z
    for _ in range(100):
        z = F3_8.from_lex_index(rng.randrange(F3_8.size))
        assert F3_8.frobenius(z, F3_8.m) == z
        w = z
        for _ in range(8):
            w = F3_8.frobenius(w, 1)
        assert w == z


def test_frobenius_is_field_homomorphism():
    rng = random.Random(4)
    for _ in range(50)        :
        a = F81.from_lex_index(rng.randrange(F81.size))
        b = F81.from_lex_index(rng.randrange(F81.size))
        assert F81.frobenius(a + b, 1) == F81.frobenius(a, 1) + F81.frobenius(b, 1)
        assert F81.frobenius(a * b, 1) == F81.frobenius(a, 1) * F81.frobenius(b, 1)


def test_frobenius_composition_law():
    rng = random.Random(6)
    for _ in range(20):
        z = F3_8.from_lex_index(rng.randrange(F3_8.size))
        assert F3_8.frobenius(F3_8.frobenius(z, 3), 2) == F3_8.frobenius(z, 5)
        assert F3_8.frobenius(z, 0) == z


def test_frobenius_matches_direct_power():
    rng = random.Random(8)
    for _ in range(20):
        z = F81.from_lex_index(rng.randrange(F81.size))
        assert F81.frobenius(z, 1) == F81.pow(z, 3)
        assert F81.frobenius(z, 2) == F81.pow(z, 9)


def test_fixed_points_of_sigma_d_count():
    # exhaustive on F_{3^4}: #{z : z^{3^d} = z} = 3^d for each d | 4
    for d in (1, 2, 4):
        count = sum(
            1 for z in F81.elements() if F81.frobenius(z, d) == z
        )
        assert count == 3**d


def test_is_primitive_against_brute_force_f81_and_f25():
    f25 = ff.build_field(5, 2)
    for ctx in (F81, f25):
        order = ctx.order
        for z in ctx.elements():
            if not z:
                continue
            brute = ctx.mult_order(z) == order
            assert ctx.is_primitive(z) == brute
    with pytest.raises(ZeroElement):
        F9.is_primitive(F9.zero())


def test_one_is_not_primitive():
    assert not F9.is_primitive(F9.one())
    assert not F9.is_primitive(-F9.one())  # order 2 < 8


def test_known_pcn_polynomial_root_is_primitive():
    ctx = ff.build_field(3, 8, PCN8)
    assert ctx.is_primitive(ctx.gen())


def test_embed_f9_into_f3_8():
    emb = ff.embed_subfield(F3_8, 2)
    # image = fixed points of sigma^2, 9 elements
    fixed = {z.coeffs for z in F3_8.elements() if F3_8.frobenius(z, 2) == z}
    image = {emb.map(z).coeffs for z in emb.sub.elements()}
    assert image == fixed and len(image) == 9
    # ring homomorphism on exhaustive inputs
    for a in emb.sub.elements():
        for b in emb.sub.elements():
            assert emb.map(a + b) == emb.map(a) + emb.map(b)
            assert emb.map(a * b) == emb.map(a) * emb.map(b)
    assert emb.map(emb.sub.one()) == F3_8.one()


def test_embedding_identity_cases():
    emb1 = ff.embed_subfield(F3_8, 1)
    assert emb1.map(emb1.sub.scalar(2)) == F3_8.scalar(2)
    embm = ff.embed_subfield(F3_8, 8, sub=F3_8)
    assert embm.map(F3_8.gen()) == F3_8.gen()
    with pytest.raises(NotADivisor):
        ff.embed_subfield(F3_8, 3)


def test_embedding_section_roundtrip():
    emb = ff.embed_subfield(F3_8, 4)
    for i in (0, 1, 5, 17, 80):
        z = emb.sub.from_lex_index(i)
        assert emb.section(emb.map(z)) == z
    assert not emb.contains(F3_8.gen())  # generator has degree 8


def test_primitive_root_of_unity():
    z1 = ff.primitive_root_of_unity(F9, 1)
    assert z1 == F9.one()
    z2 = ff.primitive_root_of_unity(F9, 2)
    assert z2 == -F9.one()
    zeta = ff.primitive_root_of_unity(F3_8, 32)
    assert F3_8.pow(zeta, 32) == F3_8.one()
    assert F3_8.pow(zeta, 16) == -F3_8.one()
    assert F3_8.mult_order(zeta) == 32
    with pytest.raises(OrderUnavailable):
        ff.primitive_root_of_unity(F9, 3)


def test_trace_to_prime_is_additive_and_matches_definition():
    rng = random.Random(12)
    for _ in range(30):
        z = F81.from_lex_index(rng.randrange(F81.size))
        direct = z
        total = z
        for _ in range(3):
            direct = F81.frobenius(direct, 1)
            total = total + direct
        # total lies in the prime field
        assert total.coeffs[1:] == (0,) * 3
        assert F81.trace_to_prime(z) == total.coeffs[0]


def test_lex_enumeration_roundtrip():
    for i in (0, 1, 2, 5, 6560):
        assert F3_8.to_lex_index(F3_8.from_lex_index(i)) == i
    vecs = F3_8.lex_vectors(0, 10)
    for i in range(10):
        assert tuple(int(v) for v in vecs[i]) == F3_8.from_lex_index(i).coeffs
