"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  All comparisons are exact integer comparisons except the character
checks, which use the stated absolute tolerance of 1e-6 per summand.
"""

import time

from cnbase import chars, classify, modstruct, nt, poly, search

PCN8 = "x^8+x^7+2x^3+2x^2+2"
PCN16 = "x^16+x^15+2x^6+2x+2"


def _report(num: int, name: str, ok: bool, started: float) -> None:
    elapsed = time.time() - started
    print(f"[acceptance {num:02d}] {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {name}")
    assert ok, f"acceptance criterion {num} failed: {name}"


def test_01_exact_count_3_8():
    started = time.time()
    ok = classify.count_cn(3, 8) == 1536 and modstruct.cn_census(3, 8) == 1536
    _report(1, "count and census of (3,8) equal 1536", ok, started)


def test_02_exact_count_3_16():
    started = time.time()
    formula = classify.count_cn(3, 16)
    per_module = modstruct.module_census_product(3, 16)
    ok = formula == 6291456 and per_module["product"] == 6291456
    _report(2, "count of (3,16) is 6291456 and per-module censuses multiply to it", ok, started)


def test_03_known_pcn_polynomials():
    started = time.time()
    ok = search.verify_pcn_poly(3, PCN8) and search.verify_pcn_poly(3, PCN16)
    _report(3, "known degree-8 and degree-16 polynomials verify as PCN", ok, started)


def test_04_root_of_unity_constructions():
    started = time.time()
    rep8 = search.construct_roots_of_unity(3, 8)
    rep16 = search.construct_roots_of_unity(3, 16)
    facts_ok = (
        rep8.component_facts["zeta_plus_zeta3_generates_C8"]
        and rep8.component_facts["zeta2_generates_C4"]
        and rep8.component_facts["zeta4_normal_over_f3"]
        and rep16.component_facts["u_generates_C16"]
        and all(rep8.component_facts.values())
        and all(rep16.component_facts.values())
    )
    ok = facts_ok and search.recheck(rep8.certificate) and search.recheck(rep16.certificate)
    _report(4, "explicit root-of-unity constructions for (3,8) and (3,16)", ok, started)


def test_05_criterion_fixtures():
    started = time.time()
    expected = {
        (19, 8): (6, 6, 4096, 130321, True),
        (11, 8): (5, 6, 2048, 14641, True),
        (11, 16): (7, 10, 2**17, 11**8, True),
        (7, 8): (4, 6, 1024, 2401, True),
        (7, 16): (6, 12, 2**18, 7**8, True),
        (7, 24): (11, 18, 2**29, 7**12, True),
        (3, 8): (3, 6, None, None, False),
        (3, 16): (5, 10, None, None, False),
    }
    ok = True
    for (q, n), (omega, omega_c, two_power, half, holds) in expected.items():
        rep = classify.sufficient_criterion(q, n)
        ok &= rep.detail["omega"] == omega
        ok &= rep.detail["Omega_c"] == omega_c
        ok &= rep.holds == holds
        if holds:
            ok &= rep.detail["two_power"] == two_power
            ok &= rep.lhs == half
            ok &= two_power < half
    # the two failing pairs compare the other way around
    rep38 = classify.sufficient_criterion(3, 8)
    ok &= rep38.rhs == 441 and rep38.lhs == 81 and rep38.rhs > rep38.lhs
    rep316 = classify.sufficient_criterion(3, 16)
    ok &= rep316.rhs == 31713 and rep316.lhs == 6561 and rep316.rhs > rep316.lhs
    _report(5, "eight reference criterion comparisons reproduce exactly", ok, started)


def test_06_scan_failures():
    started = time.time()
    failures = classify.scan_pairs(199, 64, n_mod=8, factor_budget=300.0)
    ok = [rep.pair for rep in failures] == [(3, 8), (3, 16)]
    _report(6, "scan q<=199, n=0 mod 8, n<=64 fails exactly at (3,8) and (3,16)", ok, started)


def test_07_factorization_fixtures():
    started = time.time()
    expected = {
        19**8 - 1: ((2, 5), (3, 2), (5, 1), (17, 1), (181, 1), (3833, 1)),
        11**8 - 1: ((2, 5), (3, 1), (5, 1), (61, 1), (7321, 1)),
        11**16 - 1: ((2, 6), (3, 1), (5, 1), (17, 1), (61, 1), (7321, 1), (6304673, 1)),
        7**8 - 1: ((2, 6), (3, 1), (5, 2), (1201, 1)),
        7**16 - 1: ((2, 7), (3, 1), (5, 2), (17, 1), (1201, 1), (169553, 1)),
        7**24 - 1: (
            (2, 6),
            (3, 2),
            (5, 2),
            (13, 1),
            (19, 1),
            (43, 1),
            (73, 1),
            (181, 1),
            (193, 1),
            (409, 1),
            (1201, 1),
        ),
        3**16 - 1: ((2, 6), (5, 1), (17, 1), (41, 1), (193, 1)),
    }
    ok = all(nt.factorize(m).factors == fac for m, fac in expected.items())
    _report(7, "the seven displayed prime decompositions reproduce exactly", ok, started)


def test_08_order_pair_lattice():
    started = time.time()
    element_counts = modstruct.order_pair_census(3, 8, 8)
    char_counts = chars.get_verifier(3, 8).char_order_pair_census(8)
    expected = {
        "(1,1)": 1,
        "(f(x^2),h1)": 8,
        "(f(x^2),h2)": 8,
        "(g1,f)": 8,
        "(g2,f)": 8,
        "(f(x^2),f)": 48,
    }
    ok = element_counts == expected and char_counts == expected
    _report(8, "order-pair census of (3,8), k=8 matches {1, 8x4, 48} on both sides", ok, started)


def test_09_mixed_order_property():
    started = time.time()
    ok = (
        modstruct.mixed_order_check(3, 8, 8)
        and modstruct.mixed_order_check(3, 16, 8)
        and modstruct.mixed_order_check(7, 8, 8)
    )
    _report(9, "mixed-order property holds exhaustively for (3,8), (3,16), (7,8) at k=8", ok, started)


def test_10_character_identities():
    started = time.time()
    ok = True
    for q, n in ((3, 2), (3, 4), (3, 8)):
        verifier = chars.get_verifier(q, n)
        base = verifier.frame.divisor_data(1).sub
        for k in nt.divisors(verifier.frame.n_prime):
            if nt.euler_phi(k) > 4:
                continue
            g = poly.cyclotomic_poly(k, base)
            dev = verifier.orthogonality_check(1, g)
            ok &= dev <= 1e-6 * base.size ** int(g.degree)
            ok &= verifier.verify_A_gd(1, g)
        ok &= verifier.verify_P()
        ok &= verifier.verify_gauss_magnitudes(seed=1)
    ok &= chars.get_verifier(3, 8).verify_exceptional_product(8)
    _report(10, "orthogonality, divisibility indicators, primitivity, Gauss sums, product formula", ok, started)


def test_11_decomposition_equivalence():
    started = time.time()
    ok = (
        modstruct.decomposition_equivalence(3, 4)
        and modstruct.decomposition_equivalence(3, 8)
        and modstruct.decomposition_equivalence(5, 4)
    )
    _report(11, "complete normality equals componentwise complete generation on (3,4), (3,8), (5,4)", ok, started)


def test_12_pcn_exists_on_the_full_grid():
    started = time.time()
    limit = 2**24
    pairs = []
    q = 2
    while q * q <= limit:
        q += 1
        try:
            nt.split_prime_power(q)
        except Exception:
            continue
        if q % 4 != 3:
            continue
        n = 2
        while q**n <= limit:
            if classify.is_regular(q, n):
                pairs.append((q, n))
            n += 2
    ok = len(pairs) > 300
    for q, n in pairs:
        cert = search.find_pcn(q, n)
        ok &= search.recheck(cert)
        if not ok:
            break
    _report(12, f"exhaustive PCN search succeeds on all {len(pairs)} regular grid pairs", ok, started)
