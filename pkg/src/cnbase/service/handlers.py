"""Request handlers: the single implementation behind both the HTTP
endpoints and the in-process CLI calls."""

from __future__ import annotations

import os

from .. import __version__, MODULUS_POLICY, DEFAULT_BUDGET
from .. import chars, classify, modstruct, nt, poly, search
from ..errors import TooLarge
from . import models


def default_budget() -> int:
    env = os.environ.get("CNBASE_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


def _meta(seed: int = 0, budget: int | None = None) -> models.Meta:
    return models.Meta(
        version=__version__,
        seed=seed,
        modulus_policy=MODULUS_POLICY,
        budget=budget if budget is not None else default_budget(),
    )


def handle_classify(req: models.ClassifyRequest) -> models.ClassifyResponse:
    q, n = req.q, req.n
    nt.split_prime_power(q)  # raises NotPrimePower early
    if not classify.is_regular(q, n):
        return models.ClassifyResponse(
            q=q,
            n=n,
            regular=False,
            reason=classify.regularity_diagnostic(q, n),
            meta=_meta(),
        )
    prof = classify.profile(q, n, with_omega=True, factor_budget=req.factor_budget)
    criterion_holds = None
    weak_holds = None
    if n % 2 == 0 and q % 4 == 3:
        criterion_holds = classify.sufficient_criterion(
            q, n, factor_budget=req.factor_budget
        ).holds
        weak_holds = classify.weak_criterion(q, n).holds
    else:
        criterion_holds = classify.sufficient_criterion(
            q, n, allow_any_regular=True, factor_budget=req.factor_budget
        ).holds
    return models.ClassifyResponse(
        q=q,
        n=n,
        regular=True,
        exceptional_divisors=sorted(prof.set_E),
        completely_basic=classify.is_completely_basic(q, n),
        omega=prof.omega,
        Omega=prof.Omega,
        Omega_eps=prof.Omega_eps,
        Omega_c=prof.Omega_c,
        criterion_76_holds=criterion_holds,
        weak_criterion_holds=weak_holds,
        cn_count=str(classify.count_cn(q, n)),
        meta=_meta(),
    )


def handle_criterion(req: models.CriterionRequest) -> models.CriterionResponse:
    rep = classify.sufficient_criterion(
        req.q, req.n, allow_any_regular=req.allow_any_regular, factor_budget=req.factor_budget
    )
    weak_holds = None
    weak_lhs = None
    if req.q % 4 == 3 and req.n % 2 == 0:
        weak = classify.weak_criterion(req.q, req.n)
        weak_holds = weak.holds
        weak_lhs = str(weak.lhs)
    return models.CriterionResponse(
        q=req.q,
        n=req.n,
        holds=rep.holds,
        omega=rep.detail["omega"],
        Omega=rep.detail["Omega"],
        Omega_eps=rep.detail["Omega_eps"],
        Omega_c=rep.detail["Omega_c"],
        lhs=str(rep.lhs) if rep.lhs is not None else None,
        rhs=str(rep.rhs),
        two_power=str(rep.detail["two_power"]),
        q_n=str(rep.detail["q_n"]),
        weak_holds=weak_holds,
        weak_lhs=weak_lhs,
        meta=_meta(),
    )


def handle_scan(req: models.ScanRequest) -> models.ScanResponse:
    rows = classify.scan_rows(
        req.q_max,
        req.n_max,
        q_min=req.q_min,
        n_min=req.n_min,
        n_mod=req.n_mod,
        q_mod4=req.q_mod4,
        factor_budget=req.factor_budget,
        threads=req.threads,
    )
    out_rows = [
        models.ScanRow(
            q=r["q"],
            n=r["n"],
            regular=r["regular"],
            decided_by=r["decided_by"],
            criterion_holds=r["criterion_holds"],
            weak_holds=r.get("weak_holds"),
            omega=r.get("omega"),
            Omega_c=r.get("Omega_c"),
        )
        for r in rows
    ]
    failures = [(r["q"], r["n"]) for r in rows if not r["criterion_holds"]]
    return models.ScanResponse(rows=out_rows, failures=failures, meta=_meta())


def handle_count(req: models.CountRequest) -> models.CountResponse:
    return models.CountResponse(
        q=req.q,
        n=req.n,
        cn_count=str(classify.count_cn(req.q, req.n)),
        meta=_meta(),
    )


def handle_census(req: models.CensusRequest) -> models.CensusResponse:
    q, n = req.q, req.n
    budget = req.budget if req.budget is not None else default_budget()
    formula = classify.count_cn(q, n)
    per_module = modstruct.module_census_product(q, n, budget=budget, modulus=req.modulus)
    frame = modstruct.build_frame(q, n, req.modulus)
    lattice_counts = {}
    for k in sorted(frame.exceptional_divisors):
        for i in range(len(frame.component_polys(k))):
            try:
                counts = modstruct.order_pair_census(q, n, k, i, budget=budget, modulus=req.modulus)
            except TooLarge:
                continue
            lattice_counts[f"k={k},f={i}"] = counts
    exhaustive = None
    match = None
    size = q**n
    if req.expensive or size <= budget:
        exhaustive = modstruct.cn_census(
            q,
            n,
            budget=max(budget, size) if req.expensive else budget,
            modulus=req.modulus,
            threads=req.threads,
        )
        match = exhaustive == formula
    return models.CensusResponse(
        q=q,
        n=n,
        formula=str(formula),
        per_module={k: str(v) for k, v in per_module["per_module"].items()},
        per_module_product=str(per_module["product"]),
        per_module_match=per_module["product"] == formula,
        lattice_counts=lattice_counts,
        exhaustive=str(exhaustive) if exhaustive is not None else None,
        match=match,
        meta=_meta(budget=budget),
    )


def handle_verify(req: models.VerifyRequest) -> models.VerifyResponse:
    pcn = search.verify_pcn_poly(req.p, req.poly, base_q=req.base_q)
    return models.VerifyResponse(p=req.p, poly=req.poly, pcn=pcn, meta=_meta())


def handle_search(req: models.SearchRequest) -> models.SearchResponse:
    budget = req.budget if req.budget is not None else default_budget()
    if (req.q, req.n) in ((3, 8), (3, 16)) and req.strategy == "construction":
        report = search.construct_roots_of_unity(req.q, req.n)
        cert = report.certificate.to_json()
        cert["component_facts"] = report.component_facts
    else:
        cert = search.find_pcn(
            req.q,
            req.n,
            strategy=req.strategy,
            seed=req.seed,
            budget=budget,
            modulus=req.modulus,
            threads=req.threads,
        ).to_json()
    return models.SearchResponse(
        q=req.q, n=req.n, certificate=cert, meta=_meta(seed=req.seed, budget=budget)
    )


def handle_recheck(req: models.RecheckRequest) -> models.RecheckResponse:
    cert = dict(req.certificate)
    cert.pop("component_facts", None)
    return models.RecheckResponse(valid=search.recheck(cert), meta=_meta())


def handle_chars_verify(req: models.CharsVerifyRequest) -> models.CharsVerifyResponse:
    verifier = chars.get_verifier(req.q, req.n, req.modulus)
    frame = verifier.frame
    base = frame.divisor_data(1).sub
    checks: dict[str, bool] = {}
    max_dev = 0.0
    for k in nt.divisors(frame.n_prime)[:4]:
        g = poly.cyclotomic_poly(k, base)
        dev = verifier.orthogonality_check(1, g)
        max_dev = max(max_dev, dev)
        checks[f"orthogonality_phi_{k}"] = dev <= 1e-6 * base.size ** int(g.degree)
        checks[f"A_phi_{k}"] = verifier.verify_A_gd(1, g)
    checks["primitivity_indicator"] = verifier.verify_P()
    checks["gauss_magnitudes"] = verifier.verify_gauss_magnitudes(seed=req.seed)
    if frame.regular:
        for k in sorted(frame.exceptional_divisors):
            for i in range(len(frame.component_polys(k))):
                checks[f"exceptional_product_k{k}_f{i}"] = verifier.verify_exceptional_product(k, i)
    return models.CharsVerifyResponse(
        q=req.q,
        n=req.n,
        checks=checks,
        max_orthogonality_deviation=max_dev,
        meta=_meta(seed=req.seed),
    )
