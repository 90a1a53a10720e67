"""Request handlers shared by the FastAPI routes and the CLI client."""

from __future__ import annotations

from fractions import Fraction

from .. import serialization as ser
from ..clifford import Algebra
from ..field_series import (
    PlaneWaveField,
    conservation_defect,
    perturbation_series,
)
from ..lie_ymp import (
    Metric,
    SolutionCandidate,
    classify_n2,
    classify_n3,
    clifford_lie_basis,
    factory_anticommuting,
    factory_commuting,
    factory_extra_n3,
    factory_grassmann,
    factory_zero_subset,
    verify,
)
from ..matrix_rep import embed_degenerate, faithful_rep
from ..newton_solver import expand_system, multistart, snap_rational
from . import schemas as sc


def _candidate_from_model(model: sc.CandidateModel) -> SolutionCandidate:
    return ser.candidate_from_json(model.model_dump(by_alias=True))


def _candidate_to_model(c: SolutionCandidate) -> sc.CandidateModel:
    return sc.CandidateModel.model_validate(ser.candidate_to_json(c))


def _field_from_model(model: sc.FieldModel) -> PlaneWaveField:
    return ser.field_from_json(model.model_dump(by_alias=True))


def _field_to_model(f: PlaneWaveField) -> sc.FieldModel:
    return sc.FieldModel.model_validate(ser.field_to_json(f))


def _signature_algebra(signature, field: str) -> Algebra:
    if signature is None or not 2 <= len(signature) <= 3:
        raise ValueError("signature must be p,q or p,q,r")
    p, q = signature[0], signature[1]
    r = signature[2] if len(signature) == 3 else 0
    return Algebra(p, q, r, field)


def handle_verify(req: sc.VerifyRequest) -> sc.VerifyResponse:
    cand = _candidate_from_model(req.candidate)
    if req.lam is not None:
        cand = cand.with_components(cand.A, lam=ser.rational_from_json(req.lam))
    report = verify(cand, tol=req.tol)
    return sc.VerifyResponse(ok=report.ok, max_residual_norm=report.max_residual_norm)


def handle_factory(req: sc.FactoryRequest) -> sc.CandidateModel:
    kappa = ser.rational_from_json(req.kappa)
    if req.cls == "anticommuting":
        alg = _signature_algebra(req.signature, req.field)
        if req.theta is None:
            raise ValueError("anticommuting factory needs --theta")
        cand = factory_anticommuting(alg, Metric(alg.p, alg.q), req.theta, kappa)
    elif req.cls == "extra_n3":
        alg = _signature_algebra(req.signature, req.field)
        cand = factory_extra_n3(alg)
    elif req.cls == "grassmann":
        alg = _signature_algebra(req.signature, "C")
        if req.count is None:
            raise ValueError("grassmann factory needs --count")
        cand = factory_grassmann(alg, req.count)
    elif req.cls == "zero_subset":
        if req.candidate is None or not req.zero_indices:
            raise ValueError("zero_subset factory needs a candidate and --zero indices")
        cand = factory_zero_subset(_candidate_from_model(req.candidate), req.zero_indices)
    elif req.cls == "commuting":
        if req.signature is None or req.seeds is None:
            raise ValueError("commuting factory needs a signature and seeds")
        alg = _signature_algebra(req.signature, req.field)
        seeds = [
            ser.multivector_from_json(alg, m.model_dump(by_alias=True))
            for m in req.seeds
        ]
        cand = factory_commuting(alg, seeds, Metric(alg.p, alg.q))
    else:  # pragma: no cover - schema forbids it
        raise ValueError(f"unknown factory class {req.cls!r}")
    return _candidate_to_model(cand)


def handle_solve(req: sc.SolveRequest) -> sc.SolveResponse:
    alg = _signature_algebra(req.signature, req.field)
    if alg.is_degenerate:
        raise ValueError("the solver works over non-degenerate algebras")
    basis = clifford_lie_basis(alg)
    metric = Metric(alg.p, alg.q)
    system = expand_system(basis, metric, ser.rational_from_json(req.lam))
    reports = multistart(
        system, seed=req.seed, restarts=req.restarts, tol=req.tol, box=req.box
    )
    solutions = []
    report_models = []
    for rep in reports:
        report_models.append(
            sc.SolveReportModel(
                coordinates=[float(x) for x in rep.a],
                residual_norm=rep.residual_norm,
                iterations=rep.iterations,
                restart_index=rep.restart_index,
                seed=rep.seed,
                rational_exact=rep.rational_exact,
            )
        )
        cand = system.embed_exact(snap_rational(rep.a))
        solutions.append(_candidate_to_model(cand))
    return sc.SolveResponse(
        equations=system.size, solutions=solutions, reports=report_models
    )


def handle_series(req: sc.SeriesRequest) -> sc.SeriesResponse:
    base = _candidate_from_model(req.base)
    order1 = _field_from_model(req.order1) if req.order1 is not None else None
    orders, norms = perturbation_series(
        base,
        req.order,
        [tuple(Fraction(v) for v in k) for k in req.support],
        theta=req.theta,
        rho=Fraction(str(req.rho)),
        order1=order1,
        tol=req.tol,
    )
    return sc.SeriesResponse(
        orders=[_field_to_model(o) for o in orders],
        q_norms=norms,
    )


def handle_classify(req: sc.ClassifyRequest) -> sc.ClassifyResponse:
    cand = _candidate_from_model(req.candidate)
    if cand.metric.n == 2:
        result = classify_n2(cand)
    elif cand.metric.n == 3:
        result = classify_n3(cand)
    else:
        raise ValueError("classification covers n = 2 and n = 3 candidates")
    mu = ser.scalar_to_json(result.mu) if result.mu is not None else None
    return sc.ClassifyResponse(label=result.label, mu=mu)


def handle_repr(req: sc.ReprRequest) -> sc.ReprResponse:
    alg = Algebra(req.algebra.p, req.algebra.q, req.algebra.r, "C")
    if alg.is_degenerate:
        emb = embed_degenerate(alg)
        rep = faithful_rep(emb.target)
        images = [rep.apply(img) for img in emb.images]
        target = sc.AlgebraModel(
            p=emb.target.p, q=emb.target.q, r=0, field="C"
        )
    else:
        rep = faithful_rep(alg)
        images = list(rep.images)
        target = None
    return sc.ReprResponse(
        order=rep.order,
        images=[ser.cmatrix_to_json(m) for m in images],
        target=target,
    )


def handle_conserve(req: sc.ConserveRequest) -> sc.ConserveResponse:
    field = _field_from_model(req.field)
    defect = conservation_defect(field, rho=Fraction(str(req.rho)))
    return sc.ConserveResponse(ok=defect.is_zero(), defect_norm=defect.norm())
