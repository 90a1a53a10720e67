"""FastAPI application exposing the toolkit over HTTP.

Run with:  uvicorn ymproca.service.app:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import handlers
from . import schemas as sc

app = FastAPI(
    title="ymproca",
    description=(
        "Clifford-algebra toolkit for constant solutions of massive "
        "Yang-Mills field equations: verification, solution factories, "
        "numerical search, matrix representations and perturbation series."
    ),
    version="0.1.0",
)


def _run(handler, request):
    try:
        return handler(request)
    except (ValueError, ZeroDivisionError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/verify", response_model=sc.VerifyResponse)
def verify(request: sc.VerifyRequest) -> sc.VerifyResponse:
    return _run(handlers.handle_verify, request)


@app.post("/factory", response_model=sc.CandidateModel)
def factory(request: sc.FactoryRequest) -> sc.CandidateModel:
    return _run(handlers.handle_factory, request)


@app.post("/solve", response_model=sc.SolveResponse)
def solve(request: sc.SolveRequest) -> sc.SolveResponse:
    return _run(handlers.handle_solve, request)


@app.post("/series", response_model=sc.SeriesResponse)
def series(request: sc.SeriesRequest) -> sc.SeriesResponse:
    return _run(handlers.handle_series, request)


@app.post("/classify", response_model=sc.ClassifyResponse)
def classify(request: sc.ClassifyRequest) -> sc.ClassifyResponse:
    return _run(handlers.handle_classify, request)


@app.post("/repr", response_model=sc.ReprResponse)
def matrix_images(request: sc.ReprRequest) -> sc.ReprResponse:
    return _run(handlers.handle_repr, request)


@app.post("/conserve", response_model=sc.ConserveResponse)
def conserve(request: sc.ConserveRequest) -> sc.ConserveResponse:
    return _run(handlers.handle_conserve, request)
