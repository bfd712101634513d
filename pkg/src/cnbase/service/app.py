"""FastAPI application: one POST endpoint per command."""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import CnbaseError
from . import handlers, models


def create_app() -> FastAPI:
    app = FastAPI(
        title="cnbase",
        version=__version__,
        description=(
            "Classification, counting, search and verification of primitive "
            "completely normal elements of Galois field extensions."
        ),
    )

    @app.exception_handler(CnbaseError)
    async def _library_error(request, exc: CnbaseError):
        return JSONResponse(
            status_code=422,
            content=models.ErrorResponse(
                error=type(exc).__name__, message=str(exc)
            ).model_dump(),
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/classify", response_model=models.ClassifyResponse)
    def classify_endpoint(req: models.ClassifyRequest):
        return handlers.handle_classify(req)

    @app.post("/criterion", response_model=models.CriterionResponse)
    def criterion_endpoint(req: models.CriterionRequest):
        return handlers.handle_criterion(req)

    @app.post("/scan", response_model=models.ScanResponse)
    def scan_endpoint(req: models.ScanRequest):
        return handlers.handle_scan(req)

    @app.post("/count", response_model=models.CountResponse)
    def count_endpoint(req: models.CountRequest):
        return handlers.handle_count(req)

    @app.post("/census", response_model=models.CensusResponse)
    def census_endpoint(req: models.CensusRequest):
        return handlers.handle_census(req)

    @app.post("/verify", response_model=models.VerifyResponse)
    def verify_endpoint(req: models.VerifyRequest):
        return handlers.handle_verify(req)

    @app.post("/search", response_model=models.SearchResponse)
    def search_endpoint(req: models.SearchRequest):
        return handlers.handle_search(req)

    @app.post("/recheck", response_model=models.RecheckResponse)
    def recheck_endpoint(req: models.RecheckRequest):
        return handlers.handle_recheck(req)

    @app.post("/chars-verify", response_model=models.CharsVerifyResponse)
    def chars_verify_endpoint(req: models.CharsVerifyRequest):
        return handlers.handle_chars_verify(req)

    return app


app = create_app()
