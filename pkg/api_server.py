import traceback
from typing import Any, Dict, Optional, Union

import uvicorn
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from src.config import Config
from src.constructions.reduction import reduce_pipeline
from src.dilators.registry import dilator_names, get_dilator
from src.errors import DilatorForgeError
from src.fixpoint.terms import fix_system
from src.pipeline.report_generator import generate_suite_summary
from src.pipeline.suites import run_suite, suite_names
from src.utils.log_utils import get_logger, setup_logging
from src.utils.reporting import SuiteReport

setup_logging()
logger = get_logger("API")

app = FastAPI(title="dilator-forge API")

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


class CompareRequest(BaseModel):
    dilator: str = "omega"
    family: Optional[Union[str, Dict[str, Any]]] = None
    h_index: int = Field(default=1, ge=0)
    first: Dict[str, Any]
    second: Dict[str, Any]


class CompareResponse(BaseModel):
    dilator: str
    ordering: str
    goedel: Dict[str, int]


class ReduceRequest(BaseModel):
    family: Optional[Union[str, Dict[str, Any]]] = None
    code_bound: int = Field(default=200, ge=0)
    depth: int = Field(default=6, gt=0)
    width: int = Field(default=4, gt=0)


def _server_error(e: Exception) -> HTTPException:
    if isinstance(e, DilatorForgeError):
        logger.warning(f"Rejected request: {e}")
        return HTTPException(status_code=400, detail=str(e))
    logger.error(f"Unhandled error: {e}")
    traceback.print_exc()
    return HTTPException(status_code=500, detail=str(e))


@app.get("/api/v1/health")
def health():
    return {"status": "ok", "suites": len(suite_names()), "dilators": dilator_names()}


@app.get("/api/v1/suites")
def list_suites():
    return {"suites": suite_names()}


@app.post("/api/v1/suites/{name}", response_model=SuiteReport)
def run_named_suite(name: str, config: Optional[Config] = None):
    try:
        config = config or Config()
        logger.info(f"Suite request '{name}' (seed {config.seed})")
        report = run_suite(name, config)
        logger.info(generate_suite_summary(report).splitlines()[0])
        return report
    except Exception as e:
        raise _server_error(e)


@app.post("/api/v1/fix/compare", response_model=CompareResponse)
def compare_terms(request: CompareRequest):
    try:
        family = Config.build(family=request.family).tree_family()
        T = get_dilator(request.dilator, family, request.h_index)
        system = fix_system(T)
        s = system.term_from_json(request.first)
        t = system.term_from_json(request.second)
        ordering = system.checked_compare(s, t)
        logger.info(f"Compared two terms of Fix({T.name}): {ordering}")
        return CompareResponse(
            dilator=T.name,
            ordering=str(ordering),
            goedel={"first": system.goedel(s), "second": system.goedel(t)},
        )
    except Exception as e:
        raise _server_error(e)


@app.post("/api/v1/reduce")
def reduce_family(request: ReduceRequest):
    try:
        family = Config.build(family=request.family).tree_family()
        logger.info(f"Reduce request for {family.name}, code bound {request.code_bound}")
        result = reduce_pipeline(family, request.code_bound, request.depth, request.width)
        payload = result.to_json()
        payload["passed"] = result.report.passed
        payload["summary"] = generate_suite_summary(result.report)
        return payload
    except Exception as e:
        raise _server_error(e)


if __name__ == "__main__":
    uvicorn.run(app, host="0.0.0.0", port=8000)
