import json
import logging

import uvicorn
from fastapi import FastAPI, HTTPException

from .composer import auto_resolve, potential_conflicts
from .config import get_settings
from .errors import BcError
from .schemas import ConflictsRequest, Literal, ResolveRequest, SourceRequest
from .transitions import Reasoner, export_json
from .workflow import description_from_text

logging.basicConfig(level=get_settings().log_level)
logger = logging.getLogger(__name__)

app = FastAPI(
    title="bcmas",
    description="Transition systems, potential conflicts and resolutions of BC action descriptions",
    version="1.0.0"
)


@app.get("/")
async def root():
    return {
        "message": "bcmas action description service",
        "version": "1.0.0",
        "endpoints": ["/transitions", "/conflicts", "/resolve"],
    }


@app.get("/health")
async def health_check():
    return {"status": "healthy", "service": "bcmas"}


def _failed(endpoint: str, e: Exception) -> HTTPException:
    if isinstance(e, BcError):
        logger.warning(f"{endpoint}: rejected description: {e}")
        return HTTPException(status_code=422, detail=str(e))
    logger.error(f"{endpoint} error: {str(e)}")
    return HTTPException(status_code=500, detail=f"Internal server error: {str(e)}")


@app.post("/transitions")
async def transitions_endpoint(request: SourceRequest):
    """States and transitions of a description, in the JSON export format."""
    try:
        desc = description_from_text(request.source, request.sorts)
        return json.loads(export_json(Reasoner(desc).transitions()))
    except Exception as e:
        raise _failed("/transitions", e)


@app.post("/conflicts")
async def conflicts_endpoint(request: ConflictsRequest):
    try:
        desc = description_from_text(request.source, request.sorts)
        return json.loads(potential_conflicts(desc, request.max_size).to_json())
    except Exception as e:
        raise _failed("/conflicts", e)


@app.post("/resolve")
async def resolve_endpoint(request: ResolveRequest):
    """Resolution laws for one potential conflict; state and target may be partial."""
    try:
        desc = description_from_text(request.source, request.sorts)
        reasoner = Reasoner(desc)
        state = reasoner.complete_state(Literal.parse(lit) for lit in request.state)
        target = reasoner.complete_state(Literal.parse(lit) for lit in request.target)
        resolution = auto_resolve(desc, request.actions, state, target, reasoner=reasoner)
        return json.loads(resolution.to_json())
    except Exception as e:
        raise _failed("/resolve", e)


if __name__ == "__main__":
    uvicorn.run("bcmas.app.main:app", host="0.0.0.0", port=8000, reload=True)
