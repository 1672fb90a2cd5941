from prometheus_fastapi_instrumentator import Instrumentator
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, RedirectResponse

from app.exceptions import LabError
from app.routers import lab


description = """
# Gibbs Scan Lab API

### Overview
Exact, read-only computations on small Gibbs sampler models: every number is
obtained by evolving full distributions, never by sampling.

### Core Functionalities
- **Model Info**: Size, parameters, pi_min and holding probability of a model.
- **Mixing Time**: Worst-case mixing time of random or systematic scan.
- **Bridge Efficiency**: Probability that a two-islands chain crosses at the bridge.
- **Sweep Success**: Probability that one identity sweep traverses the sequence of dependencies.

### Errors
Invalid parameters return HTTP 400 with a `detail` object holding `loc`, `msg` and `type`.
Models above 256 states and step caps above 10000 are refused; use the `gibbs-scan-lab` command line for them.
"""

app = FastAPI(
    title="Gibbs Scan Lab API",
    description=description,
    version="0.1",
)
app.include_router(lab.router)

Instrumentator().instrument(app).expose(app)


@app.exception_handler(LabError)
async def lab_error_handler(request: Request, exc: LabError):
    """
    Returns lab errors as HTTP 400 with their detail dict.
    """
    return JSONResponse(status_code=exc.status_code, content={"detail": exc.detail})


@app.get("/", include_in_schema=False)
async def redirect_to_docs():
    """
    Redirects the root URL to the API documentation.
    """
    return RedirectResponse(url="/docs")
