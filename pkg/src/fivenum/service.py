"""JSON estimate endpoint and static calculator UI.

The service is stateless and unauthenticated, intended to run
loopback-bound as the backend of the bundled browser calculator.  Every
response is a pure function of the request; validation failures return
the same machine-readable codes as the CSV pipeline.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import FileResponse, JSONResponse, PlainTextResponse

from .errors import ValidationError
from .estimators import FiveNumberSummary, estimate
from .studies import StudyRow, row_to_summary
from .weights import generate_table, table_to_csv

_WEBUI_DIR = Path(__file__).parent / "webui"

_FALLBACK_PAGE = """<!doctype html>
<html><head><title>fivenum</title></head>
<body><h1>fivenum service</h1>
<p>The calculator UI bundle is not installed. POST JSON to
<code>/api/estimate</code> instead, e.g.
<code>{"n": 5, "min": 0, "q1": 1, "median": 2, "q3": 3, "max": 4}</code>.</p>
</body></html>"""


def _coerce_field(payload: dict, name: str, out_errors: list):
    value = payload.get(name)
    if value is None or value == "":
        return None
    try:
        value = float(value)
    except (TypeError, ValueError):
        out_errors.append(ValidationError(
            "NOT_A_NUMBER", f"{name}={value!r} is not a number",
            field=name).to_dict())
        return None
    return value


def result_payload(summary: FiveNumberSummary) -> dict:
    res = estimate(summary)
    return {
        "scenario": res.scenario.value,
        "mean": res.mean,
        "sd": res.sd,
        "mean_method": res.mean_method.label,
        "sd_method": res.sd_method.label,
        "weights": [{"label": k, "value": v} for k, v in res.weights_used],
        "warnings": res.warnings,
    }


def create_app() -> FastAPI:
    app = FastAPI(title="fivenum", docs_url=None, redoc_url=None)

    @app.post("/api/estimate")
    async def api_estimate(request: Request):
        try:
            payload = await request.json()
        except Exception:
            return JSONResponse(
                {"error": {"code": "NOT_A_NUMBER",
                           "message": "request body is not valid JSON"}},
                status_code=400)
        if not isinstance(payload, dict):
            return JSONResponse(
                {"error": {"code": "INSUFFICIENT_SUMMARY",
                           "message": "expected a JSON object"}},
                status_code=422)
        parse_errors: list[dict] = []
        n_raw = payload.get("n")
        n = None
        if n_raw is not None and n_raw != "":
            try:
                n = int(n_raw)
                if n != float(n_raw):
                    raise ValueError
            except (TypeError, ValueError):
                parse_errors.append(ValidationError(
                    "N_INVALID", f"n={n_raw!r} is not an integer",
                    field="n").to_dict())
        fields = {name: _coerce_field(payload, name, parse_errors)
                  for name in ("min", "q1", "median", "q3", "max")}
        if parse_errors:
            return JSONResponse({"error": parse_errors[0]}, status_code=422)
        row = StudyRow(study_id=str(payload.get("study_id", "")), n=n,
                       **fields)
        try:
            summary = row_to_summary(row)
            return JSONResponse(result_payload(summary))
        except ValidationError as exc:
            return JSONResponse({"error": exc.to_dict()}, status_code=422)

    @app.get("/api/table.csv")
    async def api_table(qmax: int = 100):
        qmax = max(1, min(qmax, 1000))
        return PlainTextResponse(table_to_csv(generate_table(qmax)),
                                 media_type="text/csv")

    @app.get("/api/health")
    async def api_health():
        return {"status": "ok"}

    @app.get("/")
    async def index():
        page = _WEBUI_DIR / "index.html"
        if page.is_file():
            return FileResponse(page)
        return PlainTextResponse(_FALLBACK_PAGE, media_type="text/html")

    @app.get("/assets/{name}")
    async def assets(name: str):
        target = (_WEBUI_DIR / name).resolve()
        if target.parent != _WEBUI_DIR.resolve() or not target.is_file():
            return JSONResponse({"error": {"code": "NOT_FOUND",
                                           "message": "no such asset"}},
                                status_code=404)
        media = {
            ".js": "text/javascript",
            ".css": "text/css",
            ".html": "text/html",
            ".map": "application/json",
        }.get(target.suffix, "application/octet-stream")
        return FileResponse(target, media_type=media)

    return app


def serve(host: str = "127.0.0.1", port: int = 8000) -> None:
    """Run the service (blocking)."""
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port, log_level="info")
