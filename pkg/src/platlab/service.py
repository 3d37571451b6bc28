"""HTTP service exposing analysis to scripts and the editor UI."""

from __future__ import annotations

import io
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .config import (
    difficulty_from,
    load_defaults,
    metric_from,
    noise_from,
    sampling_from,
)
from .model import (
    LevelFormatError,
    MovementConfig,
    level_from_dict,
    level_to_dict,
    validate_level,
)
from .model import CharacterConfig, Level
from .paths import PathMetric
from .probability import NoiseKind
from .report import analyze_level
from .validation import TrialFormatError, load_trials, mae_grid


def _merged_params(defaults: dict, overrides: dict) -> dict:
    merged = {k: dict(v) if isinstance(v, dict) else v
              for k, v in defaults.items()}
    for key in ("noise", "sampling", "difficulty"):
        if key in overrides and isinstance(overrides[key], dict):
            merged[key].update(overrides[key])
    for key in ("metric", "trajectory_points"):
        if key in overrides:
            merged[key] = overrides[key]
    return merged


def _bad_request(exc: Exception) -> JSONResponse:
    detail = {"error": str(exc)}
    if isinstance(exc, LevelFormatError) and exc.path:
        detail["path"] = exc.path
    return JSONResponse(detail, status_code=400)


def build_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="platlab", version="0.1.0")

    async def _analysis(request: Request):
        """Shared analyze pipeline; returns a report or an error response."""
        try:
            body = await request.json()
        except Exception:
            return _bad_request(ValueError("request body is not valid JSON"))
        if not isinstance(body, dict):
            return _bad_request(ValueError("request body must be an object"))
        level_doc = body.get("level", body if "platforms" in body else None)
        if level_doc is None:
            return _bad_request(ValueError("missing 'level' field"))
        try:
            level = level_from_dict(level_doc)
            params = _merged_params(load_defaults(), body)
            noise = noise_from(params["noise"])
            sampling = sampling_from(params["sampling"])
            difficulty = difficulty_from(params["difficulty"])
            metric = metric_from(params)
            points = int(params["trajectory_points"])
        except (LevelFormatError, ValueError, KeyError, TypeError) as exc:
            return _bad_request(exc)
        diagnostics = validate_level(level)
        if diagnostics:
            return JSONResponse(
                {"diagnostics": [d.to_dict() for d in diagnostics]},
                status_code=422)
        return analyze_level(level, noise, sampling, difficulty, metric, points)

    @app.post("/api/analyze")
    async def api_analyze(request: Request):
        result = await _analysis(request)
        if isinstance(result, JSONResponse):
            return result
        return JSONResponse(result.to_dict())

    @app.post("/api/paths")
    async def api_paths(request: Request):
        result = await _analysis(request)
        if isinstance(result, JSONResponse):
            return result
        return JSONResponse(result.to_dict()["paths"])

    @app.post("/api/validate")
    async def api_validate(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _bad_request(ValueError("request body is not valid JSON"))
        try:
            screens = {sid: level_from_dict(doc)
                       for sid, doc in body["screens"].items()}
            raw_trials = body["trials"]
            if isinstance(raw_trials, str):
                trials = load_trials(io.StringIO(raw_trials), screens)
            else:
                import json as _json

                trials = load_trials(io.StringIO(_json.dumps(raw_trials)),
                                     screens)
            params = _merged_params(load_defaults(), body)
            sampling = sampling_from(params["sampling"])
            difficulty = difficulty_from(params["difficulty"])
            kinds = [NoiseKind(k) for k in body.get(
                "noise_kinds", [k.value for k in NoiseKind])]
            rts = [float(v) for v in body.get(
                "rt_values", [params["noise"]["reaction_time"]])]
            pss = [float(v) for v in body.get(
                "ps_values", [params["noise"]["player_skill"]])]
        except (LevelFormatError, TrialFormatError, ValueError, KeyError,
                TypeError) as exc:
            return _bad_request(exc)
        if not trials:
            return _bad_request(ValueError("trial log contains no trials"))
        for sid, level in screens.items():
            diagnostics = validate_level(level)
            if diagnostics:
                return JSONResponse(
                    {"screen": sid,
                     "diagnostics": [d.to_dict() for d in diagnostics]},
                    status_code=422)
        grid = mae_grid(screens, trials, kinds, rts, pss, sampling, difficulty)
        return JSONResponse(grid.to_dict())

    @app.get("/api/defaults")
    async def api_defaults():
        defaults = load_defaults()
        movement = MovementConfig()
        character = CharacterConfig()
        level = Level(platforms=(), movement=movement, character=character)
        doc = level_to_dict(level)
        defaults["movement"] = doc["movement"]
        defaults["character"] = doc["character"]
        return JSONResponse(defaults)

    @app.get("/healthz")
    async def healthz():
        return PlainTextResponse("ok")

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="static")
    return app
