"""HTTP API over the study service.

JSON field names are camelCase on the wire; everything else in the package
stays snake_case. The UI is a strict client: every number it shows comes
from these endpoints.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from fastapi import Body, FastAPI, HTTPException, Response
from fastapi.staticfiles import StaticFiles
from PIL import Image
from pydantic import BaseModel

from .colors import BASIC_COLORS, COLOR_CENTROIDS
from .scoring import ScoredRow
from .study import DuplicateTrialError, StudyService

__all__ = ["create_app"]


class CreateUserBody(BaseModel):
    name: str


class CreateStudyBody(BaseModel):
    imageIds: list[str]
    userIds: list[str]
    seed: int | None = None


class TrialBody(BaseModel):
    userId: str
    pair: list[str]
    choice: str


def _row_json(row: ScoredRow) -> dict:
    return {
        "imageId": row.image_id,
        "likes": row.likes,
        "colorHarmony": row.color_harmony,
        "lightness": row.lightness,
        "complexity": row.complexity,
        "chNorm": row.ch_norm,
        "lNorm": row.l_norm,
        "cNorm": row.c_norm,
        "simplicityNorm": row.simplicity_norm,
        "aestheticScore": row.aesthetic_score,
    }


def _png_bytes(arr: np.ndarray) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(arr, "RGB").save(buf, format="PNG")
    return buf.getvalue()


def create_app(
    service: StudyService,
    images: dict[str, np.ndarray],
    frontend_dir: str | Path | None = None,
) -> FastAPI:
    """Wire the service and the image corpus into a FastAPI app.

    `images` maps image id to its standardized 200x200 RGB array. When
    `frontend_dir` points at a built web bundle it is served at the root.
    """
    app = FastAPI(title="roompref", docs_url=None, redoc_url=None)

    @app.post("/api/users", status_code=201)
    def create_user(body: CreateUserBody):
        return {"userId": service.create_user(body.name)}

    @app.get("/api/colors")
    def colors():
        return {
            "colors": [
                {"name": name, "rgb": list(COLOR_CENTROIDS[name])}
                for name in BASIC_COLORS
            ]
        }

    @app.post("/api/users/{user_id}/ratings", status_code=204)
    def submit_ratings(user_id: str, ratings: dict[str, float] = Body()):
        try:
            service.submit_ratings(user_id, ratings)
        except KeyError as exc:
            raise HTTPException(404, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(400, detail=str(exc))
        return Response(status_code=204)

    @app.get("/api/users/{user_id}/ratings")
    def get_ratings(user_id: str):
        if user_id not in service.profiles:
            raise HTTPException(404, detail=f"no ratings for user {user_id}")
        return {"userId": user_id, "ratings": service.profiles[user_id].ratings}

    @app.get("/api/images")
    def list_images():
        return {"images": [_row_json(r) for r in service.table.rows]}

    @app.get("/api/images/{image_id}")
    def image_png(image_id: str):
        if image_id not in images:
            raise HTTPException(404, detail=f"no such image: {image_id}")
        return Response(content=_png_bytes(images[image_id]), media_type="image/png")

    @app.get("/api/images/{image_id}/features")
    def image_features(image_id: str):
        try:
            return _row_json(service.table.row(image_id))
        except KeyError as exc:
            raise HTTPException(404, detail=str(exc))

    @app.post("/api/studies", status_code=201)
    def create_study(body: CreateStudyBody):
        try:
            study = service.create_study(body.imageIds, body.userIds, seed=body.seed)
        except KeyError as exc:
            raise HTTPException(404, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(400, detail=str(exc))
        return {
            "studyId": study.study_id,
            "imageIds": list(study.image_ids),
            "userIds": list(study.user_ids),
            "pairs": [list(p) for p in study.pairs()],
            "trialsPerUser": len(study.pairs()),
            "seed": study.seed,
        }

    @app.get("/api/studies/{study_id}/next")
    def next_trial(study_id: str, user: str):
        try:
            nxt = service.next_pair(study_id, user)
        except KeyError as exc:
            raise HTTPException(404, detail=str(exc))
        if nxt is None:
            return {"done": True}
        return {
            "done": False,
            "pair": list(nxt["pair"]),
            "leftImage": nxt["left"],
            "rightImage": nxt["right"],
        }

    @app.post("/api/studies/{study_id}/trials", status_code=201)
    def record_trial(study_id: str, body: TrialBody):
        if len(body.pair) != 2:
            raise HTTPException(400, detail="pair must hold exactly two image ids")
        try:
            trial = service.record_trial(
                study_id, body.userId, (body.pair[0], body.pair[1]), body.choice
            )
        except DuplicateTrialError as exc:
            raise HTTPException(409, detail=str(exc))
        except KeyError as exc:
            raise HTTPException(404, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(400, detail=str(exc))
        return {"hit": trial.hit, "tie": trial.tie}

    @app.get("/api/studies/{study_id}/report")
    def report(study_id: str):
        try:
            return service.report(study_id)
        except KeyError as exc:
            raise HTTPException(404, detail=str(exc))

    if frontend_dir is not None:
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="ui")

    return app
