"""HTTP API tests, driven through an in-process test client."""

import io

import numpy as np
import pytest
from fastapi.testclient import TestClient
from PIL import Image

from roompref.api import create_app
from roompref.colors import BASIC_COLORS
from roompref.scoring import ScoredRow
from roompref.store import EventLog, FeatureTable
from roompref.study import StudyService

IMAGE_COLORS = {
    "a": (200, 30, 30),
    "b": (40, 80, 200),
    "c": (40, 160, 60),
    "d": (240, 220, 40),
    "e": (128, 128, 128),
}
SUMMARY_COLOR = {"a": "red", "b": "blue", "c": "green", "d": "yellow", "e": "gray"}


def make_row(image_id: str, score: float) -> ScoredRow:
    return ScoredRow(
        image_id=image_id, likes=3, color_harmony=95.0, lightness=5,
        complexity=100, ch_norm=score, l_norm=score, c_norm=1 - score,
        simplicity_norm=score, aesthetic_score=score,
    )


@pytest.fixture()
def client(tmp_path):
    scores = {"a": 0.9, "b": 0.7, "c": 0.5, "d": 0.3, "e": 0.1}
    table = FeatureTable([make_row(i, s) for i, s in scores.items()])
    summaries = {i: [(SUMMARY_COLOR[i], 40000)] for i in scores}
    service = StudyService(table, summaries, EventLog(tmp_path / "events.log"))
    images = {}
    for image_id, rgb in IMAGE_COLORS.items():
        arr = np.zeros((200, 200, 3), dtype=np.uint8)
        arr[:, :] = rgb
        images[image_id] = arr
    app = create_app(service, images)
    return TestClient(app)


def full_ratings(value=5.0, **overrides):
    r = {name: value for name in BASIC_COLORS}
    r.update(overrides)
    return r


def create_rated_user(client, name="Ann", value=5.0):
    user_id = client.post("/api/users", json={"name": name}).json()["userId"]
    resp = client.post(f"/api/users/{user_id}/ratings", json=full_ratings(value))
    assert resp.status_code == 204
    return user_id


# --------------------------------------------------------------------- users

def test_create_user(client):
    resp = client.post("/api/users", json={"name": "Ann"})
    assert resp.status_code == 201
    assert resp.json() == {"userId": "u1"}


def test_colors_catalog(client):
    body = client.get("/api/colors").json()
    assert [c["name"] for c in body["colors"]] == list(BASIC_COLORS)
    assert all(len(c["rgb"]) == 3 for c in body["colors"])


def test_ratings_stored_normalized(client):
    user = create_rated_user(client, value=8.0)
    body = client.get(f"/api/users/{user}/ratings").json()
    assert body["userId"] == user
    assert all(v == 0.8 for v in body["ratings"].values())


def test_extreme_ratings_roundtrip(client):
    user = client.post("/api/users", json={"name": "Max"}).json()["userId"]
    payload = full_ratings(0.0, red=10)
    assert client.post(f"/api/users/{user}/ratings", json=payload).status_code == 204
    ratings = client.get(f"/api/users/{user}/ratings").json()["ratings"]
    assert ratings["red"] == 1.0
    assert all(v == 0.0 for name, v in ratings.items() if name != "red")


def test_partial_ratings_rejected(client):
    user = client.post("/api/users", json={"name": "Ann"}).json()["userId"]
    resp = client.post(f"/api/users/{user}/ratings", json={"red": 5})
    assert resp.status_code == 400


def test_ratings_unknown_user_404(client):
    assert client.post("/api/users/u99/ratings", json=full_ratings()).status_code == 404


def test_ratings_out_of_scale_rejected(client):
    user = client.post("/api/users", json={"name": "Ann"}).json()["userId"]
    assert client.post(f"/api/users/{user}/ratings",
                       json=full_ratings(11)).status_code == 400


# -------------------------------------------------------------------- images

def test_list_images(client):
    body = client.get("/api/images").json()
    assert [i["imageId"] for i in body["images"]] == list("abcde")
    assert body["images"][0]["aestheticScore"] == 0.9


def test_image_png_bytes(client):
    resp = client.get("/api/images/a")
    assert resp.status_code == 200
    assert resp.headers["content-type"] == "image/png"
    img = Image.open(io.BytesIO(resp.content))
    assert img.size == (200, 200)
    assert np.array(img)[0, 0].tolist() == [200, 30, 30]


def test_image_404(client):
    assert client.get("/api/images/zzz").status_code == 404
    assert client.get("/api/images/zzz/features").status_code == 404


def test_image_features(client):
    body = client.get("/api/images/c/features").json()
    assert body == {
        "imageId": "c", "likes": 3, "colorHarmony": 95.0, "lightness": 5,
        "complexity": 100, "chNorm": 0.5, "lNorm": 0.5, "cNorm": 0.5,
        "simplicityNorm": 0.5, "aestheticScore": 0.5,
    }


# ------------------------------------------------------------------- studies

def test_create_study(client):
    user = create_rated_user(client)
    resp = client.post("/api/studies",
                       json={"imageIds": list("abcde"), "userIds": [user], "seed": 4})
    assert resp.status_code == 201
    body = resp.json()
    assert body["studyId"] == "s1"
    assert body["trialsPerUser"] == 10
    assert len(body["pairs"]) == 10


def test_create_study_unrated_user_400(client):
    user = client.post("/api/users", json={"name": "Ann"}).json()["userId"]
    resp = client.post("/api/studies", json={"imageIds": ["a", "b"], "userIds": [user]})
    assert resp.status_code == 400


def test_create_study_unknown_image_404(client):
    user = create_rated_user(client)
    resp = client.post("/api/studies", json={"imageIds": ["a", "zzz"], "userIds": [user]})
    assert resp.status_code == 404


def test_trial_cycle(client):
    user = create_rated_user(client)
    study = client.post("/api/studies",
                        json={"imageIds": ["a", "b"], "userIds": [user], "seed": 4}
                        ).json()["studyId"]
    nxt = client.get(f"/api/studies/{study}/next", params={"user": user}).json()
    assert nxt["done"] is False
    assert sorted([nxt["leftImage"], nxt["rightImage"]]) == nxt["pair"]
    resp = client.post(f"/api/studies/{study}/trials",
                       json={"userId": user, "pair": nxt["pair"],
                             "choice": nxt["leftImage"]})
    assert resp.status_code == 201
    assert set(resp.json()) == {"hit", "tie"}
    assert client.get(f"/api/studies/{study}/next",
                      params={"user": user}).json() == {"done": True}


def test_duplicate_trial_409(client):
    user = create_rated_user(client)
    study = client.post("/api/studies",
                        json={"imageIds": ["a", "b"], "userIds": [user], "seed": 4}
                        ).json()["studyId"]
    body = {"userId": user, "pair": ["a", "b"], "choice": "a"}
    assert client.post(f"/api/studies/{study}/trials", json=body).status_code == 201
    assert client.post(f"/api/studies/{study}/trials", json=body).status_code == 409


def test_bad_choice_400(client):
    user = create_rated_user(client)
    study = client.post("/api/studies",
                        json={"imageIds": ["a", "b"], "userIds": [user], "seed": 4}
                        ).json()["studyId"]
    resp = client.post(f"/api/studies/{study}/trials",
                       json={"userId": user, "pair": ["a", "b"], "choice": "e"})
    assert resp.status_code == 400


def test_report_404(client):
    assert client.get("/api/studies/s9/report").status_code == 404


def test_full_two_user_flow(client):
    u1 = create_rated_user(client, "Ann", 8.0)
    u2 = create_rated_user(client, "Ben", 3.0)
    study = client.post("/api/studies",
                        json={"imageIds": list("abcde"), "userIds": [u1, u2],
                              "seed": 21}).json()["studyId"]
    for user in (u1, u2):
        posted = 0
        while True:
            nxt = client.get(f"/api/studies/{study}/next",
                             params={"user": user}).json()
            if nxt["done"]:
                break
            resp = client.post(f"/api/studies/{study}/trials",
                               json={"userId": user, "pair": nxt["pair"],
                                     "choice": nxt["leftImage"]})
            assert resp.status_code == 201
            posted += 1
        assert posted == 10
    report = client.get(f"/api/studies/{study}/report").json()
    assert report["complete"] is True
    assert report["overall"]["trials"] == 20
    assert report["overall"]["expectedTrials"] == 20
    for user in (u1, u2):
        stats = report["perUser"][user]
        assert stats["trials"] == 10
        assert stats["hitRate"] == stats["hits"] / 10
