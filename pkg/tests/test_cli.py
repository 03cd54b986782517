"""CLI smoke tests via click's runner (no network, no real server)."""

import numpy as np
import pytest
from click.testing import CliRunner
from PIL import Image

from roompref.cli import main
from roompref.colors import BASIC_COLORS
from roompref.store import EventLog, FeatureTable
from roompref.study import StudyService
from roompref.colors import dominant_colors
from roompref.imageops import load_and_standardize


@pytest.fixture()
def workspace(tmp_path):
    """Source images plus an ingested features.csv workspace."""
    src = tmp_path / "photos"
    src.mkdir()
    palette = {
        "crimson": (200, 30, 30),
        "sky": (40, 80, 200),
        "sand": (225, 205, 170),
    }
    for name, rgb in palette.items():
        arr = np.zeros((240, 320, 3), dtype=np.uint8)
        arr[:, :] = rgb
        arr[100:140, 140:180] = (255, 255, 255)  # one object for contours
        Image.fromarray(arr, "RGB").save(src / f"{name}.png")
    likes = tmp_path / "likes.csv"
    likes.write_text("image_id,likes\ncrimson,120\nsky,45\nsand,300\n")
    out = tmp_path / "ws" / "features.csv"
    runner = CliRunner()
    result = runner.invoke(
        main, ["ingest", str(src), "--likes", str(likes), "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    return tmp_path, out


def test_ingest_lays_out_workspace(workspace):
    tmp_path, out = workspace
    assert out.exists()
    table = FeatureTable.load(out)
    assert sorted(table.ids()) == ["crimson", "sand", "sky"]
    assert table.row("crimson").likes == 120
    for image_id in table.ids():
        png = out.parent / "images" / f"{image_id}.png"
        assert png.exists()
        assert load_and_standardize(png).shape == (200, 200, 3)


def test_score_prints_rows_and_correlation(workspace):
    _, out = workspace
    result = CliRunner().invoke(main, ["score", "--table", str(out)])
    assert result.exit_code == 0, result.output
    assert "crimson" in result.output
    assert "correlation" in result.output


def test_rate_colors_creates_user_and_stores(workspace):
    _, out = workspace
    answers = "\n".join(["7"] * len(BASIC_COLORS)) + "\n"
    result = CliRunner().invoke(
        main, ["rate-colors", "--name", "Terminal Tess", "--table", str(out)],
        input=answers,
    )
    assert result.exit_code == 0, result.output
    assert "created user u1" in result.output
    log = EventLog(out.parent / "events.log")
    kinds = [e.kind for e in log.read_all()]
    assert kinds == ["user-created", "color-rating-submitted"]


def test_rate_colors_unknown_user_fails(workspace):
    _, out = workspace
    result = CliRunner().invoke(
        main, ["rate-colors", "--user", "u42", "--table", str(out)]
    )
    assert result.exit_code != 0
    assert "no such user" in result.output


def test_predict_prints_breakdown(workspace):
    _, out = workspace
    answers = "\n".join(["6"] * len(BASIC_COLORS)) + "\n"
    CliRunner().invoke(main, ["rate-colors", "--name", "Ann", "--table", str(out)],
                       input=answers)
    result = CliRunner().invoke(
        main, ["predict", "--user", "u1", "--image", "crimson", "--table", str(out)]
    )
    assert result.exit_code == 0, result.output
    assert "aesthetic score" in result.output
    assert "total preference" in result.output


def test_predict_requires_ratings(workspace):
    _, out = workspace
    result = CliRunner().invoke(
        main, ["predict", "--user", "u9", "--image", "crimson", "--table", str(out)]
    )
    assert result.exit_code != 0
    assert "no color ratings" in result.output


def test_study_report_command(workspace):
    _, out = workspace
    # Drive a study through the service against the same workspace files.
    table = FeatureTable.load(out)
    images = {i: load_and_standardize(out.parent / "images" / f"{i}.png")
              for i in table.ids()}
    summaries = {i: dominant_colors(img) for i, img in images.items()}
    service = StudyService(table, summaries, EventLog(out.parent / "events.log"))
    user = service.create_user("Ann")
    service.submit_ratings(user, {c: 5 for c in BASIC_COLORS})
    study = service.create_study(sorted(table.ids()), [user], seed=3)
    for pair in study.pairs():
        service.record_trial(study.study_id, user, pair, pair[1])

    result = CliRunner().invoke(
        main, ["study", "report", "--id", study.study_id, "--table", str(out)]
    )
    assert result.exit_code == 0, result.output
    assert '"complete": true' in result.output
    assert '"hitRate"' in result.output


def test_missing_workspace_image_is_actionable(workspace, tmp_path):
    _, out = workspace
    (out.parent / "images" / "crimson.png").unlink()
    result = CliRunner().invoke(main, ["score", "--table", str(out)])
    assert result.exit_code == 0  # score needs only the table
    result = CliRunner().invoke(
        main, ["predict", "--user", "u1", "--image", "sky", "--table", str(out)]
    )
    assert result.exit_code != 0
    assert "re-run ingest" in result.output


def test_help_screens():
    runner = CliRunner()
    for args in ([], ["ingest"], ["score"], ["rate-colors"], ["predict"],
                 ["study"], ["study", "serve"], ["study", "report"]):
        result = runner.invoke(main, args + ["--help"])
        assert result.exit_code == 0
