"""Command-line entry points: ingest, score, rate colors, predict, run studies.

A workspace is a features.csv plus, by convention, an images/ directory of
standardized 200x200 PNGs and an events.log, all next to each other. `ingest`
lays this out; the other commands read it.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

import click
import numpy as np
from PIL import Image

from .colors import BASIC_COLORS, dominant_colors
from .imageops import load_and_standardize
from .preference import color_scheme_preference, total_preference
from .scoring import pearson_correlation
from .store import EventLog, FeatureTable
from .store import ingest as ingest_corpus
from .study import StudyService


def _default_near(table: Path, name: str) -> Path:
    return table.parent / name


def _load_workspace(table_path: Path, images_dir: Path | None, log_path: Path | None):
    """Load (service, images) from a workspace rooted at the feature table."""
    images_dir = images_dir or _default_near(table_path, "images")
    log_path = log_path or _default_near(table_path, "events.log")
    table = FeatureTable.load(table_path)
    images: dict[str, np.ndarray] = {}
    for image_id in table.ids():
        png = images_dir / f"{image_id}.png"
        if not png.exists():
            raise click.ClickException(
                f"missing standardized image {png} (re-run ingest)"
            )
        images[image_id] = load_and_standardize(png)
    summaries = {i: dominant_colors(img) for i, img in images.items()}
    service = StudyService(table, summaries, EventLog(log_path))
    return service, images


table_option = click.option(
    "--table", "table_path", type=click.Path(exists=True, path_type=Path),
    default=Path("features.csv"), show_default=True,
    help="Feature table CSV.",
)
images_option = click.option(
    "--images-dir", type=click.Path(path_type=Path), default=None,
    help="Directory of standardized PNGs [default: images/ next to the table].",
)
log_option = click.option(
    "--log", "log_path", type=click.Path(path_type=Path), default=None,
    help="Event log file [default: events.log next to the table].",
)


@click.group()
def main():
    """Aesthetic preference scoring for interior design images."""
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")


@main.command()
@click.argument("directory", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--likes", "likes_file", type=click.Path(exists=True, path_type=Path),
              default=None, help="Optional image_id,likes CSV.")
@click.option("--out", "out_path", type=click.Path(path_type=Path),
              default=Path("features.csv"), show_default=True,
              help="Where to write the feature table.")
def ingest(directory: Path, likes_file: Path | None, out_path: Path):
    """Standardize, featurize, and score every image in DIRECTORY."""
    try:
        table = ingest_corpus(directory, likes_file)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    out_path.parent.mkdir(parents=True, exist_ok=True)
    table.save(out_path)
    images_dir = _default_near(out_path, "images")
    images_dir.mkdir(exist_ok=True)
    for name in sorted(p.name for p in directory.iterdir() if p.is_file()):
        image_id = Path(name).stem
        if image_id not in table.ids():
            continue
        arr = load_and_standardize(directory / name)
        Image.fromarray(arr, "RGB").save(images_dir / f"{image_id}.png")
    click.echo(f"ingested {len(table)} images -> {out_path}")
    click.echo(f"standardized copies -> {images_dir}/")


@main.command()
@table_option
def score(table_path: Path):
    """Print the scored table and the likes/score correlation."""
    table = FeatureTable.load(table_path)
    click.echo(f"{'image':<12}{'likes':>7}{'CH':>9}{'L':>4}{'C':>6}{'score':>8}")
    for r in table.rows:
        click.echo(f"{r.image_id:<12}{r.likes:>7}{r.color_harmony:>9.2f}"
                   f"{r.lightness:>4}{r.complexity:>6}{r.aesthetic_score:>8.3f}")
    likes = [float(r.likes) for r in table.rows]
    scores = [r.aesthetic_score for r in table.rows]
    try:
        r = pearson_correlation(likes, scores)
        click.echo(f"likes vs score correlation: {r:+.3f}")
    except ValueError as exc:
        click.echo(f"likes vs score correlation: undefined ({exc})")


@main.command("rate-colors")
@click.option("--user", "user_id", default=None,
              help="Existing user id; omit to create a new user.")
@click.option("--name", default=None, help="Display name when creating a user.")
@table_option
@images_option
@log_option
def rate_colors(user_id, name, table_path, images_dir, log_path):
    """Collect the 12 color ratings (0-10) at the terminal."""
    service, _ = _load_workspace(table_path, images_dir, log_path)
    if user_id is None:
        user_id = service.create_user(name or "terminal user")
        click.echo(f"created user {user_id}")
    elif user_id not in service.users:
        raise click.ClickException(f"no such user: {user_id} (omit --user to create one)")
    ratings = {}
    for color in BASIC_COLORS:
        ratings[color] = click.prompt(
            f"  {color}", type=click.FloatRange(0, 10), default=5.0
        )
    service.submit_ratings(user_id, ratings)
    click.echo(f"stored ratings for {user_id}")


@main.command()
@click.option("--user", "user_id", required=True)
@click.option("--image", "image_id", required=True)
@table_option
@images_option
@log_option
def predict(user_id, image_id, table_path, images_dir, log_path):
    """Print the preference breakdown for one user and image."""
    service, _ = _load_workspace(table_path, images_dir, log_path)
    if user_id not in service.profiles:
        raise click.ClickException(f"user {user_id} has no color ratings yet")
    try:
        row = service.table.row(image_id)
    except KeyError as exc:
        raise click.ClickException(str(exc))
    color_pref = color_scheme_preference(service.summaries[image_id],
                                         service.profiles[user_id])
    total = total_preference(row.aesthetic_score, color_pref)
    click.echo(f"image {image_id} for {user_id}:")
    click.echo(f"  aesthetic score    {row.aesthetic_score:.3f}")
    click.echo(f"  color preference   {color_pref:.3f}")
    click.echo(f"  total preference   {total:.2f} / 100")


@main.group()
def study():
    """Run and inspect 2AFC studies."""


@study.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@table_option
@images_option
@log_option
@click.option("--frontend", "frontend_dir",
              type=click.Path(exists=True, file_okay=False, path_type=Path),
              default=None, help="Built web UI to serve at /.")
def serve(port, host, table_path, images_dir, log_path, frontend_dir):
    """Serve the study HTTP API (and optionally the web UI)."""
    import uvicorn

    from .api import create_app

    service, images = _load_workspace(table_path, images_dir, log_path)
    app = create_app(service, images, frontend_dir)
    click.echo(f"serving {len(images)} images on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


@study.command()
@click.option("--id", "study_id", required=True)
@table_option
@images_option
@log_option
def report(study_id, table_path, images_dir, log_path):
    """Print a study report as JSON."""
    service, _ = _load_workspace(table_path, images_dir, log_path)
    try:
        click.echo(json.dumps(service.report(study_id), indent=2))
    except KeyError as exc:
        raise click.ClickException(str(exc))


if __name__ == "__main__":
    main()
