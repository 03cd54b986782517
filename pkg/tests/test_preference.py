"""Tests for color-scheme preference and the fuzzy total preference."""

import random
import warnings

import pytest

from roompref.colors import BASIC_COLORS
from roompref.fuzzy import NoRuleFiredWarning
from roompref.preference import (
    PREFERENCE_RULES,
    ColorRatingProfile,
    build_preference_engine,
    color_scheme_preference,
    evaluate,
    total_preference,
)


def profile(default=0.5, **overrides) -> ColorRatingProfile:
    ratings = {name: default for name in BASIC_COLORS}
    ratings.update(overrides)
    return ColorRatingProfile("u1", ratings)


# ------------------------------------------------------------------- profile

def test_profile_requires_all_colors():
    ratings = {name: 0.5 for name in BASIC_COLORS[:-1]}
    with pytest.raises(ValueError, match="missing"):
        ColorRatingProfile("u1", ratings)


def test_profile_rejects_unknown_color():
    ratings = {name: 0.5 for name in BASIC_COLORS}
    ratings["cerulean"] = 0.5
    with pytest.raises(ValueError, match="extra"):
        ColorRatingProfile("u1", ratings)


def test_profile_rejects_out_of_range():
    with pytest.raises(ValueError, match="out of"):
        profile(red=1.5)


# -------------------------------------------------------- color scheme pref

def test_constant_ratings_pass_through():
    summary = [("red", 50), ("blue", 30), ("gray", 20)]
    assert color_scheme_preference(summary, profile(0.8)) == pytest.approx(0.8)


def test_hand_computed_weighted_average():
    summary = [("red", 50), ("blue", 30), ("gray", 10), ("green", 7), ("pink", 3)]
    p = profile(red=1.0, blue=0.8, gray=0.6, green=0.4, pink=0.2)
    # (50 + 24 + 6 + 2.8 + 0.6) / 100
    assert color_scheme_preference(summary, p) == pytest.approx(0.834)


def test_single_dominant_color_returns_its_rating():
    assert color_scheme_preference([("beige", 40000)], profile(beige=0.37)) == pytest.approx(0.37)


def test_empty_summary_rejected():
    with pytest.raises(ValueError):
        color_scheme_preference([], profile())


def test_result_bounded_by_rating_extremes():
    rng = random.Random(77)
    for _ in range(200):
        names = rng.sample(BASIC_COLORS, rng.randint(1, 5))
        summary = [(n, rng.randint(1, 1000)) for n in names]
        p = profile(**{n: rng.random() for n in names})
        used = [p.ratings[n] for n in names]
        got = color_scheme_preference(summary, p)
        assert min(used) - 1e-12 <= got <= max(used) + 1e-12


# ------------------------------------------------------------- total pref

def test_total_preference_neutral_center():
    assert total_preference(0.5, 0.5) == pytest.approx(35.0, abs=0.2)


def test_total_preference_weak_corner():
    assert total_preference(0.0, 0.0) == pytest.approx(10.0, abs=0.2)


def test_total_preference_verystrong_corner():
    assert total_preference(1.0, 1.0) == pytest.approx(88.33, abs=0.2)


def test_total_preference_worked_example_in_band():
    assert 45.0 <= total_preference(0.48, 0.92) <= 75.0


def test_total_preference_validates_inputs():
    with pytest.raises(ValueError):
        total_preference(1.2, 0.5)
    with pytest.raises(ValueError):
        total_preference(0.5, -0.1)


@pytest.mark.parametrize(
    "aesthetic,pref1,pref2",
    [
        (0.68, 0.83, 0.44),
        (0.52, 0.64, 0.37),
        (0.98, 0.71, 0.34),
        (0.74, 0.84, 0.46),
        (0.69, 0.58, 0.53),
    ],
)
def test_higher_color_pref_wins_at_fixed_aesthetic(aesthetic, pref1, pref2):
    assert total_preference(aesthetic, pref1) > total_preference(aesthetic, pref2)


def test_rule_base_covers_input_grid():
    engine = build_preference_engine()
    for i in range(11):
        for j in range(11):
            detail = engine.infer_detail(
                {"aesthetic_score": i * 10.0, "color_preference": j * 10.0}
            )
            assert detail.firing_strengths, f"nothing fired at ({i * 10}, {j * 10})"


def test_every_rule_matters_somewhere():
    full = build_preference_engine()
    grid = [
        {"aesthetic_score": i * 10.0, "color_preference": j * 10.0}
        for i in range(11)
        for j in range(11)
    ]
    baseline = [full.infer(g) for g in grid]
    for drop in range(len(PREFERENCE_RULES)):
        pruned = build_preference_engine(
            PREFERENCE_RULES[:drop] + PREFERENCE_RULES[drop + 1 :]
        )
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NoRuleFiredWarning)
            changed = any(
                abs(pruned.infer(g) - base) > 1e-9 for g, base in zip(grid, baseline)
            )
        assert changed, f"rule {PREFERENCE_RULES[drop]} had no effect"


def test_evaluate_bundles_everything():
    summary = [("gray", 30000), ("white", 10000)]
    p = profile(gray=0.9, white=0.7)
    result = evaluate("img42", 0.8, summary, p)
    assert result.image_id == "img42"
    assert result.user_id == "u1"
    assert result.color_scheme_preference == pytest.approx(0.85)
    assert 0.0 <= result.total_preference <= 100.0
    # high aesthetic, high color pref: lands in the Strong side
    assert result.total_preference > 50.0
