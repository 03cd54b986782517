"""Per-user color preference and the fuzzy total-preference score.

The membership functions and rule base below are the package's calibration;
they put a Neutral plateau in the middle of both inputs and reserve
VeryStrong for images that score high on both axes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .colors import BASIC_COLORS
from .fuzzy import FuzzyRule, LinguisticVariable, MamdaniEngine, TriangularMF

__all__ = [
    "ColorRatingProfile",
    "PreferenceResult",
    "color_scheme_preference",
    "total_preference",
    "build_preference_engine",
    "PREFERENCE_RULES",
]

# (aesthetic term, color-preference term) -> total-preference term
PREFERENCE_RULES = (
    (("Low", "Low"), "Weak"),
    (("Low", "Medium"), "Weak"),
    (("Low", "High"), "Neutral"),
    (("Medium", "Low"), "Neutral"),
    (("Medium", "Medium"), "Neutral"),
    (("High", "Low"), "Neutral"),
    (("Medium", "High"), "Strong"),
    (("High", "Medium"), "Strong"),
    (("High", "High"), "VeryStrong"),
)


@dataclass(frozen=True)
class ColorRatingProfile:
    """One user's rating in [0,1] for each of the 12 basic colors."""

    user_id: str
    ratings: dict[str, float]

    def __post_init__(self) -> None:
        missing = set(BASIC_COLORS) - set(self.ratings)
        extra = set(self.ratings) - set(BASIC_COLORS)
        if missing or extra:
            raise ValueError(f"ratings must cover exactly the 12 basic colors "
                             f"(missing {sorted(missing)}, extra {sorted(extra)})")
        for name, value in self.ratings.items():
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"rating for {name} out of [0,1]: {value}")


@dataclass(frozen=True)
class PreferenceResult:
    image_id: str
    user_id: str
    aesthetic_score: float        # [0,1]
    color_scheme_preference: float  # [0,1]
    total_preference: float       # [0,100]


def color_scheme_preference(
    summary: list[tuple[str, int]], profile: ColorRatingProfile
) -> float:
    """Pixel-count-weighted average of the user's ratings for the dominant colors."""
    if not summary:
        raise ValueError("dominant-color summary is empty")
    total = sum(count for _, count in summary)
    if total <= 0:
        raise ValueError("dominant-color counts must be positive")
    weighted = sum(profile.ratings[name] * count for name, count in summary)
    return weighted / total


def _three_level_variable(name: str) -> LinguisticVariable:
    return LinguisticVariable(
        name,
        (0.0, 100.0),
        (
            ("Low", TriangularMF(0, 0, 50)),
            ("Medium", TriangularMF(20, 50, 80)),
            ("High", TriangularMF(50, 100, 100)),
        ),
    )


def build_preference_engine(rules=PREFERENCE_RULES) -> MamdaniEngine:
    aesthetic = _three_level_variable("aesthetic_score")
    color = _three_level_variable("color_preference")
    total = LinguisticVariable(
        "total_preference",
        (0.0, 100.0),
        (
            ("Weak", TriangularMF(0, 0, 30)),
            ("Neutral", TriangularMF(10, 35, 60)),
            ("Strong", TriangularMF(35, 60, 85)),
            ("VeryStrong", TriangularMF(65, 100, 100)),
        ),
    )
    fuzzy_rules = [
        FuzzyRule.of({"aesthetic_score": a, "color_preference": c}, out)
        for (a, c), out in rules
    ]
    return MamdaniEngine([aesthetic, color], total, fuzzy_rules, step=0.1)


_ENGINE = build_preference_engine()


def total_preference(aesthetic_score: float, color_pref: float) -> float:
    """Fuzzy total preference in [0,100] from two [0,1] inputs."""
    if not 0.0 <= aesthetic_score <= 1.0:
        raise ValueError(f"aesthetic score out of [0,1]: {aesthetic_score}")
    if not 0.0 <= color_pref <= 1.0:
        raise ValueError(f"color preference out of [0,1]: {color_pref}")
    return _ENGINE.infer(
        {"aesthetic_score": aesthetic_score * 100.0, "color_preference": color_pref * 100.0}
    )


def evaluate(
    image_id: str,
    aesthetic_score: float,
    summary: list[tuple[str, int]],
    profile: ColorRatingProfile,
) -> PreferenceResult:
    """Bundle the per-user preference numbers for one image."""
    color_pref = color_scheme_preference(summary, profile)
    return PreferenceResult(
        image_id=image_id,
        user_id=profile.user_id,
        aesthetic_score=aesthetic_score,
        color_scheme_preference=color_pref,
        total_preference=total_preference(aesthetic_score, color_pref),
    )
