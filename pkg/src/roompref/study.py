"""Two-alternative forced-choice studies: pairs, predictions, trials, reports.

A study freezes its predictions at creation time, so recalibrating features
or ratings mid-study cannot contaminate the hit rate. All mutating paths
write through the event log; service state is rebuildable by replay.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .colors import BASIC_COLORS
from .preference import ColorRatingProfile, color_scheme_preference, total_preference
from .store import EventLog, FeatureTable, replay

__all__ = [
    "Study",
    "Trial",
    "DuplicateTrialError",
    "generate_pairs",
    "predict_choice",
    "hit_rate",
    "StudyService",
]


class DuplicateTrialError(ValueError):
    """The (study, user, pair) trial was already recorded."""


@dataclass(frozen=True)
class Study:
    study_id: str
    image_ids: tuple[str, ...]
    user_ids: tuple[str, ...]
    seed: int
    # (user_id, image_a, image_b) -> (predicted winner, tie flag); frozen.
    predictions: dict[tuple[str, str, str], tuple[str, bool]]

    def __post_init__(self) -> None:
        if len(self.image_ids) < 2:
            raise ValueError("a study needs at least 2 images")
        if len(set(self.image_ids)) != len(self.image_ids):
            raise ValueError("study images must be distinct")
        if not self.user_ids:
            raise ValueError("a study needs at least 1 participant")

    def pairs(self) -> list[tuple[str, str]]:
        """All unordered image pairs (a < b), lexicographic."""
        return generate_pairs_of(self.image_ids)


@dataclass(frozen=True)
class Trial:
    study_id: str
    user_id: str
    image_a: str  # a < b always
    image_b: str
    predicted_winner: str
    human_choice: str
    hit: bool
    tie: bool

    def __post_init__(self) -> None:
        if self.image_a >= self.image_b:
            raise ValueError("pair must be stored with image_a < image_b")
        for img in (self.predicted_winner, self.human_choice):
            if img not in (self.image_a, self.image_b):
                raise ValueError(f"{img!r} is not in the pair")
        if self.hit != (self.predicted_winner == self.human_choice):
            raise ValueError("hit flag inconsistent with prediction/choice")


def generate_pairs(n: int) -> list[tuple[int, int]]:
    """All unordered index pairs for n items, lexicographic; n(n-1)/2 of them."""
    if n < 2:
        raise ValueError(f"need at least 2 items, got {n}")
    return list(itertools.combinations(range(n), 2))


def generate_pairs_of(image_ids) -> list[tuple[str, str]]:
    """Unordered id pairs, each (a, b) with a < b, list in lexicographic order."""
    ordered = sorted(image_ids)
    return [(ordered[i], ordered[j]) for i, j in generate_pairs(len(ordered))]


def predict_choice(
    pair: tuple[str, str],
    table: FeatureTable,
    summaries: dict[str, list[tuple[str, int]]],
    profile: ColorRatingProfile,
) -> tuple[str, bool]:
    """Predicted winner of a pair for one user, plus a tie flag.

    The winner is the image with the higher total preference; an exact tie
    goes to the lower image id and is flagged.
    """
    a, b = sorted(pair)
    totals = {}
    for image_id in (a, b):
        row = table.row(image_id)  # KeyError for unknown image
        totals[image_id] = total_preference(
            row.aesthetic_score,
            color_scheme_preference(summaries[image_id], profile),
        )
    if totals[a] == totals[b]:
        return a, True
    return (a, False) if totals[a] > totals[b] else (b, False)


def hit_rate(trials: list[Trial]) -> float:
    if not trials:
        raise ValueError("hit rate needs at least one trial")
    return sum(t.hit for t in trials) / len(trials)


class StudyService:
    """Users, rating profiles, studies, and trials over one image corpus."""

    def __init__(
        self,
        table: FeatureTable,
        summaries: dict[str, list[tuple[str, int]]],
        log: EventLog,
    ) -> None:
        missing = set(table.ids()) - set(summaries)
        if missing:
            raise ValueError(f"no dominant-color summary for: {sorted(missing)}")
        self.table = table
        self.summaries = summaries
        self.log = log
        self.users: dict[str, str] = {}                 # id -> display name
        self.profiles: dict[str, ColorRatingProfile] = {}
        self.studies: dict[str, Study] = {}
        self.trials: list[Trial] = []
        self._trial_keys: set[tuple[str, str, str, str]] = set()
        self._restore()

    def _restore(self) -> None:
        state = replay(self.log.read_all())
        for user_id, info in state.users.items():
            self.users[user_id] = info.get("name", user_id)
        for user_id, ratings in state.profiles.items():
            self.profiles[user_id] = ColorRatingProfile(user_id, ratings)
        for study_id, cfg in state.studies.items():
            predictions = {
                (p["user_id"], p["image_a"], p["image_b"]): (p["winner"], p["tie"])
                for p in cfg["predictions"]
            }
            self.studies[study_id] = Study(
                study_id=study_id,
                image_ids=tuple(cfg["image_ids"]),
                user_ids=tuple(cfg["user_ids"]),
                seed=cfg["seed"],
                predictions=predictions,
            )
        for t in state.trials:
            trial = Trial(
                study_id=t["study_id"], user_id=t["user_id"],
                image_a=t["image_a"], image_b=t["image_b"],
                predicted_winner=t["predicted"], human_choice=t["chosen"],
                hit=t["hit"], tie=t["tie"],
            )
            self.trials.append(trial)
            self._trial_keys.add(self._key(trial.study_id, trial.user_id,
                                           trial.image_a, trial.image_b))

    @staticmethod
    def _key(study_id: str, user_id: str, a: str, b: str):
        return (study_id, user_id, a, b)

    # ------------------------------------------------------------- users

    def create_user(self, name: str) -> str:
        user_id = f"u{len(self.users) + 1}"
        self.users[user_id] = name
        self.log.append("user-created", {"user_id": user_id, "name": name})
        return user_id

    def submit_ratings(self, user_id: str, ratings_0_10: dict[str, float]) -> ColorRatingProfile:
        """Store a full 12-color rating map given on the 0-10 UI scale."""
        if user_id not in self.users:
            raise KeyError(f"no such user: {user_id}")
        missing = set(BASIC_COLORS) - set(ratings_0_10)
        extra = set(ratings_0_10) - set(BASIC_COLORS)
        if missing or extra:
            raise ValueError(f"ratings must cover exactly the 12 basic colors "
                             f"(missing {sorted(missing)}, extra {sorted(extra)})")
        for name, value in ratings_0_10.items():
            if not isinstance(value, (int, float)) or not 0 <= value <= 10:
                raise ValueError(f"rating for {name} must be in 0..10, got {value!r}")
        normalized = {name: value / 10.0 for name, value in ratings_0_10.items()}
        profile = ColorRatingProfile(user_id, normalized)
        self.profiles[user_id] = profile
        self.log.append("color-rating-submitted",
                        {"user_id": user_id, "ratings": normalized})
        return profile

    # ----------------------------------------------------------- studies

    def create_study(
        self, image_ids: list[str], user_ids: list[str], seed: int | None = None
    ) -> Study:
        for image_id in image_ids:
            self.table.row(image_id)  # KeyError for unknown image
        for user_id in user_ids:
            if user_id not in self.users:
                raise KeyError(f"no such user: {user_id}")
            if user_id not in self.profiles:
                raise ValueError(f"user {user_id} has not rated colors yet")
        study_id = f"s{len(self.studies) + 1}"
        if seed is None:
            seed = random.SystemRandom().randrange(2**31)
        predictions = {}
        for user_id in user_ids:
            profile = self.profiles[user_id]
            for a, b in generate_pairs_of(image_ids):
                winner, tie = predict_choice((a, b), self.table,
                                             self.summaries, profile)
                predictions[(user_id, a, b)] = (winner, tie)
        study = Study(study_id, tuple(image_ids), tuple(user_ids), seed, predictions)
        self.studies[study_id] = study
        self.log.append("study-created", {
            "study_id": study_id,
            "image_ids": list(study.image_ids),
            "user_ids": list(study.user_ids),
            "seed": seed,
            "predictions": [
                {"user_id": u, "image_a": a, "image_b": b, "winner": w, "tie": t}
                for (u, a, b), (w, t) in predictions.items()
            ],
        })
        return study

    def next_pair(self, study_id: str, user_id: str) -> dict | None:
        """The user's next unanswered pair with randomized sides, or None."""
        study = self._study(study_id)
        if user_id not in study.user_ids:
            raise KeyError(f"user {user_id} is not in study {study_id}")
        for a, b in study.pairs():
            if self._key(study_id, user_id, a, b) not in self._trial_keys:
                # Seeded per (study seed, user, pair): reproducible sessions,
                # position bias spread across trials.
                rng = random.Random(f"{study.seed}:{user_id}:{a}:{b}")
                left, right = (a, b) if rng.random() < 0.5 else (b, a)
                return {"pair": (a, b), "left": left, "right": right}
        return None

    def record_trial(
        self, study_id: str, user_id: str, pair: tuple[str, str], choice: str
    ) -> Trial:
        study = self._study(study_id)
        if user_id not in study.user_ids:
            raise KeyError(f"user {user_id} is not in study {study_id}")
        a, b = sorted(pair)
        if (a, b) not in study.pairs():
            raise ValueError(f"({a}, {b}) is not a pair of study {study_id}")
        if choice not in (a, b):
            raise ValueError(f"choice {choice!r} is not in the pair ({a}, {b})")
        key = self._key(study_id, user_id, a, b)
        if key in self._trial_keys:
            raise DuplicateTrialError(
                f"trial already recorded for {user_id} on ({a}, {b})"
            )
        predicted, tie = study.predictions[(user_id, a, b)]
        trial = Trial(
            study_id=study_id, user_id=user_id, image_a=a, image_b=b,
            predicted_winner=predicted, human_choice=choice,
            hit=(predicted == choice), tie=tie,
        )
        self._trial_keys.add(key)
        self.trials.append(trial)
        self.log.append("trial-recorded", {
            "study_id": study_id, "user_id": user_id,
            "image_a": a, "image_b": b,
            "predicted": predicted, "chosen": choice,
            "hit": trial.hit, "tie": tie,
        })
        return trial

    def report(self, study_id: str) -> dict:
        """Per-user and pooled hit rates; rates are None until trials exist."""
        study = self._study(study_id)
        study_trials = [t for t in self.trials if t.study_id == study_id]
        pairs_per_user = len(study.pairs())
        per_user = {}
        for user_id in study.user_ids:
            mine = [t for t in study_trials if t.user_id == user_id]
            per_user[user_id] = {
                "hits": sum(t.hit for t in mine),
                "trials": len(mine),
                "expectedTrials": pairs_per_user,
                "hitRate": hit_rate(mine) if mine else None,
            }
        return {
            "studyId": study_id,
            "perUser": per_user,
            "overall": {
                "hits": sum(t.hit for t in study_trials),
                "trials": len(study_trials),
                "expectedTrials": pairs_per_user * len(study.user_ids),
                "hitRate": hit_rate(study_trials) if study_trials else None,
            },
            "complete": len(study_trials) == pairs_per_user * len(study.user_ids),
        }

    def _study(self, study_id: str) -> Study:
        if study_id not in self.studies:
            raise KeyError(f"no such study: {study_id}")
        return self.studies[study_id]
