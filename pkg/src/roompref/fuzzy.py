"""Triangular fuzzy sets, linguistic variables, and a Mamdani inference engine.

The engine is deliberately small: triangular membership functions only,
AND = min, implication = clipping, aggregation = pointwise max, and centroid
defuzzification over a sampled output universe. Engines are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "TriangularMF",
    "LinguisticVariable",
    "FuzzyRule",
    "SampledFuzzySet",
    "MamdaniEngine",
    "InferenceResult",
    "NoRuleFiredWarning",
    "engine_from_config",
    "load_engine_config",
]


class NoRuleFiredWarning(UserWarning):
    """Aggregate membership was identically zero; midpoint returned."""


@dataclass(frozen=True)
class TriangularMF:
    """Triangle with left foot ``a``, peak ``b``, right foot ``c`` (a <= b <= c).

    Shoulder shapes are allowed: with ``a == b`` (or ``b == c``) the membership
    is 1.0 at the flat end instead of dropping to 0.
    """

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        if not (self.a <= self.b <= self.c):
            raise ValueError(f"require a <= b <= c, got ({self.a}, {self.b}, {self.c})")

    def __call__(self, x: float) -> float:
        if x < self.a or x > self.c:
            return 0.0
        if x < self.b:
            return (x - self.a) / (self.b - self.a)
        if x > self.b:
            return (self.c - x) / (self.c - self.b)
        return 1.0

    def sampled(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized evaluation over an array of points."""
        left = np.zeros_like(xs) if self.b == self.a else (xs - self.a) / (self.b - self.a)
        right = np.zeros_like(xs) if self.c == self.b else (self.c - xs) / (self.c - self.b)
        out = np.where(xs < self.b, left, right)
        out[xs == self.b] = 1.0
        return np.clip(out, 0.0, 1.0)


@dataclass(frozen=True)
class LinguisticVariable:
    """Named variable over a closed real interval with labelled triangular terms.

    Construction enforces: term supports inside the universe, unique labels,
    and full coverage (every point of the universe has positive membership in
    at least one term).
    """

    name: str
    universe: tuple[float, float]
    terms: tuple[tuple[str, TriangularMF], ...]

    def __post_init__(self) -> None:
        lo, hi = self.universe
        if not lo < hi:
            raise ValueError(f"empty universe [{lo}, {hi}]")
        labels = [label for label, _ in self.terms]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate term labels in {self.name!r}")
        if not self.terms:
            raise ValueError(f"variable {self.name!r} has no terms")
        for label, mf in self.terms:
            if mf.a < lo or mf.c > hi:
                raise ValueError(
                    f"term {label!r} support [{mf.a}, {mf.c}] outside universe [{lo}, {hi}]"
                )
        self._check_coverage()

    def _check_coverage(self) -> None:
        # Max over terms is piecewise linear, so it can only reach zero at a
        # breakpoint or on a whole segment between adjacent breakpoints.
        # Checking breakpoints and segment midpoints is therefore exact.
        lo, hi = self.universe
        points = {lo, hi}
        for _, mf in self.terms:
            points.update(p for p in (mf.a, mf.b, mf.c) if lo <= p <= hi)
        ordered = sorted(points)
        probes = list(ordered)
        probes += [(x0 + x1) / 2 for x0, x1 in zip(ordered, ordered[1:])]
        for x in probes:
            if all(mf(x) == 0.0 for _, mf in self.terms):
                raise ValueError(f"variable {self.name!r} has a coverage gap at x={x}")

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.terms)

    def term(self, label: str) -> TriangularMF:
        for lab, mf in self.terms:
            if lab == label:
                return mf
        raise KeyError(f"{self.name!r} has no term {label!r}")

    def clamp(self, x: float) -> float:
        lo, hi = self.universe
        return min(max(x, lo), hi)

    def fuzzify(self, x: float) -> dict[str, float]:
        """Degrees of membership per term; out-of-universe inputs are clamped."""
        x = self.clamp(x)
        return {label: mf(x) for label, mf in self.terms}


@dataclass(frozen=True)
class FuzzyRule:
    """IF every (variable is term) in ``antecedent`` (AND) THEN output is ``consequent``."""

    antecedent: tuple[tuple[str, str], ...]  # (variable name, term label) pairs
    consequent: str

    @classmethod
    def of(cls, antecedent: dict[str, str], consequent: str) -> "FuzzyRule":
        return cls(tuple(sorted(antecedent.items())), consequent)

    def antecedent_map(self) -> dict[str, str]:
        return dict(self.antecedent)


def _sample_count(lo: float, hi: float, step: float) -> int:
    # Epsilon guards the classic 100/0.1 = 999.999... float trap.
    return math.floor((hi - lo) / step + 1e-9) + 1


@dataclass(frozen=True)
class SampledFuzzySet:
    """Fuzzy set discretized on an even grid over [lo, hi]."""

    lo: float
    hi: float
    step: float
    degrees: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        expected = _sample_count(self.lo, self.hi, self.step)
        if len(self.degrees) != expected:
            raise ValueError(f"expected {expected} samples, got {len(self.degrees)}")
        if np.any(self.degrees < 0) or np.any(self.degrees > 1):
            raise ValueError("membership degrees must lie in [0, 1]")

    @classmethod
    def from_mf(cls, mf: TriangularMF, lo: float, hi: float, step: float) -> "SampledFuzzySet":
        n = _sample_count(lo, hi, step)
        xs = np.linspace(lo, hi, n)
        return cls(lo, hi, step, mf.sampled(xs))

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, len(self.degrees))

    def alpha_cut(self, alpha: float) -> np.ndarray:
        """Sample points whose membership is at least ``alpha`` (alpha in (0, 1])."""
        if not 0.0 < alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {alpha}")
        return self.xs[self.degrees >= alpha]

    def union(self, other: "SampledFuzzySet") -> "SampledFuzzySet":
        self._check_grid(other)
        return SampledFuzzySet(self.lo, self.hi, self.step, np.maximum(self.degrees, other.degrees))

    def intersection(self, other: "SampledFuzzySet") -> "SampledFuzzySet":
        self._check_grid(other)
        return SampledFuzzySet(self.lo, self.hi, self.step, np.minimum(self.degrees, other.degrees))

    def centroid(self) -> float | None:
        """Discrete center of mass, or None when the set is identically zero."""
        total = float(self.degrees.sum())
        if total == 0.0:
            return None
        return float((self.xs * self.degrees).sum() / total)

    def _check_grid(self, other: "SampledFuzzySet") -> None:
        if (self.lo, self.hi, self.step) != (other.lo, other.hi, other.step):
            raise ValueError("sets are sampled on different grids")


@dataclass(frozen=True)
class InferenceResult:
    """Crisp output plus the intermediate pieces, for inspection and testing."""

    value: float
    firing_strengths: dict[int, float]  # rule index -> strength (only fired rules)
    aggregate: SampledFuzzySet
    no_rule_fired: bool


class MamdaniEngine:
    """Mamdani fuzzy inference: fuzzify, min-AND, clip, max-aggregate, centroid.

    Immutable after construction; ``infer`` is a pure function of its inputs.
    """

    def __init__(
        self,
        inputs: list[LinguisticVariable],
        output: LinguisticVariable,
        rules: list[FuzzyRule],
        step: float = 0.1,
    ) -> None:
        if not inputs:
            raise ValueError("at least one input variable required")
        if not rules:
            raise ValueError("at least one rule required")
        names = [v.name for v in inputs]
        if len(set(names)) != len(names) or output.name in names:
            raise ValueError("variable names must be distinct")
        self.inputs = {v.name: v for v in inputs}
        self.output = output
        self.rules = tuple(rules)
        self.step = step
        for i, rule in enumerate(self.rules):
            ant = rule.antecedent_map()
            if set(ant) != set(self.inputs):
                raise ValueError(f"rule {i} must reference every input variable exactly once")
            for var_name, label in ant.items():
                self.inputs[var_name].term(label)  # raises KeyError if unknown
            output.term(rule.consequent)
        lo, hi = output.universe
        n = _sample_count(lo, hi, step)
        self._xs = np.linspace(lo, hi, n)
        # Pre-sample each consequent term once; inference then only clips.
        self._consequents = {
            label: mf.sampled(self._xs) for label, mf in output.terms
        }

    def infer(self, values: dict[str, float]) -> float:
        """Crisp output for one crisp value per input variable."""
        return self.infer_detail(values).value

    def infer_detail(self, values: dict[str, float]) -> InferenceResult:
        if set(values) != set(self.inputs):
            raise ValueError(
                f"expected inputs {sorted(self.inputs)}, got {sorted(values)}"
            )
        fuzzified = {name: var.fuzzify(values[name]) for name, var in self.inputs.items()}

        aggregate = np.zeros_like(self._xs)
        strengths: dict[int, float] = {}
        for i, rule in enumerate(self.rules):
            strength = min(fuzzified[var][label] for var, label in rule.antecedent)
            if strength <= 0.0:
                continue
            strengths[i] = strength
            clipped = np.minimum(self._consequents[rule.consequent], strength)
            np.maximum(aggregate, clipped, out=aggregate)

        lo, hi = self.output.universe
        agg_set = SampledFuzzySet(lo, hi, self.step, aggregate)
        centroid = agg_set.centroid()
        if centroid is None:
            # Cannot happen with full-coverage partitions; defensive only.
            warnings.warn(
                f"no rule fired for inputs {values}; returning universe midpoint",
                NoRuleFiredWarning,
                stacklevel=2,
            )
            return InferenceResult((lo + hi) / 2, {}, agg_set, True)
        return InferenceResult(centroid, strengths, agg_set, False)


def engine_from_config(config: dict) -> MamdaniEngine:
    """Build an engine from a declarative description (see ``load_engine_config``)."""
    variables = {}
    for name, spec in config["variables"].items():
        lo, hi = spec["universe"]
        terms = tuple(
            (label, TriangularMF(*params)) for label, params in spec["terms"].items()
        )
        variables[name] = LinguisticVariable(name, (float(lo), float(hi)), terms)
    inputs = [variables[name] for name in config["inputs"]]
    output = variables[config["output"]]
    rules = [FuzzyRule.of(r["if"], r["then"]) for r in config["rules"]]
    return MamdaniEngine(inputs, output, rules, step=config.get("step", 0.1))


def load_engine_config(path) -> MamdaniEngine:
    """Load a JSON engine description.

    Expected shape::

        {
          "variables": {"score": {"universe": [0, 100],
                                  "terms": {"Low": [0, 0, 50], ...}}, ...},
          "inputs": ["score", ...],
          "output": "preference",
          "rules": [{"if": {"score": "Low", ...}, "then": "Weak"}, ...],
          "step": 0.1
        }
    """
    with open(path, "r", encoding="utf-8") as fh:
        return engine_from_config(json.load(fh))
