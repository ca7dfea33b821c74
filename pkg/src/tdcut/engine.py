"""Randomised Cut&Count driver.

Weights for the Isolation Lemma are drawn per (trial, choice) from an
independent numpy substream keyed by ``(seed, trial, choice_index)``; that key
layout is part of the determinism contract, so the same seed reproduces the
same verdict bit for bit.  Each count is a sparse ``{target_weight: 1}`` map of
the weight classes with an odd number of candidate-cut pairs (absent = even).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

import numpy as np

DEFAULT_TRIALS = 16

PLAIN = "plain"
LABELED = "labeled"

V1_STRATEGIES = ("fixed-vertex", "edge-endpoints", "all-vertices", "none")


@dataclass(frozen=True)
class Universe:
    """Either V itself or V x {label0, label1}; element (v, i) has index 2v + i."""

    kind: str
    n: int
    labels: tuple[str, ...] = ()

    @classmethod
    def plain(cls, n: int) -> "Universe":
        return cls(PLAIN, n)

    @classmethod
    def labeled(cls, n: int, labels: tuple[str, str]) -> "Universe":
        return cls(LABELED, n, labels)

    @property
    def size(self) -> int:
        return self.n if self.kind == PLAIN else 2 * self.n

    def index(self, v: int, label: str | None = None) -> int:
        if self.kind == PLAIN:
            return v
        return 2 * v + self.labels.index(label)

    @property
    def sweep_bound(self) -> int:
        """Largest target weight swept: 2|U|^2 = |U| * N."""
        return 2 * self.size * self.size


@dataclass(frozen=True)
class WeightFunction:
    weights: tuple[int, ...]
    ceiling: int

    def __getitem__(self, i: int) -> int:
        return self.weights[i]

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> int:
        return sum(self.weights)


@dataclass(frozen=True)
class RunConfig:
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    v1_strategy: str | None = None  # None: the problem's own default

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.v1_strategy is not None and self.v1_strategy not in V1_STRATEGIES:
            raise ValueError(f"unknown v1 strategy {self.v1_strategy!r}")


def substream(seed: int, trial: int, choice: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, trial, choice]))


def sample_weights(universe: Universe, rng: np.random.Generator) -> WeightFunction:
    """Each element independently uniform on [1, 2|U|]."""
    ceiling = 2 * universe.size
    draws = rng.integers(1, ceiling, size=universe.size, endpoint=True)
    return WeightFunction(tuple(int(x) for x in draws), ceiling)


def has_odd_class(table: dict[int, int], bound: int) -> bool:
    return any(table.get(t, 0) & 1 for t in range(bound + 1))


def run_cut_and_count(
    universe: Universe,
    countc_all: Callable[[Hashable, WeightFunction], dict[int, int]],
    choices: Sequence[Hashable],
    cfg: RunConfig,
) -> bool:
    """One isolation attempt per (trial, choice) with fresh weights; OR of all.

    ``countc_all(choice, weights)`` must return the odd weight classes for
    that forced choice (e.g. a v1 vertex, or None when nothing is forced).
    The weight sweep covers 0..2|U|^2; the polynomial is computed once per
    weighting and then read off for every target.
    """
    bound = universe.sweep_bound
    for trial in range(cfg.trials):
        for idx, choice in enumerate(choices):
            weights = sample_weights(universe, substream(cfg.seed, trial, idx))
            if has_odd_class(countc_all(choice, weights), bound):
                return True
    return False


def run_trials(
    universe: Universe,
    countc_all: Callable[[WeightFunction], dict[int, int]],
    cfg: RunConfig,
) -> bool:
    return run_cut_and_count(universe, lambda _c, w: countc_all(w), [None], cfg)
