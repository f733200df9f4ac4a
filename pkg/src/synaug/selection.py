"""Depth-based word selection probabilities and mask sampling.

A token's depth in its dependency tree is an inverse importance signal:
the root carries the sentence, deep leaves are expendable.  Depth scores
are squashed through a softmax and rescaled by sentence length so the
expected number of selected tokens grows proportionally with length.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from typing import Sequence

POLICY_KINDS = ("syntax", "uniform")


def derive_rng(seed: int, *path: int) -> random.Random:
    """Independent deterministic stream for (seed, *path).

    Streams for distinct paths are unrelated, so sentences can be
    processed in any order, or in parallel, with identical results.
    """
    key = ":".join(str(part) for part in (seed, *path)).encode()
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


@dataclass(frozen=True)
class SelectionPolicy:
    """How the tokens an operation will touch get picked.

    kind "syntax" samples each token with its depth-derived probability;
    kind "uniform" is the sentence-independent baseline where every token
    has the same fixed probability `rate`.
    """

    kind: str = "syntax"
    alpha: float = 0.1
    rate: float = 0.1

    def __post_init__(self) -> None:
        if self.kind not in POLICY_KINDS:
            raise ValueError(f"policy kind must be one of {POLICY_KINDS}, got {self.kind!r}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError(f"rate must be in [0, 1], got {self.rate}")


@dataclass(frozen=True)
class SelectionProfile:
    """Per-token probabilities and the sampled mask for one sentence."""

    q: tuple[float, ...]  # depth scores in [0, 1), 0 exactly at the root
    p: tuple[float, ...]  # softmax of q, sums to 1
    p_final: tuple[float, ...]  # length-compensated, clipped to [0, 1]
    mask: tuple[bool, ...]
    alpha: float
    clipped: int  # how many tokens hit the 1.0 ceiling


def depth_score(depths: Sequence[int]) -> list[float]:
    """Map tree depth d to 1 - 2**-(d - 1).

    The root (d = 1) scores 0; scores approach 1 for deep leaves.
    """
    scores = []
    for d in depths:
        if d < 1:
            raise ValueError(f"depths must be >= 1, got {d}")
        scores.append(1.0 - 0.5 ** (d - 1))
    return scores


def normalize(q: Sequence[float]) -> list[float]:
    """Softmax over the raw scores.

    The maximum is subtracted before exponentiation; softmax is
    shift-invariant, so the result is unchanged but cannot overflow.
    """
    if len(q) == 0:
        raise ValueError("cannot normalize an empty score vector")
    top = max(q)
    exps = [math.exp(x - top) for x in q]
    total = sum(exps)
    return [e / total for e in exps]


def length_scale(p: Sequence[float], alpha: float) -> tuple[list[float], int]:
    """Rescale softmax weights to alpha * p * n and clip at 1.0.

    The length factor keeps the expected number of selections at
    alpha * n regardless of sentence length.  Returns the scaled
    probabilities and the number of clipped entries.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    n = len(p)
    scaled = []
    clipped = 0
    for value in p:
        s = alpha * value * n
        if s > 1.0:
            s = 1.0
            clipped += 1
        scaled.append(s)
    return scaled, clipped


def sample_mask(p_final: Sequence[float], rng: random.Random) -> list[bool]:
    """One independent Bernoulli trial per token, in token order.

    Consumes exactly len(p_final) draws from rng.
    """
    return [rng.random() < p for p in p_final]


def uniform_mask(n: int, rate: float, rng: random.Random) -> list[bool]:
    """Sentence-independent baseline mask; consumes exactly n draws."""
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"rate must be in [0, 1], got {rate}")
    return [rng.random() < rate for _ in range(n)]


def build_profile(depths: Sequence[int], alpha: float, rng: random.Random) -> SelectionProfile:
    """Full depth -> score -> softmax -> length-scale -> sample chain."""
    q = depth_score(depths)
    p = normalize(q)
    p_final, clipped = length_scale(p, alpha)
    mask = sample_mask(p_final, rng)
    return SelectionProfile(
        q=tuple(q),
        p=tuple(p),
        p_final=tuple(p_final),
        mask=tuple(mask),
        alpha=alpha,
        clipped=clipped,
    )
