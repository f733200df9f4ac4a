"""The three word-level noising operations.

All three preserve sentence length so positional alignment with the
untouched target side survives: blanking swaps selected tokens for a
placeholder, dropout only flags them for embedding-zeroing downstream,
replacement swaps in a frequency-matched word.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from synaug.frequency import (
    FrequencyTable,
    OOVError,
    ReplacementPolicy,
    replacement_candidates,
    sample_replacement,
)

BLANK_TOKEN = "<BLANK>"

OPERATIONS = ("blanking", "dropout", "replacement")


@dataclass(frozen=True)
class AugmentationRecord:
    """One noised variant of a source sentence.

    selected_positions are 1-based, strictly increasing, and name the
    tokens the operation actually touched.  dropout_mask is all-false
    except for the dropout operation, where it tells the trainer which
    embeddings to zero.
    """

    tokens_out: tuple[str, ...]
    dropout_mask: tuple[bool, ...]
    selected_positions: tuple[int, ...]
    operation: str
    oov_skipped: int = 0  # replacement only: selected tokens left unchanged


def _positions(mask: Sequence[bool]) -> tuple[int, ...]:
    return tuple(i + 1 for i, selected in enumerate(mask) if selected)


def _check_lengths(tokens: Sequence[str], mask: Sequence[bool]) -> None:
    if len(tokens) != len(mask):
        raise ValueError(f"mask length {len(mask)} != token count {len(tokens)}")


def apply_blanking(tokens: Sequence[str], mask: Sequence[bool]) -> AugmentationRecord:
    """Replace every selected token with the placeholder."""
    _check_lengths(tokens, mask)
    out = tuple(BLANK_TOKEN if selected else tok for tok, selected in zip(tokens, mask))
    return AugmentationRecord(
        tokens_out=out,
        dropout_mask=(False,) * len(tokens),
        selected_positions=_positions(mask),
        operation="blanking",
    )


def apply_dropout(tokens: Sequence[str], mask: Sequence[bool]) -> AugmentationRecord:
    """Keep the tokens; emit the mask for the trainer to zero embeddings.

    The zeroing itself happens at training time via the mask sidecar, so
    the sentence text is unchanged here.
    """
    _check_lengths(tokens, mask)
    return AugmentationRecord(
        tokens_out=tuple(tokens),
        dropout_mask=tuple(bool(m) for m in mask),
        selected_positions=_positions(mask),
        operation="dropout",
    )


def apply_replacement(
    tokens: Sequence[str],
    mask: Sequence[bool],
    table: FrequencyTable,
    policy: ReplacementPolicy,
    rng: random.Random,
) -> AugmentationRecord:
    """Swap each selected token for a frequency-rank neighbour.

    Selected tokens missing from the table (or with no candidate at all,
    possible only for a singleton vocabulary) are left unchanged and
    counted in oov_skipped; they are excluded from selected_positions.
    """
    _check_lengths(tokens, mask)
    out = list(tokens)
    replaced = []
    oov = 0
    for i, (tok, selected) in enumerate(zip(tokens, mask)):
        if not selected:
            continue
        try:
            candidates = replacement_candidates(table, tok, policy)
        except OOVError:
            oov += 1
            continue
        if not candidates:
            oov += 1
            continue
        out[i] = sample_replacement(candidates, rng)
        replaced.append(i + 1)
    return AugmentationRecord(
        tokens_out=tuple(out),
        dropout_mask=(False,) * len(tokens),
        selected_positions=tuple(replaced),
        operation="replacement",
        oov_skipped=oov,
    )
