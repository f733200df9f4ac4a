"""End-to-end corpus augmentation.

Joins source text, its dependency parses and the target text; runs word
selection and the configured operation per sentence; writes the
augmented corpus, a dropout-mask sidecar and a stats report.

Every (seed, epoch, ordinal, copy) tuple gets its own rng stream, so
output is byte-identical no matter how sentences are scheduled across
worker processes.  Sentences flow through in fixed-size chunks and the
per-chunk stats are merged in input order, which keeps even the floating
point aggregates identical between sequential and parallel runs.
"""

from __future__ import annotations

import json
import multiprocessing
import os
from dataclasses import dataclass, field
from itertools import zip_longest
from typing import Iterable, Iterator, Optional

from synaug.conllu import ParsedSentence, TreeError, iter_parse_results
from synaug.frequency import FrequencyTable, ReplacementPolicy, build_frequency_table
from synaug.operations import (
    BLANK_TOKEN,
    OPERATIONS,
    AugmentationRecord,
    apply_blanking,
    apply_dropout,
    apply_replacement,
)
from synaug.selection import SelectionPolicy, build_profile, derive_rng, uniform_mask

CHUNK_SENTENCES = 256


class AlignmentError(ValueError):
    """Input streams disagree on sentence count."""


class JoinError(ValueError):
    """Parse surfaces do not match the source text at some sentence."""


class PlaceholderCollisionError(ValueError):
    """The corpus already contains the blanking placeholder."""


@dataclass(frozen=True)
class ParallelUnit:
    ordinal: int  # 0-based input sentence index
    source_tokens: tuple[str, ...]
    parse: ParsedSentence
    target_line: str  # opaque, never modified


@dataclass
class RunStats:
    """Mergeable counters for one augmentation run.

    depth_histogram maps depth -> [selected, total, p_final_sum], counted
    over every selection trial (one per augmented copy per token);
    originals emitted via keep_original are not trials and do not count.
    """

    sentences_in: int = 0
    sentences_out: int = 0
    sentences_skipped: int = 0
    parse_errors: int = 0
    join_errors: int = 0
    pairs_out: int = 0
    tokens_total: int = 0
    tokens_selected: int = 0
    clip_events: int = 0
    oov_replacements: int = 0
    depth_histogram: dict[int, list] = field(default_factory=dict)

    def merge(self, other: "RunStats") -> None:
        self.sentences_in += other.sentences_in
        self.sentences_out += other.sentences_out
        self.sentences_skipped += other.sentences_skipped
        self.parse_errors += other.parse_errors
        self.join_errors += other.join_errors
        self.pairs_out += other.pairs_out
        self.tokens_total += other.tokens_total
        self.tokens_selected += other.tokens_selected
        self.clip_events += other.clip_events
        self.oov_replacements += other.oov_replacements
        for depth, (selected, total, p_sum) in other.depth_histogram.items():
            entry = self.depth_histogram.setdefault(depth, [0, 0, 0.0])
            entry[0] += selected
            entry[1] += total
            entry[2] += p_sum

    def to_report(self) -> dict:
        counters = {
            "sentences_in": self.sentences_in,
            "sentences_out": self.sentences_out,
            "sentences_skipped": self.sentences_skipped,
            "parse_errors": self.parse_errors,
            "join_errors": self.join_errors,
            "pairs_out": self.pairs_out,
            "tokens_total": self.tokens_total,
            "tokens_selected": self.tokens_selected,
            "clip_events": self.clip_events,
            "oov_replacements": self.oov_replacements,
        }
        histogram = {
            str(depth): {"selected": sel, "total": tot, "p_final_sum": p_sum}
            for depth, (sel, tot, p_sum) in sorted(self.depth_histogram.items())
        }
        return {"counters": counters, "depth_histogram": histogram}


@dataclass
class PipelineConfig:
    """Everything needed to reproduce a run byte-exactly."""

    source: str
    conllu: str
    target: str
    out_prefix: str
    operation: str = "blanking"
    policy: SelectionPolicy = field(default_factory=SelectionPolicy)
    replacement: ReplacementPolicy = field(default_factory=ReplacementPolicy)
    freq_table: Optional[str] = None  # TSV path; None = build from source
    seed: int = 0
    copies: int = 1
    keep_original: bool = True
    on_bad_parse: str = "skip"  # or "abort"
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.operation not in OPERATIONS:
            raise ValueError(f"operation must be one of {OPERATIONS}, got {self.operation!r}")
        if self.copies < 1:
            raise ValueError(f"copies must be >= 1, got {self.copies}")
        if self.on_bad_parse not in ("skip", "abort"):
            raise ValueError(f"on_bad_parse must be 'skip' or 'abort', got {self.on_bad_parse!r}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")

    @property
    def out_source(self) -> str:
        return self.out_prefix + ".src"

    @property
    def out_target(self) -> str:
        return self.out_prefix + ".tgt"

    @property
    def out_mask(self) -> str:
        return self.out_prefix + ".mask"

    @property
    def out_stats(self) -> str:
        return self.out_prefix + ".stats.json"


_END = object()


def _mismatch_message(ordinal: int, src_tokens, surfaces) -> str:
    if len(src_tokens) != len(surfaces):
        return (
            f"sentence {ordinal}: source has {len(src_tokens)} tokens "
            f"but parse has {len(surfaces)}"
        )
    for i, (a, b) in enumerate(zip(src_tokens, surfaces)):
        if a != b:
            return f"sentence {ordinal}: source token {i + 1} is {a!r} but parse surface is {b!r}"
    return f"sentence {ordinal}: source and parse disagree"


def join_corpus(
    source_lines: Iterable[str],
    parses: Iterable,
    target_lines: Iterable[str],
    on_bad_parse: str = "abort",
    stats: Optional[RunStats] = None,
) -> Iterator[ParallelUnit]:
    """Align the three input streams into ParallelUnits.

    `parses` may yield ParsedSentence objects or TreeError markers (as
    produced by iter_parse_results), one per sentence, so skipped parses
    keep the streams aligned.  A sentence-count mismatch between streams
    raises AlignmentError.  Bad parses and source/parse surface
    mismatches follow on_bad_parse: "abort" raises, "skip" drops the
    sentence and counts it in stats.
    """
    if on_bad_parse not in ("skip", "abort"):
        raise ValueError(f"on_bad_parse must be 'skip' or 'abort', got {on_bad_parse!r}")
    if stats is None:
        stats = RunStats()
    zipped = zip_longest(source_lines, parses, target_lines, fillvalue=_END)
    for ordinal, (src, parse, tgt) in enumerate(zipped):
        if src is _END or parse is _END or tgt is _END:
            raise AlignmentError(
                f"input streams end at different sentence counts (sentence {ordinal})"
            )
        stats.sentences_in += 1
        if isinstance(parse, TreeError):
            if on_bad_parse == "abort":
                raise TreeError(f"sentence {ordinal}: {parse}") from parse
            stats.sentences_skipped += 1
            stats.parse_errors += 1
            continue
        tokens = tuple(src.rstrip("\n").rstrip("\r").split())
        surfaces = parse.surfaces
        if tokens != surfaces:
            message = _mismatch_message(ordinal, tokens, surfaces)
            if on_bad_parse == "abort":
                raise JoinError(message)
            stats.sentences_skipped += 1
            stats.join_errors += 1
            continue
        yield ParallelUnit(
            ordinal=ordinal,
            source_tokens=tokens,
            parse=parse,
            target_line=tgt.rstrip("\n").rstrip("\r"),
        )


def _noise_once(unit: ParallelUnit, config: PipelineConfig, table, rng):
    """Sample one mask and apply the configured operation."""
    n = len(unit.source_tokens)
    if config.policy.kind == "syntax":
        profile = build_profile(unit.parse.depths, config.policy.alpha, rng)
        mask, p_final, clipped = profile.mask, profile.p_final, profile.clipped
    else:
        mask = tuple(uniform_mask(n, config.policy.rate, rng))
        p_final = (config.policy.rate,) * n
        clipped = 0
    if config.operation == "blanking":
        record = apply_blanking(unit.source_tokens, mask)
    elif config.operation == "dropout":
        record = apply_dropout(unit.source_tokens, mask)
    else:
        record = apply_replacement(unit.source_tokens, mask, table, config.replacement, rng)
    return record, mask, p_final, clipped


def augment_unit(
    unit: ParallelUnit,
    config: PipelineConfig,
    table: Optional[FrequencyTable] = None,
    epoch: int = 0,
) -> list[AugmentationRecord]:
    """Generate config.copies noised variants of one sentence.

    Each (seed, epoch, ordinal, copy) tuple gets its own rng stream;
    an online trainer can fold the epoch number in for fresh per-epoch
    noise while the offline pipeline always uses epoch 0.
    """
    if config.operation == "replacement" and table is None:
        raise ValueError("replacement requires a frequency table")
    if BLANK_TOKEN in unit.source_tokens:
        raise PlaceholderCollisionError(
            f"sentence {unit.ordinal}: source already contains {BLANK_TOKEN!r}"
        )
    records = []
    for copy in range(config.copies):
        rng = derive_rng(config.seed, epoch, unit.ordinal, copy)
        record, _, _, _ = _noise_once(unit, config, table, rng)
        records.append(record)
    return records


def _format_mask(mask) -> str:
    return " ".join("1" if bit else "0" for bit in mask)


def _process_chunk(units: list[ParallelUnit], config: PipelineConfig, table) -> tuple[list, RunStats]:
    """Augment one chunk of sentences; returns output lines and a stats delta."""
    stats = RunStats()
    lines = []  # (source, target, mask) per output pair
    for unit in units:
        if BLANK_TOKEN in unit.source_tokens:
            raise PlaceholderCollisionError(
                f"sentence {unit.ordinal}: source already contains {BLANK_TOKEN!r}"
            )
        n = len(unit.source_tokens)
        depths = unit.parse.depths
        if config.keep_original:
            lines.append(
                (" ".join(unit.source_tokens), unit.target_line, " ".join(["0"] * n))
            )
            stats.pairs_out += 1
        for copy in range(config.copies):
            rng = derive_rng(config.seed, 0, unit.ordinal, copy)
            record, mask, p_final, clipped = _noise_once(unit, config, table, rng)
            stats.tokens_total += n
            stats.tokens_selected += sum(mask)
            stats.clip_events += clipped
            stats.oov_replacements += record.oov_skipped
            hist = stats.depth_histogram
            for depth, selected, p in zip(depths, mask, p_final):
                entry = hist.get(depth)
                if entry is None:
                    entry = hist[depth] = [0, 0, 0.0]
                if selected:
                    entry[0] += 1
                entry[1] += 1
                entry[2] += p
            lines.append(
                (" ".join(record.tokens_out), unit.target_line, _format_mask(record.dropout_mask))
            )
            stats.pairs_out += 1
        stats.sentences_out += 1
    return lines, stats


_WORKER_CONFIG: Optional[PipelineConfig] = None
_WORKER_TABLE: Optional[FrequencyTable] = None


def _init_worker(config: PipelineConfig, table: Optional[FrequencyTable]) -> None:
    global _WORKER_CONFIG, _WORKER_TABLE
    _WORKER_CONFIG = config
    _WORKER_TABLE = table


def _process_chunk_in_worker(units: list[ParallelUnit]) -> tuple[list, RunStats]:
    return _process_chunk(units, _WORKER_CONFIG, _WORKER_TABLE)


def _chunked(iterable: Iterable, size: int) -> Iterator[list]:
    chunk: list = []
    for item in iterable:
        chunk.append(item)
        if len(chunk) >= size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def load_or_build_table(config: PipelineConfig) -> Optional[FrequencyTable]:
    """Frequency table for replacement runs: load the TSV if configured,
    otherwise count over the source side of the corpus being augmented."""
    if config.operation != "replacement":
        return None
    if config.freq_table:
        return FrequencyTable.load_tsv(config.freq_table)
    with open(config.source, encoding="utf-8") as src:
        return build_frequency_table(
            (line.split() for line in src), forbidden=frozenset({BLANK_TOKEN})
        )


def run_pipeline(config: PipelineConfig, config_echo: Optional[dict] = None) -> RunStats:
    """Run the whole augmentation and write all four output files.

    Output order follows input order regardless of config.jobs, and all
    randomness comes from per-(ordinal, copy) streams, so two runs with
    the same config produce byte-identical files.
    """
    table = load_or_build_table(config)
    stats = RunStats()
    out_dir = os.path.dirname(config.out_prefix)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    with open(config.source, encoding="utf-8") as src, open(
        config.conllu, encoding="utf-8"
    ) as conllu, open(config.target, encoding="utf-8") as tgt, open(
        config.out_source, "w", encoding="utf-8"
    ) as out_src, open(config.out_target, "w", encoding="utf-8") as out_tgt, open(
        config.out_mask, "w", encoding="utf-8"
    ) as out_mask:
        units = join_corpus(
            src, iter_parse_results(conllu), tgt, on_bad_parse=config.on_bad_parse, stats=stats
        )
        chunks = _chunked(units, CHUNK_SENTENCES)

        def consume(results) -> None:
            for lines, delta in results:
                for src_line, tgt_line, mask_line in lines:
                    out_src.write(src_line + "\n")
                    out_tgt.write(tgt_line + "\n")
                    out_mask.write(mask_line + "\n")
                stats.merge(delta)

        if config.jobs == 1:
            consume(_process_chunk(chunk, config, table) for chunk in chunks)
        else:
            with multiprocessing.Pool(
                processes=config.jobs, initializer=_init_worker, initargs=(config, table)
            ) as pool:
                consume(pool.imap(_process_chunk_in_worker, chunks))

    report = stats.to_report()
    echo = dict(config_echo) if config_echo is not None else _describe_config(config)
    # jobs is an execution knob with no effect on output bytes; keeping it
    # out of the report makes stats files comparable across job counts
    echo.pop("jobs", None)
    report["config"] = echo
    with open(config.out_stats, "w", encoding="utf-8") as out:
        json.dump(report, out, indent=2, sort_keys=True)
        out.write("\n")
    return stats


def _describe_config(config: PipelineConfig) -> dict:
    return {
        "source": config.source,
        "conllu": config.conllu,
        "target": config.target,
        "out_prefix": config.out_prefix,
        "op": config.operation,
        "policy": config.policy.kind,
        "alpha": config.policy.alpha,
        "rate": config.policy.rate,
        "window": config.replacement.window,
        "freq_table": config.freq_table,
        "seed": config.seed,
        "copies": config.copies,
        "keep_original": config.keep_original,
        "on_bad_parse": config.on_bad_parse,
        "jobs": config.jobs,
    }
