"""Command-line interface.

Subcommands: build-freq, augment, stats, validate, expand-mask.

Augment settings resolve as defaults < TOML config file < SYNAUG_* env
vars < flags, and the fully resolved configuration is echoed to stderr
as one JSON line so any run can be reproduced from its log.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from itertools import zip_longest
from typing import Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from synaug.conllu import ConlluFormatError, TreeError, iter_parse_results
from synaug.frequency import OOVError, ReplacementPolicy, build_frequency_table
from synaug.operations import BLANK_TOKEN, OPERATIONS
from synaug.pipeline import PipelineConfig, _mismatch_message, run_pipeline
from synaug.selection import POLICY_KINDS, SelectionPolicy

_ENV_PREFIX = "SYNAUG_"

_AUGMENT_DEFAULTS: dict = {
    "source": None,
    "conllu": None,
    "target": None,
    "out_prefix": None,
    "op": "blanking",
    "policy": "syntax",
    "alpha": 0.1,
    "rate": 0.1,
    "window": 10,
    "seed": 0,
    "copies": 1,
    "keep_original": True,
    "on_bad_parse": "skip",
    "jobs": 1,
    "freq_table": None,
}


def _parse_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: {value!r}")


def _as_int(value) -> int:
    if isinstance(value, bool):
        raise ValueError(f"expected an integer, got {value!r}")
    return int(value)


_CONVERTERS = {
    "source": str,
    "conllu": str,
    "target": str,
    "out_prefix": str,
    "op": str,
    "policy": str,
    "alpha": float,
    "rate": float,
    "window": _as_int,
    "seed": _as_int,
    "copies": _as_int,
    "keep_original": _parse_bool,
    "on_bad_parse": str,
    "jobs": _as_int,
    "freq_table": str,
}


def _fail(message: str, code: int = 1) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_toml(path: str) -> dict:
    with open(path, "rb") as handle:
        return tomllib.load(handle)


def _resolve_augment_settings(args: argparse.Namespace) -> dict:
    settings = dict(_AUGMENT_DEFAULTS)
    if args.config:
        for key, value in _load_toml(args.config).items():
            norm = key.replace("-", "_")
            if norm not in settings:
                raise ValueError(f"{args.config}: unknown config key {key!r}")
            settings[norm] = _CONVERTERS[norm](value)
    known_env = {_ENV_PREFIX + key.upper(): key for key in settings}
    for name, raw in sorted(os.environ.items()):
        if not name.startswith(_ENV_PREFIX):
            continue
        key = known_env.get(name)
        if key is None:
            raise ValueError(f"unknown environment override {name}")
        settings[key] = _CONVERTERS[key](raw)
    for key in settings:
        value = getattr(args, key)
        if value is not None:
            settings[key] = value
    for key in ("source", "conllu", "target", "out_prefix"):
        if not settings[key]:
            raise ValueError(f"missing required setting: {key.replace('_', '-')}")
    return settings


def cmd_build_freq(args: argparse.Namespace) -> int:
    try:
        with open(args.corpus, encoding="utf-8") as handle:
            table = build_frequency_table(
                (line.split() for line in handle), forbidden=frozenset({BLANK_TOKEN})
            )
        table.save_tsv(args.output)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    print(f"vocabulary size: {len(table.entries)}")
    print(f"token count: {table.total_tokens()}")
    return 0


def cmd_augment(args: argparse.Namespace) -> int:
    try:
        settings = _resolve_augment_settings(args)
        policy = SelectionPolicy(
            kind=settings["policy"], alpha=settings["alpha"], rate=settings["rate"]
        )
        config = PipelineConfig(
            source=settings["source"],
            conllu=settings["conllu"],
            target=settings["target"],
            out_prefix=settings["out_prefix"],
            operation=settings["op"],
            policy=policy,
            replacement=ReplacementPolicy(window=settings["window"]),
            freq_table=settings["freq_table"],
            seed=settings["seed"],
            copies=settings["copies"],
            keep_original=settings["keep_original"],
            on_bad_parse=settings["on_bad_parse"],
            jobs=settings["jobs"],
        )
    except ValueError as exc:
        return _fail(str(exc), code=2)
    print(json.dumps(settings, sort_keys=True), file=sys.stderr)
    try:
        stats = run_pipeline(config, config_echo=settings)
    except (OSError, ValueError, OOVError) as exc:
        return _fail(str(exc))
    print(
        f"wrote {stats.pairs_out} pairs from {stats.sentences_out} sentences "
        f"({stats.sentences_skipped} skipped) to {config.out_prefix}.*",
        file=sys.stderr,
    )
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    missing = object()
    problems = 0
    checked = 0
    try:
        with open(args.conllu, encoding="utf-8") as conllu, open(
            args.source, encoding="utf-8"
        ) as source:
            pairs = zip_longest(source, iter_parse_results(conllu), fillvalue=missing)
            for ordinal, (line, parse) in enumerate(pairs):
                if line is missing:
                    print(f"sentence {ordinal}: parse file continues past end of source")
                    problems += 1
                    break
                if parse is missing:
                    print(f"sentence {ordinal}: source continues past end of parse file")
                    problems += 1
                    break
                checked += 1
                if isinstance(parse, TreeError):
                    print(f"sentence {ordinal}: {parse}")
                    problems += 1
                    continue
                tokens = tuple(line.split())
                if tokens != parse.surfaces:
                    print(_mismatch_message(ordinal, tokens, parse.surfaces))
                    problems += 1
    except (OSError, ConlluFormatError) as exc:
        return _fail(str(exc))
    print(f"checked {checked} sentences, {problems} problem(s)")
    return 0 if problems == 0 else 1


def _bpe_word_sizes(pieces: list, marker: str) -> list:
    """Piece count per word; a piece ending in the marker joins the next."""
    sizes = []
    current = 0
    for piece in pieces:
        current += 1
        if not piece.endswith(marker):
            sizes.append(current)
            current = 0
    if current:
        sizes.append(current)
    return sizes


def cmd_expand_mask(args: argparse.Namespace) -> int:
    try:
        with open(args.mask, encoding="utf-8") as mask_file, open(
            args.bpe, encoding="utf-8"
        ) as bpe_file, open(args.output, "w", encoding="utf-8") as out:
            lines = zip_longest(mask_file, bpe_file, fillvalue=None)
            for lineno, (mask_line, bpe_line) in enumerate(lines, start=1):
                if mask_line is None or bpe_line is None:
                    return _fail(f"line {lineno}: mask and BPE files differ in line count")
                bits = mask_line.split()
                sizes = _bpe_word_sizes(bpe_line.split(), args.marker)
                if len(bits) != len(sizes):
                    return _fail(
                        f"line {lineno}: mask has {len(bits)} words "
                        f"but BPE line has {len(sizes)}"
                    )
                expanded = []
                for bit, size in zip(bits, sizes):
                    if bit not in ("0", "1"):
                        return _fail(f"line {lineno}: mask entries must be 0 or 1, got {bit!r}")
                    expanded.extend([bit] * size)
                out.write(" ".join(expanded) + "\n")
    except OSError as exc:
        return _fail(str(exc))
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    try:
        with open(args.stats, encoding="utf-8") as handle:
            report = json.load(handle)
        counters = report["counters"]
        histogram = report.get("depth_histogram", {})
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        return _fail(f"malformed stats file: {exc}")
    if counters.get("sentences_out", 0) + counters.get("sentences_skipped", 0) != counters.get(
        "sentences_in", 0
    ):
        print("warning: sentence counters violate in = out + skipped", file=sys.stderr)
    if counters.get("tokens_selected", 0) > counters.get("tokens_total", 0):
        print("warning: tokens_selected exceeds tokens_total", file=sys.stderr)
    total = counters.get("tokens_total", 0)
    selected = counters.get("tokens_selected", 0)
    rate = selected / total if total else 0.0
    print(
        f"sentences: in={counters.get('sentences_in', 0)} "
        f"out={counters.get('sentences_out', 0)} "
        f"skipped={counters.get('sentences_skipped', 0)} "
        f"(parse={counters.get('parse_errors', 0)}, join={counters.get('join_errors', 0)})"
    )
    print(f"pairs out: {counters.get('pairs_out', 0)}")
    print(f"selection rate: {selected}/{total} = {rate:.5f}")
    print(
        f"clip events: {counters.get('clip_events', 0)}, "
        f"oov replacements skipped: {counters.get('oov_replacements', 0)}"
    )
    if histogram:
        print(f"{'depth':>5}  {'selected':>9}  {'total':>9}  {'rate':>8}  {'mean p_final':>12}")
        for depth in sorted(histogram, key=int):
            row = histogram[depth]
            row_total = row.get("total", 0)
            row_selected = row.get("selected", 0)
            row_rate = row_selected / row_total if row_total else 0.0
            mean_p = row.get("p_final_sum", 0.0) / row_total if row_total else 0.0
            print(
                f"{depth:>5}  {row_selected:>9}  {row_total:>9}  {row_rate:>8.5f}  {mean_p:>12.5f}"
            )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synaug",
        description="Depth-guided word noising for parallel MT corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_freq = sub.add_parser("build-freq", help="count unigram frequencies into a TSV table")
    p_freq.add_argument("corpus", help="tokenized text, one sentence per line")
    p_freq.add_argument("output", help="output TSV path")
    p_freq.set_defaults(func=cmd_build_freq)

    p_aug = sub.add_parser("augment", help="noise a parallel corpus")
    p_aug.add_argument("--config", help="TOML file with any of the settings below")
    p_aug.add_argument("--source", help="source text, one tokenized sentence per line")
    p_aug.add_argument("--conllu", help="CoNLL-U parses of the source")
    p_aug.add_argument("--target", help="target text, one sentence per line")
    p_aug.add_argument("--out-prefix", help="outputs go to PREFIX.{src,tgt,mask,stats.json}")
    p_aug.add_argument("--op", choices=OPERATIONS)
    p_aug.add_argument("--policy", choices=POLICY_KINDS)
    p_aug.add_argument("--alpha", type=float, help="selection rate scale (default 0.1)")
    p_aug.add_argument("--rate", type=float, help="per-word probability for --policy uniform")
    p_aug.add_argument("--window", type=int, help="replacement rank window (default 10)")
    p_aug.add_argument("--seed", type=int)
    p_aug.add_argument("--copies", type=int, help="noised variants per sentence")
    p_aug.add_argument("--keep-original", type=_parse_bool, metavar="BOOL")
    p_aug.add_argument("--on-bad-parse", choices=("skip", "abort"))
    p_aug.add_argument("--jobs", type=int, help="worker processes; output is identical for any value")
    p_aug.add_argument("--freq-table", help="TSV table for --op replacement (default: count the source)")
    p_aug.set_defaults(func=cmd_augment)

    p_stats = sub.add_parser("stats", help="summarize a stats JSON report")
    p_stats.add_argument("stats", help="stats.json written by augment")
    p_stats.set_defaults(func=cmd_stats)

    p_val = sub.add_parser("validate", help="check parses and source/parse alignment")
    p_val.add_argument("conllu", help="CoNLL-U parse file")
    p_val.add_argument("source", help="source text the parses must match")
    p_val.set_defaults(func=cmd_validate)

    p_exp = sub.add_parser("expand-mask", help="expand word-level masks to BPE pieces")
    p_exp.add_argument("mask", help="word-level 0/1 mask file")
    p_exp.add_argument("bpe", help="BPE-segmented source file")
    p_exp.add_argument("output", help="subword-level mask output path")
    p_exp.add_argument("--marker", default="@@", help="continuation suffix (default '@@')")
    p_exp.set_defaults(func=cmd_expand_mask)

    return parser


def main(argv: Optional[list] = None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
