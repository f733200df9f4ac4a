"""CoNLL-U reading, tree validation and token depth computation.

Only the ID, FORM, HEAD and DEPREL columns are consumed; the rest is
parser metadata this pipeline does not need.  Multi-word token ranges
(ID like "4-5") and empty nodes (ID like "5.1") are skipped so the token
sequence matches the plain text the parser was fed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

N_COLUMNS = 10
COL_ID, COL_FORM, COL_HEAD, COL_DEPREL = 0, 1, 6, 7

_RANGE_ID = re.compile(r"\d+-\d+$")
_EMPTY_NODE_ID = re.compile(r"\d+\.\d+$")


class ConlluFormatError(ValueError):
    """Line-level syntax problem: wrong column count, non-integer field."""


class TreeError(ValueError):
    """Structurally invalid tree: cycle, zero or multiple roots, bad head."""


@dataclass(frozen=True)
class Token:
    index: int  # 1-based position in the sentence
    surface: str
    head: int  # 1-based head position, 0 for the root
    deprel: str = "_"


@dataclass(frozen=True)
class ParsedSentence:
    tokens: tuple[Token, ...]
    depths: tuple[int, ...]

    @classmethod
    def from_tokens(cls, tokens: Iterable[Token]) -> "ParsedSentence":
        tokens = tuple(tokens)
        _validate_structure(tokens)
        return cls(tokens=tokens, depths=tuple(compute_depths(tokens)))

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(t.surface for t in self.tokens)


def _validate_structure(tokens: tuple[Token, ...]) -> None:
    n = len(tokens)
    if n == 0:
        raise TreeError("sentence has no tokens")
    roots = 0
    for t in tokens:
        if not 0 <= t.head <= n:
            raise TreeError(f"token {t.index} has head {t.head} outside [0, {n}]")
        if t.head == t.index:
            raise TreeError(f"token {t.index} is its own head")
        if t.head == 0:
            roots += 1
    if roots == 0:
        raise TreeError("no root token (head 0)")
    if roots > 1:
        raise TreeError(f"{roots} root tokens, expected exactly one")


def compute_depths(tokens: Iterable[Token]) -> list[int]:
    """Depth of every token in the head-link tree.

    The root has depth 1; every other token sits one level below its
    head.  Head chains are walked with memoisation, so total work stays
    O(n) even for chain-shaped trees.  Raises TreeError on a cycle or an
    out-of-range head.
    """
    heads = [t.head for t in tokens]
    n = len(heads)
    depths = [0] * n  # 0 = unknown, -1 = on the chain currently being walked
    for start in range(n):
        if depths[start] > 0:
            continue
        chain: list[int] = []
        node = start
        base = 0
        while True:
            d = depths[node]
            if d == -1:
                raise TreeError(f"head cycle through token {node + 1}")
            if d > 0:
                base = d
                break
            depths[node] = -1
            chain.append(node)
            head = heads[node]
            if head == 0:
                break
            if not 1 <= head <= n:
                raise TreeError(f"token {node + 1} has head {head} outside [0, {n}]")
            node = head - 1
        for offset, idx in enumerate(reversed(chain), start=1):
            depths[idx] = base + offset
    return depths


def _read_blocks(stream: Iterable[str]) -> Iterator[list[tuple[int, str]]]:
    """Yield one [(line_number, line), ...] list per sentence block.

    Blank lines separate blocks; LF and CRLF are both accepted.
    """
    block: list[tuple[int, str]] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line:
            if block:
                yield block
                block = []
            continue
        block.append((lineno, line))
    if block:
        yield block


def _parse_block(block: list[tuple[int, str]]) -> ParsedSentence:
    tokens: list[Token] = []
    for lineno, line in block:
        if line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != N_COLUMNS:
            raise ConlluFormatError(
                f"line {lineno}: expected {N_COLUMNS} tab-separated columns, got {len(cols)}"
            )
        token_id = cols[COL_ID]
        if _RANGE_ID.match(token_id) or _EMPTY_NODE_ID.match(token_id):
            continue
        try:
            index = int(token_id)
        except ValueError:
            raise ConlluFormatError(f"line {lineno}: non-integer token id {token_id!r}") from None
        try:
            head = int(cols[COL_HEAD])
        except ValueError:
            raise ConlluFormatError(f"line {lineno}: non-integer head {cols[COL_HEAD]!r}") from None
        if index != len(tokens) + 1:
            raise ConlluFormatError(
                f"line {lineno}: token id {index} out of sequence (expected {len(tokens) + 1})"
            )
        tokens.append(Token(index=index, surface=cols[COL_FORM], head=head, deprel=cols[COL_DEPREL]))
    if not tokens:
        raise TreeError("sentence block contains no token lines")
    return ParsedSentence.from_tokens(tokens)


ParseResult = Union[ParsedSentence, TreeError]


def iter_parse_results(stream: Iterable[str]) -> Iterator[ParseResult]:
    """Per sentence block, yield the parsed sentence or the TreeError it
    raised, keeping one item per block so ordinals stay aligned with the
    source text.  Format errors are never recoverable and always raise.
    Comment-only blocks are ignored.
    """
    for block in _read_blocks(stream):
        if all(line.startswith("#") for _, line in block):
            continue
        try:
            yield _parse_block(block)
        except TreeError as err:
            yield err


def parse_conllu(stream: Iterable[str], on_tree_error: str = "raise") -> Iterator[ParsedSentence]:
    """Parse a CoNLL-U character stream into sentences.

    on_tree_error selects the policy for structurally invalid trees:
    "raise" aborts on the first one, "skip" silently drops the sentence.
    Format errors (bad columns, non-integer fields) always raise.
    """
    if on_tree_error not in ("raise", "skip"):
        raise ValueError(f"on_tree_error must be 'raise' or 'skip', got {on_tree_error!r}")
    for ordinal, result in enumerate(iter_parse_results(stream)):
        if isinstance(result, TreeError):
            if on_tree_error == "raise":
                raise TreeError(f"sentence {ordinal}: {result}") from result
            continue
        yield result
