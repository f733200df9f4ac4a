"""Shared fixtures: a worked-example sentence and toy corpus builders."""

import random

import pytest

# Worked example used across the suite: depths follow from the heads by
# the root-depth-1, child-is-parent-plus-one rule.
GOLDEN_WORDS = ("It", "is", "a", "good", "thing", "for", "people", ".")
GOLDEN_HEADS = (2, 0, 5, 5, 2, 7, 5, 2)
GOLDEN_DEPTHS = (2, 1, 3, 3, 2, 4, 3, 2)
GOLDEN_ALPHA = 0.1


def random_tree_heads(rng: random.Random, n: int) -> list:
    """Random attachment: token i hangs off a uniform earlier token.

    Always yields a valid single-root tree, with depths that stay small
    (logarithmic in n), far from any floating point edge.
    """
    return [0] + [rng.randint(1, i) for i in range(1, n)]


def render_block(words, heads, deprel="dep") -> str:
    """One CoNLL-U sentence block (without the trailing blank line)."""
    rows = []
    for i, (word, head) in enumerate(zip(words, heads), start=1):
        rows.append(f"{i}\t{word}\t_\t_\t_\t_\t{head}\t{deprel}\t_\t_")
    return "\n".join(rows)


def make_corpus(rng: random.Random, sentences: int, min_len=2, max_len=14, vocab_size=200):
    """List of (words, heads) pairs over a Zipf-weighted toy vocabulary."""
    vocab = [f"w{i}" for i in range(vocab_size)]
    weights = [1.0 / rank for rank in range(1, vocab_size + 1)]
    out = []
    for _ in range(sentences):
        n = rng.randint(min_len, max_len)
        words = rng.choices(vocab, weights=weights, k=n)
        out.append((words, random_tree_heads(rng, n)))
    return out


def write_corpus(directory, pairs, stem="toy"):
    """Write .src/.tgt/.conllu for (words, heads) pairs; returns the prefix."""
    prefix = str(directory / stem)
    with open(prefix + ".src", "w", encoding="utf-8") as src, open(
        prefix + ".tgt", "w", encoding="utf-8"
    ) as tgt, open(prefix + ".conllu", "w", encoding="utf-8") as conllu:
        for words, heads in pairs:
            src.write(" ".join(words) + "\n")
            tgt.write(" ".join(reversed(words)) + "\n")
            conllu.write(render_block(words, heads) + "\n\n")
    return prefix


@pytest.fixture
def golden_corpus(tmp_path):
    """Single-sentence corpus holding the worked example."""
    return write_corpus(tmp_path, [(list(GOLDEN_WORDS), list(GOLDEN_HEADS))], stem="golden")


@pytest.fixture(scope="session")
def toy_corpus_1k(tmp_path_factory):
    """1000-sentence corpus shared by the determinism and CLI tests."""
    rng = random.Random(20240811)
    pairs = make_corpus(rng, 1000)
    return write_corpus(tmp_path_factory.mktemp("toy1k"), pairs)
