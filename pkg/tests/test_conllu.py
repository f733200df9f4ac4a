"""CoNLL-U reading and depth computation, checked against a BFS oracle."""

import io
import random
from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from synaug.conllu import (
    ConlluFormatError,
    ParsedSentence,
    Token,
    TreeError,
    compute_depths,
    iter_parse_results,
    parse_conllu,
)

from conftest import GOLDEN_DEPTHS, GOLDEN_HEADS, GOLDEN_WORDS, random_tree_heads, render_block


def bfs_depths(heads):
    """Independent oracle: breadth-first walk from the root, depth 1 there."""
    n = len(heads)
    children = {i: [] for i in range(n + 1)}
    for i, head in enumerate(heads, start=1):
        children[head].append(i)
    depths = [0] * n
    queue = deque((child, 1) for child in children[0])
    while queue:
        node, depth = queue.popleft()
        depths[node - 1] = depth
        for child in children[node]:
            queue.append((child, depth + 1))
    return depths


def tokens_from_heads(heads, words=None):
    if words is None:
        words = [f"t{i}" for i in range(1, len(heads) + 1)]
    return [Token(index=i, surface=w, head=h) for i, (w, h) in enumerate(zip(words, heads), 1)]


def test_golden_depths():
    depths = compute_depths(tokens_from_heads(GOLDEN_HEADS, GOLDEN_WORDS))
    assert depths == list(GOLDEN_DEPTHS)
    assert depths == bfs_depths(GOLDEN_HEADS)


def test_single_token_root():
    assert compute_depths(tokens_from_heads([0])) == [1]


def test_chain_depths():
    heads = [0, 1, 2, 3, 4]
    assert compute_depths(tokens_from_heads(heads)) == [1, 2, 3, 4, 5]


def test_depths_match_bfs_oracle_on_random_trees():
    rng = random.Random(11)
    for _ in range(500):
        heads = random_tree_heads(rng, rng.randint(1, 64))
        assert compute_depths(tokens_from_heads(heads)) == bfs_depths(heads)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_depths_match_bfs_oracle_property(data):
    n = data.draw(st.integers(min_value=1, max_value=64))
    heads = [0] + [data.draw(st.integers(min_value=1, max_value=i)) for i in range(1, n)]
    depths = compute_depths(tokens_from_heads(heads))
    assert depths == bfs_depths(heads)
    assert depths[heads.index(0)] == 1
    for i, head in enumerate(heads):
        if head != 0:
            assert depths[i] == depths[head - 1] + 1


def test_cycle_rejected():
    with pytest.raises(TreeError):
        compute_depths(tokens_from_heads([2, 1]))
    with pytest.raises(TreeError):
        ParsedSentence.from_tokens(tokens_from_heads([0, 3, 4, 2]))


def test_self_head_rejected():
    with pytest.raises(TreeError):
        ParsedSentence.from_tokens(tokens_from_heads([0, 2]))


def test_zero_roots_rejected():
    with pytest.raises(TreeError):
        ParsedSentence.from_tokens(tokens_from_heads([2, 1]))


def test_multiple_roots_rejected():
    with pytest.raises(TreeError):
        ParsedSentence.from_tokens(tokens_from_heads([0, 0, 1]))


def test_head_out_of_range_rejected():
    with pytest.raises(TreeError):
        ParsedSentence.from_tokens(tokens_from_heads([0, 9]))


def _parse_one(text):
    sentences = list(parse_conllu(io.StringIO(text)))
    assert len(sentences) == 1
    return sentences[0]


def test_parse_golden_block():
    sentence = _parse_one(render_block(GOLDEN_WORDS, GOLDEN_HEADS) + "\n\n")
    assert sentence.surfaces == GOLDEN_WORDS
    assert list(sentence.depths) == list(GOLDEN_DEPTHS)
    assert len(sentence) == 8


def test_comments_and_trailing_blank_lines():
    text = "# sent_id = 1\n# text = hi there\n" + render_block(["hi", "there"], [0, 1]) + "\n\n\n"
    sentence = _parse_one(text)
    assert sentence.surfaces == ("hi", "there")


def test_multiword_token_ranges_skipped():
    text = (
        "1\tvamos\t_\t_\t_\t_\t0\troot\t_\t_\n"
        "2-3\tal\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "2\ta\t_\t_\t_\t_\t1\tcase\t_\t_\n"
        "3\tel\t_\t_\t_\t_\t1\tdet\t_\t_\n\n"
    )
    sentence = _parse_one(text)
    assert sentence.surfaces == ("vamos", "a", "el")


def test_empty_nodes_skipped():
    text = (
        "1\tSue\t_\t_\t_\t_\t0\troot\t_\t_\n"
        "1.1\tlikes\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "2\tcoffee\t_\t_\t_\t_\t1\tobj\t_\t_\n\n"
    )
    sentence = _parse_one(text)
    assert sentence.surfaces == ("Sue", "coffee")


def test_crlf_lines_accepted():
    text = render_block(["a", "b"], [0, 1]).replace("\n", "\r\n") + "\r\n\r\n"
    sentence = _parse_one(text)
    assert sentence.surfaces == ("a", "b")


def test_final_block_without_trailing_blank_line():
    sentence = _parse_one(render_block(["a"], [0]))
    assert sentence.surfaces == ("a",)


def test_wrong_column_count_rejected():
    with pytest.raises(ConlluFormatError) as exc:
        _parse_one("1\ta\t_\t_\t_\t_\t0\troot\t_\n\n")
    assert "line 1" in str(exc.value)


def test_non_integer_id_rejected():
    with pytest.raises(ConlluFormatError):
        _parse_one("x\ta\t_\t_\t_\t_\t0\troot\t_\t_\n\n")


def test_non_integer_head_rejected():
    with pytest.raises(ConlluFormatError):
        _parse_one("1\ta\t_\t_\t_\t_\tz\troot\t_\t_\n\n")


def test_non_consecutive_ids_rejected():
    text = "1\ta\t_\t_\t_\t_\t0\troot\t_\t_\n3\tb\t_\t_\t_\t_\t1\tdep\t_\t_\n\n"
    with pytest.raises(ConlluFormatError):
        _parse_one(text)


def test_parse_conllu_raise_names_sentence_ordinal():
    good = render_block(["a", "b"], [0, 1])
    cyclic = render_block(["c", "d"], [2, 1])
    with pytest.raises(TreeError) as exc:
        list(parse_conllu(io.StringIO(good + "\n\n" + cyclic + "\n\n")))
    assert "sentence 1" in str(exc.value)


def test_parse_conllu_skip_keeps_good_sentences():
    good = render_block(["a", "b"], [0, 1])
    cyclic = render_block(["c", "d"], [2, 1])
    also_good = render_block(["e"], [0])
    stream = io.StringIO(good + "\n\n" + cyclic + "\n\n" + also_good + "\n\n")
    sentences = list(parse_conllu(stream, on_tree_error="skip"))
    assert [s.surfaces for s in sentences] == [("a", "b"), ("e",)]


def test_iter_parse_results_yields_errors_in_place():
    good = render_block(["a", "b"], [0, 1])
    cyclic = render_block(["c", "d"], [2, 1])
    stream = io.StringIO(good + "\n\n" + cyclic + "\n\n" + good + "\n\n")
    results = list(iter_parse_results(stream))
    assert isinstance(results[0], ParsedSentence)
    assert isinstance(results[1], TreeError)
    assert isinstance(results[2], ParsedSentence)


def test_round_trip_random_trees():
    rng = random.Random(23)
    for _ in range(100):
        n = rng.randint(1, 40)
        heads = random_tree_heads(rng, n)
        words = [f"v{rng.randint(0, 99)}" for _ in range(n)]
        sentence = _parse_one(render_block(words, heads) + "\n\n")
        assert sentence.surfaces == tuple(words)
        assert [t.head for t in sentence.tokens] == heads
        assert list(sentence.depths) == bfs_depths(heads)
