#!/usr/bin/env python3
"""Generate a synthetic parallel corpus with dependency parses.

Writes PREFIX.src, PREFIX.tgt and PREFIX.conllu: random-attachment
trees over a Zipf-sampled vocabulary, the "target" side being a
deterministic transform of the source so alignment is easy to eyeball.
Useful for benchmarks and determinism checks.
"""

import argparse
import os
import random


def zipf_vocab(size):
    return [f"w{i}" for i in range(size)]


def sample_sentence(rng, vocab, weights, min_len, max_len):
    n = rng.randint(min_len, max_len)
    words = rng.choices(vocab, weights=weights, k=n)
    # random attachment: token i hangs off a uniformly chosen earlier token
    heads = [0] + [rng.randint(1, i) for i in range(1, n)]
    return words, heads


def conllu_block(words, heads):
    rows = []
    for i, (word, head) in enumerate(zip(words, heads), start=1):
        rows.append(f"{i}\t{word}\t_\t_\t_\t_\t{head}\tdep\t_\t_")
    return "\n".join(rows)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sentences", type=int, default=1000)
    parser.add_argument("--vocab-size", type=int, default=2000)
    parser.add_argument("--min-len", type=int, default=3)
    parser.add_argument("--max-len", type=int, default=30)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-prefix", required=True)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    vocab = zipf_vocab(args.vocab_size)
    weights = [1.0 / rank for rank in range(1, args.vocab_size + 1)]

    out_dir = os.path.dirname(args.out_prefix)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    src_path = args.out_prefix + ".src"
    tgt_path = args.out_prefix + ".tgt"
    conllu_path = args.out_prefix + ".conllu"
    tokens = 0
    with open(src_path, "w", encoding="utf-8") as src, open(
        tgt_path, "w", encoding="utf-8"
    ) as tgt, open(conllu_path, "w", encoding="utf-8") as conllu:
        for ordinal in range(args.sentences):
            words, heads = sample_sentence(rng, vocab, weights, args.min_len, args.max_len)
            tokens += len(words)
            src.write(" ".join(words) + "\n")
            tgt.write(" ".join(reversed(words)) + "\n")
            conllu.write(f"# sent_id = {ordinal}\n")
            conllu.write(conllu_block(words, heads) + "\n\n")
    print(f"wrote {args.sentences} sentences, {tokens} tokens to {args.out_prefix}.*")


if __name__ == "__main__":
    main()
