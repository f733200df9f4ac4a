#!/usr/bin/env python3
"""Print the per-token selection table for sentences in a CoNLL-U file.

For each token: depth, depth score q, softmax weight p and the
length-compensated selection probability p_final. Handy for sanity
checking a parse before augmenting with it.
"""

import argparse
import sys

from synaug.conllu import parse_conllu
from synaug.selection import depth_score, length_scale, normalize


def print_table(sentence, alpha, index):
    depths = sentence.depths
    q = depth_score(depths)
    p = normalize(q)
    p_final, clipped = length_scale(p, alpha)
    print(f"# sentence {index}  (n={len(sentence)}, alpha={alpha}, clipped={clipped})")
    print(f"{'token':<20} {'depth':>5} {'q':>8} {'p':>8} {'p_final':>8}")
    for token, d, qi, pi, fi in zip(sentence.tokens, depths, q, p, p_final):
        print(f"{token.surface:<20} {d:>5} {qi:>8.4f} {pi:>8.4f} {fi:>8.4f}")
    print()


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("conllu", help="CoNLL-U parse file")
    parser.add_argument("--alpha", type=float, default=0.1)
    parser.add_argument("--limit", type=int, default=5, help="sentences to show")
    args = parser.parse_args()

    with open(args.conllu, encoding="utf-8") as handle:
        for index, sentence in enumerate(parse_conllu(handle)):
            if index >= args.limit:
                break
            print_table(sentence, args.alpha, index)


if __name__ == "__main__":
    sys.exit(main())
