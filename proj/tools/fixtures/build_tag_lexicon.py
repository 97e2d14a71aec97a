#!/usr/bin/env python3
"""Compile data/tag_lexicon.tsv from Brill's most-frequent-tag lexicon.

Usage: build_tag_lexicon.py <en-lexicon.txt> <out.tsv>

The input is the lexicon distributed with Brill's rule based tagger v1.14
(trained on the Brown corpus and Penn Treebank), one "word TAG" pair per line.
"""
import sys

from coarse_tags import coarse


def main():
    src, dst = sys.argv[1], sys.argv[2]
    rows = []
    seen = set()
    with open(src, encoding="utf-8") as f:
        for line in f:
            if line.startswith(";;;"):
                continue
            parts = line.split()
            if len(parts) != 2:
                continue
            word, tag = parts
            c = coarse(tag)
            if c is None or word in seen or "\t" in word:
                continue
            seen.add(word)
            rows.append((word, c))
    rows.sort()
    with open(dst, "w", encoding="utf-8", newline="\n") as f:
        for word, c in rows:
            f.write(f"{word}\t{c}\n")
    print(f"{len(rows)} entries", file=sys.stderr)


if __name__ == "__main__":
    main()
