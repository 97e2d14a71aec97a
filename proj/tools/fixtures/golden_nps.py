"""Golden noun-phrase list for the reference-tagged sentences.

Chunk grammar  DET? (ADJ|NOUN|PROPN|NUM)* (NOUN|PROPN), maximal matches,
scanned left to right. Leading determiners and stopwords and trailing
stopwords are stripped; the normalized form is the lowercased modifiers
followed by the head's base form (WordNet morphy: exception list, then
detachment rules, then the form itself; first candidate indexed under the
part of speech wins).

usage: golden_nps.py TAGGED_TSV STOPWORDS WORDNET_DIR > nps.tsv
output: sentence<TAB>first_token<TAB>surface<TAB>normalized
"""
import re
import sys
from pathlib import Path

from wordnet_subset import POS_FILES, RULES, read_exc, read_index

CODE = {"DET": "D", "ADJ": "A", "NOUN": "N", "PROPN": "P", "NUM": "M"}
GRAMMAR = re.compile(r"D?[ANPM]*[NP]")
WN_POS = {"NOUN": "n", "VERB": "v", "ADJ": "a", "ADV": "r"}


class Morphy:
    def __init__(self, wn_dir):
        self.index = {p: set(read_index(wn_dir / f"index.{n}")[1]) for p, n in POS_FILES.items()}
        self.exc = {p: {k: v.split()[1:] for k, v in read_exc(wn_dir / f"{n}.exc").items()}
                    for p, n in POS_FILES.items()}

    def __call__(self, form, p):
        form = form.lower().replace(" ", "_")
        if form in self.exc[p]:
            return self.exc[p][form][0].replace("_", " ")
        for old, new in RULES[p]:
            if form.endswith(old) and len(form) > len(old):
                cand = form[: len(form) - len(old)] + new
                if cand in self.index[p]:
                    return cand
        return form if form in self.index[p] else None


def sentences(path):
    cur = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line:
            if cur:
                yield cur
            cur = []
        else:
            tok, tag = line.split("\t")
            cur.append((tok, tag))
    if cur:
        yield cur


def main():
    tagged, stop_path, wn_dir = sys.argv[1], sys.argv[2], Path(sys.argv[3])
    stop = {w.strip().lower() for w in Path(stop_path).read_text().splitlines() if w.strip()}
    morphy = Morphy(wn_dir)

    def lemma(tok, tag):
        base = morphy(tok, WN_POS[tag]) if tag in WN_POS else None
        return base if base is not None else tok.lower()

    for s_idx, sent in enumerate(sentences(tagged)):
        codes = "".join(CODE.get(tag, "x") for _, tag in sent)
        for m in GRAMMAR.finditer(codes):
            a, b = m.start(), m.end() - 1
            while a <= b and (sent[a][0].lower() in stop or sent[a][1] == "DET"):
                a += 1
            while b >= a and sent[b][0].lower() in stop:
                b -= 1
            if a > b:
                continue
            words = [t for t, _ in sent[a:b + 1]]
            head_tok, head_tag = sent[b]
            head = lemma(head_tok, head_tag) if head_tag in ("NOUN", "PROPN") else head_tok.lower()
            normalized = " ".join([w.lower() for w in words[:-1]] + [head])
            print(f"{s_idx}\t{a}\t{' '.join(words)}\t{normalized}")


if __name__ == "__main__":
    main()
