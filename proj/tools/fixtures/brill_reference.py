"""Reference tagger for the golden POS file.

A straight port of the lexicon + lexical-rule + contextual-rule passes of
Brill's transformation-based tagger, driven by the Brill v1.14 rule files
(Brown + Penn Treebank) as distributed with the `pattern` library:
en-lexicon.txt, en-morphology.txt and en-context.txt.

usage: brill_reference.py RULE_DIR < tokens.tsv > tagged.tsv
  input: one sentence per line, tokens separated by tabs
  output: token<TAB>COARSE per line, blank line between sentences
"""
import re
import sys
from pathlib import Path

from coarse_tags import coarse

CD = re.compile(r"^[0-9\-\,\.\:\/\%\$]+$")

MORPH_CMDS = {"word", "char", "haspref", "hassuf", "addpref", "addsuf",
              "deletepref", "deletesuf", "goodleft", "goodright"}
MORPH_CMDS |= {"f" + c for c in MORPH_CMDS}


def read_rules(path):
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith(";;;"):
            yield line


def load_lexicon(path):
    lex = {}
    for line in read_rules(path):
        parts = line.split(" ")[:2]
        if len(parts) == 2:
            lex[parts[0]] = parts[1]
    return lex


def apply_morphology(rules, known, token, prev, nxt):
    w = token[0]
    f = x = pos = cmd = None
    for r in rules:
        if r[1] in MORPH_CMDS:
            f, x, pos, cmd = False, r[0], r[-2], r[1].lower()
        if r[2] in MORPH_CMDS:
            f, x, pos, cmd = True, r[1], r[-2], r[2].lower().lstrip("f")
        if f and token[1] != r[0]:
            continue
        if ((cmd == "word" and x == w)
                or (cmd == "char" and x in w)
                or (cmd == "haspref" and w.startswith(x))
                or (cmd == "hassuf" and w.endswith(x))
                or (cmd == "addpref" and x + w in known)
                or (cmd == "addsuf" and w + x in known)
                or (cmd == "deletepref" and w.startswith(x) and w[len(x):] in known)
                or (cmd == "deletesuf" and w.endswith(x) and w[:-len(x)] in known)
                or (cmd == "goodleft" and x == nxt[0])
                or (cmd == "goodright" and x == prev[0])):
            token[1] = pos
    return token


def apply_context(rules, tokens):
    o = [("STAART", "STAART")] * 3
    t = o + tokens + o
    for i, token in enumerate(t):
        for r in rules:
            if token[1] == "STAART":
                continue
            if token[1] != r[0] and r[0] != "*":
                continue
            cmd, x, y = r[2].lower(), r[3], r[4] if len(r) > 4 else ""
            if ((cmd == "prevtag" and x == t[i - 1][1])
                    or (cmd == "nexttag" and x == t[i + 1][1])
                    or (cmd == "prev2tag" and x == t[i - 2][1])
                    or (cmd == "next2tag" and x == t[i + 2][1])
                    or (cmd == "prev1or2tag" and x in (t[i - 1][1], t[i - 2][1]))
                    or (cmd == "next1or2tag" and x in (t[i + 1][1], t[i + 2][1]))
                    or (cmd == "prev1or2or3tag" and x in (t[i - 1][1], t[i - 2][1], t[i - 3][1]))
                    or (cmd == "next1or2or3tag" and x in (t[i + 1][1], t[i + 2][1], t[i + 3][1]))
                    or (cmd == "surroundtag" and x == t[i - 1][1] and y == t[i + 1][1])
                    or (cmd == "curwd" and x == t[i][0])
                    or (cmd == "prevwd" and x == t[i - 1][0])
                    or (cmd == "nextwd" and x == t[i + 1][0])
                    or (cmd == "prev1or2wd" and x in (t[i - 1][0], t[i - 2][0]))
                    or (cmd == "next1or2wd" and x in (t[i + 1][0], t[i + 2][0]))
                    or (cmd == "prevwdtag" and x == t[i - 1][0] and y == t[i - 1][1])
                    or (cmd == "nextwdtag" and x == t[i + 1][0] and y == t[i + 1][1])
                    or (cmd == "wdprevtag" and x == t[i - 1][1] and y == t[i][0])
                    or (cmd == "wdnexttag" and x == t[i][0] and y == t[i + 1][1])
                    or (cmd == "wdand2aft" and x == t[i][0] and y == t[i + 2][0])
                    or (cmd == "wdand2tagbfr" and x == t[i - 2][1] and y == t[i][0])
                    or (cmd == "wdand2tagaft" and x == t[i][0] and y == t[i + 2][1])
                    or (cmd == "lbigram" and x == t[i - 1][0] and y == t[i][0])
                    or (cmd == "rbigram" and x == t[i][0] and y == t[i + 1][0])
                    or (cmd == "prevbigram" and x == t[i - 2][1] and y == t[i - 1][1])
                    or (cmd == "nextbigram" and x == t[i + 1][1] and y == t[i + 2][1])):
                t[i] = [t[i][0], r[1]]
    return t[len(o):-len(o)]


def find_tags(tokens, lexicon, morphology, context):
    tagged = [[tok, lexicon.get(tok, i == 0 and lexicon.get(tok.lower()) or None)]
              for i, tok in enumerate(tokens)]
    for i, (tok, tag) in enumerate(tagged):
        prev = tagged[i - 1] if i > 0 else (None, None)
        nxt = tagged[i + 1] if i < len(tagged) - 1 else (None, None)
        if tag is None:
            if tok.istitle():
                tagged[i] = [tok, "NNP"]
            elif CD.match(tok):
                tagged[i] = [tok, "CD"]
            else:
                tagged[i] = apply_morphology(morphology, lexicon, [tok, "NN"], prev, nxt)
    return apply_context(context, tagged)


def main():
    rule_dir = Path(sys.argv[1])
    lexicon = load_lexicon(rule_dir / "en-lexicon.txt")
    morphology = [r.split() for r in read_rules(rule_dir / "en-morphology.txt")]
    context = [r.split() for r in read_rules(rule_dir / "en-context.txt")]
    out = []
    for line in sys.stdin:
        tokens = [t for t in line.rstrip("\n").split("\t") if t]
        if not tokens:
            continue
        for tok, tag in find_tags(tokens, lexicon, morphology, context):
            c = coarse(tag)
            if c is None:
                c = "PUNCT" if not any(ch.isalnum() for ch in tok) else "OTHER"
            out.append(f"{tok}\t{c}")
        out.append("")
    sys.stdout.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
