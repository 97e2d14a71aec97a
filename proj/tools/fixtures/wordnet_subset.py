"""Copies a slice of a WordNet 3.0 dict directory.

usage: wordnet_subset.py SRC_DIR OUT_DIR (--lemmas FILE | --forms FILE)

--lemmas: keep exactly these lemmas (one per line, "pos<TAB>lemma" with pos
          in n/v/a/r, or a bare lemma for every part of speech it has).
--forms:  keep every lemma that the morphy search could consult for these
          surface forms, plus their exception-list rows.

The Princeton license header of each index file is carried over.
"""
import argparse
from pathlib import Path

POS_FILES = {"n": "noun", "v": "verb", "a": "adj", "r": "adv"}
RULES = {
    "n": [("s", ""), ("ses", "s"), ("ves", "f"), ("xes", "x"), ("zes", "z"),
          ("ches", "ch"), ("shes", "sh"), ("men", "man"), ("ies", "y")],
    "v": [("s", ""), ("ies", "y"), ("es", "e"), ("es", ""), ("ed", "e"),
          ("ed", ""), ("ing", "e"), ("ing", "")],
    "a": [("er", ""), ("est", ""), ("er", "e"), ("est", "e")],
    "r": [],
}


def read_index(path):
    header, rows = [], {}
    for line in path.read_text(encoding="latin-1").splitlines(keepends=True):
        if line.startswith(" "):
            header.append(line)
        else:
            rows[line.split(" ", 1)[0]] = line
    return header, rows


def read_exc(path):
    rows = {}
    for line in path.read_text(encoding="latin-1").splitlines(keepends=True):
        rows.setdefault(line.split(" ", 1)[0], line)
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("src", type=Path)
    ap.add_argument("out", type=Path)
    g = ap.add_mutually_exclusive_group(required=True)
    g.add_argument("--lemmas", type=Path)
    g.add_argument("--forms", type=Path)
    ap.add_argument("--exc", type=Path, help="extra exception rows to keep (pos<TAB>form)")
    args = ap.parse_args()

    index = {p: read_index(args.src / f"index.{name}") for p, name in POS_FILES.items()}
    exc = {p: read_exc(args.src / f"{name}.exc") for p, name in POS_FILES.items()}
    keep = {p: set() for p in POS_FILES}
    keep_exc = {p: set() for p in POS_FILES}

    if args.lemmas:
        for line in args.lemmas.read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            pos, _, lemma = line.partition("\t") if "\t" in line else ("", "", line)
            lemma = lemma.replace(" ", "_")
            for p in ([pos] if pos else POS_FILES):
                if lemma in index[p][1]:
                    keep[p].add(lemma)
                elif pos:
                    raise SystemExit(f"{lemma} is not a {POS_FILES[p]} lemma")
    else:
        forms = {f.strip().lower() for f in args.forms.read_text().split() if f.strip()}
        for form in forms:
            for p in POS_FILES:
                candidates = [form]
                if form in exc[p]:
                    keep_exc[p].add(form)
                    candidates += exc[p][form].split()[1:]
                candidates += [form[: len(form) - len(old)] + new
                               for old, new in RULES[p] if form.endswith(old) and len(form) > len(old)]
                keep[p].update(c for c in candidates if c in index[p][1])

    if args.exc:
        for line in args.exc.read_text().splitlines():
            if line.strip():
                p, form = line.split("\t")
                keep_exc[p].add(form)

    args.out.mkdir(parents=True, exist_ok=True)
    for p, name in POS_FILES.items():
        header, rows = index[p]
        body = "".join(rows[l] for l in sorted(keep[p]))
        (args.out / f"index.{name}").write_text("".join(header) + body, encoding="latin-1")
        exc_rows = "".join(exc[p][f] for f in sorted(keep_exc[p]))
        (args.out / f"{name}.exc").write_text(exc_rows, encoding="latin-1")
    total = sum(len(k) for k in keep.values())
    print(f"{total} index rows, {sum(len(k) for k in keep_exc.values())} exception rows")


if __name__ == "__main__":
    main()
