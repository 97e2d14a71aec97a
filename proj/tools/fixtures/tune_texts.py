"""Writes article texts into the wiki models and the toy embedding table.

usage: tune_texts.py FIXTURES_DIR STOPWORDS

Reads FIXTURES_DIR/wiki/{railway,transportation}.json (from
make_wiki_model.py) and FIXTURES_DIR/rs/*.txt, and writes
  embeddings/toy.vec                 shared vector table
  wiki/<domain>.json                 models with "text" filled in
  expected/<domain>_eval.json        relatedness computed here with numpy

Texts are bags of domain words rendered as sentences, diluted with
off-topic words until each article's similarity to the domain's test
documents reaches a drawn target. The dilution targets are shifted until
the pooled statistics match the domain's goals. The numbers in expected/
come from this script's own tokenizer and cosine, reading back the
rounded vectors from toy.vec.
"""
import json
import re
import sys
from pathlib import Path

import numpy as np

DIM = 48
COMMON, NOISE = 0.5, 0.4

RAIL = ("rail:14 railway:11 track:11 train:12 railroad:9 locomotive:5 wagon:4 signal:5 station:5 line:5 "
        "brake:3 balise:2 axle:2 sleeper:2 gauge:3 platform:3 freight:4 passenger:4 carriage:3 junction:2 "
        "tunnel:2 viaduct:1 coupler:1 bogie:1 interlocking:2 points:2 electrification:2 catenary:1 "
        "depot:2 timetable:2 signalling:3 shunting:1 siding:1 tram:1 metro:1 ballast:1 switch:1 "
        "rolling:1 stock:1 cab:2 driver:2 speed:2 network:2 operator:1 service:2")
ROAD = ("traffic:14 road:13 street:10 lane:9 vehicle:7 highway:6 motorway:3 bridge:5 intersection:4 "
        "junction:2 signal:3 pedestrian:3 car:4 bus:3 truck:2 driver:3 congestion:3 route:3 parking:2 "
        "sign:3 detector:2 toll:1 roundabout:2 carriageway:1 pavement:2 kerb:1 crossing:2 avenue:1 "
        "boulevard:1 bypass:1 interchange:1 commuter:1 transit:2 freight:1 cycle:1 speed:2 accident:2 "
        "incident:2 corridor:1 network:2 capacity:1 travel:2 journey:1")
OFF = ("statistics:3 interval:3 estimate:3 sample:3 probability:3 variance:2 distribution:3 theorem:2 "
       "parameter:2 hypothesis:2 robot:2 navigation:2 wave:2 antenna:2 echo:1 pulse:2 frequency:2 "
       "physics:2 mathematics:2 population:2 regression:1 bayesian:1 likelihood:1 album:2 song:2 "
       "novel:2 painter:1 church:2 village:2 football:2 season:2 election:2 party:2 river:2 species:2 "
       "genus:1 castle:1 poet:1 film:2 actor:1 medieval:1 monarch:1 island:1 mountain:1 tribe:1")

DOMAINS = {
    "railway": {
        "pool": RAIL, "tests": ["rs2_radio_system.txt", "rs3_radio_functions.txt"],
        "seed_rs": "rs1_train_control.txt",
        "min_title": "Confidence interval", "max_title": "Radio Block Centre",
        "goal": {"min": 0.27, "avg": 0.94, "max": 0.98},
    },
    "transportation": {
        "pool": ROAD, "tests": ["rs5_bridge_management.txt", "rs6_transport_information.txt"],
        "seed_rs": "rs4_traffic_management.txt",
        "min_title": "Emergency vehicle", "max_title": "Traffic management centre",
        "goal": {"min": 0.67, "avg": 0.95, "max": 0.99},
    },
}
RAIL_RS = ["rs1_train_control.txt", "rs2_radio_system.txt", "rs3_radio_functions.txt"]
ROAD_RS = ["rs4_traffic_management.txt", "rs5_bridge_management.txt", "rs6_transport_information.txt"]
FILLERS = ["the", "of", "and", "in", "to", "a", "with", "for", "on", "by", "is", "are", "was", "from"]
TOKEN = re.compile(r"[A-Za-z0-9]+(?:[-._][A-Za-z0-9]+)*")


def parse_pool(spec):
    words, weights = [], []
    for item in spec.split():
        w, n = item.split(":")
        words.append(w)
        weights.append(float(n))
    weights = np.array(weights)
    return words, weights / weights.sum()


def tokens(text, stop):
    out = []
    for m in TOKEN.finditer(text):
        t = m.group(0).lower()
        if t not in stop:
            out.append(t)
    return out


def build_embedding(rs_dir, stop, rng):
    basis, _ = np.linalg.qr(rng.standard_normal((DIM, 6)))
    e_common, e_rail, e_road, e_gen, e_off, e_off2 = basis.T
    vocab = {}

    def put(word, topic):
        if word not in vocab:
            vocab[word] = COMMON * e_common + topic + NOISE * rng.standard_normal(DIM) / np.sqrt(DIM)

    for w in parse_pool(RAIL)[0]:
        put(w, 0.6 * e_rail + 0.6 * e_gen)
    for w in parse_pool(ROAD)[0]:
        put(w, 0.6 * e_road + 0.6 * e_gen)
    for i, w in enumerate(parse_pool(OFF)[0]):
        put(w, e_off if i % 2 == 0 else 0.7 * e_off + 0.7 * e_off2)

    rail_words = {t for f in RAIL_RS for t in tokens((rs_dir / f).read_text(encoding="utf-8"), stop)}
    road_words = {t for f in ROAD_RS for t in tokens((rs_dir / f).read_text(encoding="utf-8"), stop)}
    for i, w in enumerate(sorted(rail_words | road_words)):
        if i % 13 == 5:
            continue  # leave a few test words without a vector
        if w in rail_words and w in road_words:
            put(w, e_gen)
        elif w in rail_words:
            put(w, 0.6 * e_rail + 0.6 * e_gen)
        else:
            put(w, 0.6 * e_road + 0.6 * e_gen)
    return vocab


def write_vec(path, vocab):
    lines = [f"{len(vocab)} {DIM}"]
    for w in sorted(vocab):
        lines.append(w + " " + " ".join(f"{x:.6f}" for x in vocab[w]))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_vec(path):
    table = {}
    for i, line in enumerate(path.read_text(encoding="utf-8").splitlines()):
        f = line.split()
        if i == 0 and len(f) == 2:
            continue
        table.setdefault(f[0].lower(), np.array([float(x) for x in f[1:]]))
    return table


class Bag:
    """Running sum over in-vocabulary tokens."""

    def __init__(self, table):
        self.table = table
        self.sum = np.zeros(DIM)
        self.n = 0

    def add(self, word):
        v = self.table.get(word)
        if v is not None:
            self.sum += v
            self.n += 1

    def vector(self):
        return self.sum / self.n if self.n else self.sum


def cos(u, v):
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        return 0.0
    return float(np.clip(u @ v / (nu * nv), -1.0, 1.0))


def embed(text, table, stop):
    bag = Bag(table)
    toks = tokens(text, stop)
    for t in toks:
        bag.add(t)
    oov = sum(1 for t in toks if t not in table)
    return bag.vector(), len(toks), oov


def render(words, rng):
    out, sentence = [], []
    for w in words:
        sentence.append(w)
        if rng.random() < 0.45:
            sentence.append(FILLERS[rng.integers(len(FILLERS))])
        if len(sentence) >= rng.integers(8, 16):
            out.append(sentence)
            sentence = []
    if sentence:
        out.append(sentence)
    paras, para = [], []
    for s in out:
        if s[-1] in FILLERS:
            s = s[:-1]
        para.append((s[0].capitalize() + " " + " ".join(s[1:])).strip() + ".")
        if len(para) >= rng.integers(3, 7):
            paras.append(" ".join(para))
            para = []
    if para:
        paras.append(" ".join(para))
    return "\n\n".join(paras) + "\n"


def make_article(on_words, off_stream, test_vecs, table, score_ok):
    """Appends off-topic words to on_words until score_ok(scores) holds."""
    bag = Bag(table)
    for w in on_words:
        bag.add(w)
    added = []
    while True:
        v = bag.vector()
        scores = [cos(t, v) for t in test_vecs]
        if score_ok(scores) or len(added) >= 4999:
            return added, scores
        w = next(off_stream)
        added.append(w)
        bag.add(w)


def tune_domain(name, model, rs_dir, table, stop, seed):
    cfg = DOMAINS[name]
    goal = cfg["goal"]
    test_texts = [(rs_dir / f).read_text(encoding="utf-8") for f in cfg["tests"]]
    test_vecs = [embed(t, table, stop)[0] for t in test_texts]
    test_bag = [t for text in test_texts for t in tokens(text, stop) if t in table and t != "shall"]
    pool_words, pool_p = parse_pool(cfg["pool"])
    off_words, off_p = parse_pool(OFF)

    pages = {p["id"]: p for p in model["pages"]}
    ids = model["meta"]["expected"]["depth1_ids"]
    by_title = {p["title"]: p for p in model["pages"]}
    off_cats = set(model["meta"]["off_domain_categories"])
    content_ids = [i for i in ids if not pages[i].get("redirect")]
    min_id = by_title[cfg["min_title"]]["id"]
    max_id = by_title[cfg["max_title"]]["id"]

    def build(shift):
        texts, scores = {}, {}
        for pid in content_ids:
            rng = np.random.default_rng([seed, pid])
            off_stream = iter(rng.choice(off_words, size=5000, p=off_p))
            n = int(rng.integers(45, 260))
            n_pool = int(n * 0.65)
            on = list(rng.choice(pool_words, size=n_pool, p=pool_p)) + \
                list(rng.choice(test_bag, size=n - n_pool))
            spread = 0.09 if any(c in off_cats for c in pages[pid]["categories"]) else 0.03
            drop = float(rng.exponential(spread))
            target = max(goal["min"] + 0.08, goal["max"] - shift * drop)
            if pid == max_id:
                on = list(rng.choice(test_bag, size=n))
                target = goal["max"]
            if pid == min_id:
                on = list(rng.choice(pool_words, size=120, p=pool_p))
                extra, sc = make_article(on, off_stream, test_vecs, table, lambda s: min(s) <= goal["min"])
            else:
                extra, sc = make_article(
                    on, off_stream, test_vecs, table,
                    lambda s, t=target: max(s) <= goal["max"] and sum(s) / len(s) <= t)
            words = on + extra
            rng.shuffle(words)
            texts[pid] = render(words, rng)
            scores[pid] = sc
        return texts, scores

    def pooled(scores):
        flat = [s for pid in ids for s in scores[redirect_target(pid)]]
        return min(flat), sum(flat) / len(flat), max(flat)

    def redirect_target(pid):
        r = pages[pid].get("redirect")
        return by_title[r]["id"] if r else pid

    lo, hi = 0.0, 6.0
    for _ in range(30):
        mid = (lo + hi) / 2
        texts, scores = build(mid)
        _, avg, _ = pooled(scores)
        if avg > goal["avg"]:
            lo = mid
        else:
            hi = mid
    texts, scores = build((lo + hi) / 2)
    for pid, text in texts.items():
        pages[pid]["text"] = text
    return test_texts


def oracle(test_files, model, rs_dir, table, stop):
    pages = {p["id"]: p for p in model["pages"]}
    by_title = {p["title"]: p for p in model["pages"]}
    ids = model["meta"]["expected"]["depth1_ids"]

    def text_of(pid):
        r = pages[pid].get("redirect")
        return by_title[r]["text"] if r else pages[pid]["text"]

    docs = {pid: embed(text_of(pid), table, stop)[0] for pid in ids}
    tests, flat, tok_total, oov_total = [], [], 0, 0
    for f in test_files:
        tv, ntok, noov = embed((rs_dir / f).read_text(encoding="utf-8"), table, stop)
        per = [{"page_id": pid, "score": cos(tv, docs[pid])} for pid in ids]
        s = [x["score"] for x in per]
        flat += s
        tok_total += ntok
        oov_total += noov
        tests.append({"name": f, "min": min(s), "avg": sum(s) / len(s), "max": max(s),
                      "oov_rate": noov / ntok, "test_tokens": ntok, "per_article": per})
    return {"min": min(flat), "avg": sum(flat) / len(flat), "max": max(flat),
            "oov_rate": oov_total / tok_total, "pairs": len(flat), "tests": tests}


def main():
    root, stop_path = Path(sys.argv[1]), Path(sys.argv[2])
    stop = set(stop_path.read_text(encoding="utf-8").split())
    rs_dir = root / "rs"
    vec_path = root / "embeddings" / "toy.vec"
    write_vec(vec_path, build_embedding(rs_dir, stop, np.random.default_rng(7)))
    table = read_vec(vec_path)
    for i, name in enumerate(DOMAINS):
        path = root / "wiki" / f"{name}.json"
        model = json.loads(path.read_text(encoding="utf-8"))
        tune_domain(name, model, rs_dir, table, stop, seed=100 + i)
        path.write_text(json.dumps(model, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
        result = oracle(DOMAINS[name]["tests"], model, rs_dir, table, stop)
        out = root / "expected" / f"{name}_eval.json"
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(result, indent=1) + "\n", encoding="utf-8")
        seed = oracle([DOMAINS[name]["seed_rs"]], model, rs_dir, table, stop)
        (root / "expected" / f"{name}_seed_eval.json").write_text(json.dumps(seed, indent=1) + "\n",
                                                                  encoding="utf-8")
        print(f"{name} vs seed RS: min={seed['min']:.4f} avg={seed['avg']:.4f} max={seed['max']:.4f}")
        print(f"{name}: min={result['min']:.4f} avg={result['avg']:.4f} max={result['max']:.4f} "
              f"oov={result['oov_rate']:.4f} pairs={result['pairs']}")


if __name__ == "__main__":
    main()
