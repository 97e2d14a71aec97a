"""Builds the synthetic wiki graphs the crawler fixtures are recorded from.

usage: make_wiki_model.py DOMAIN KEYWORDS_TSV OUT_JSON

DOMAIN is "railway" or "transportation". KEYWORDS_TSV is the keyword table
the tool extracts from the domain's seed document; every keyword gets a
canned search answer, and the seed plan below decides which of them find
an article. Article texts are left empty here (see tune_texts.py).

The script also runs its own breadth-first expansion over the graph and
stores the expected seed and article counts under "meta"; those numbers
are what the recorded fixtures are checked against.
"""
import json
import random
import sys
from pathlib import Path

HIDDEN = ["Category:Articles with short description", "Category:Use British English from March 2019"]

RAILWAY = {
    "seeds": [
        # keyword(s), title, categories
        (["rail transport"], "Rail transport", ["Rail transport"]),
        (["radio block centre"], "Radio Block Centre", ["European Train Control System", "Railway signalling"]),
        (["movement authority", "new movement authority"], "Movement authority", ["European Train Control System"]),
        (["driver machine interface"], "Driver Machine Interface", ["European Train Control System", "Train protection systems"]),
        (["emergency brake", "emergency brake command"], "Emergency brake (train)", ["Railway brakes"]),
        (["service brake"], "Railway air brake", ["Railway brakes", "Brakes"]),
        (["balise group", "linked balise group"], "Balise", ["Railway signalling", "Train protection systems"]),
        (["juridical recorder"], "Juridical Recording Unit", ["Event data recorders"]),
        (["axle counters"], "Axle counter", ["Railway signalling", "Train detection"]),
        (["train integrity"], "Train protection system", ["Train protection systems"]),
        (["track description"], "Railway track", ["Railway track", "Rail infrastructure"]),
        (["confidence interval"], "Confidence interval", ["Statistical intervals", "Estimation theory"]),
        (["odometry function"], "Odometry", ["Robot navigation", "Railway signalling stubs"]),
        (["radar sensor"], "Doppler radar", ["Radar"]),
        (["level transition"], "Level crossing", ["Level crossings"]),
    ],
    # category -> (pages, subcategories); the last entry absorbs the remainder
    "categories": {
        "Rail transport": (22, 31),
        "European Train Control System": (38, 3),
        "Railway signalling": (118, 6),
        "Train protection systems": (44, 3),
        "Railway brakes": (33, 2),
        "Brakes": (26, 2),
        "Event data recorders": (17, 1),
        "Train detection": (24, 2),
        "Railway track": (86, 5),
        "Rail infrastructure": (64, 6),
        "Statistical intervals": (9, 1),
        "Estimation theory": (11, 2),
        "Robot navigation": (10, 1),
        "Radar": (29, 4),
        "Level crossings": (None, 3),
    },
    "missing_categories": ["Railway signalling stubs"],
    "named_pages": {"Rail transport": ["Bi-directional vehicle", "Pocket wagon"]},
    "named_subcats": {"Rail transport": ["Locomotives", "Rail infrastructure", "Electric rail transport"]},
    "cycles": [("Rail infrastructure", "Rail transport"), ("Railway track", "Rail infrastructure")],
    "redirects": [("Westinghouse brake", "Railway air brake", "Railway brakes")],
    "target_articles": 686,
    "off_domain": ["Statistical intervals", "Estimation theory", "Robot navigation", "Brakes", "Radar"],
    "title_words": {
        "place": ["Ashby", "Bramley", "Corwen", "Dunmore", "Elsworth", "Farleigh", "Glenrock", "Harwick",
                  "Ivybridge", "Kelso", "Langford", "Merriton", "Northam", "Oakhurst", "Penrose", "Quarley",
                  "Redhill", "Stanlow", "Thornbury", "Upton", "Valemont", "Westerby", "Yarnfield", "Zell"],
        "templates": ["{p} railway station", "{p}–{q} line", "{p} Junction", "{p} Viaduct", "{p} Tunnel",
                      "{p} signal box", "{p} Light Railway", "{p} marshalling yard", "Class {n} locomotive",
                      "{p} coupler", "{p} bogie", "{p} tramway", "{p} goods yard", "{p} railway works",
                      "{p} branch", "{p} loop"],
    },
}

TRANSPORTATION = {
    "seeds": [
        (["traffic management centre", "neighbouring traffic management centres"], "Traffic management centre", ["Road traffic management"]),
        (["variable message signs"], "Variable message sign", ["Road signs", "Intelligent transportation systems"]),
        (["road segment"], "Road", ["Roads"]),
        (["signal timing plan", "signal timing plans"], "Traffic signal timing", ["Road traffic management", "Traffic signals"]),
        (["traffic conditions", "current traffic conditions"], "Traffic congestion", ["Road traffic management", "Traffic flow"]),
        (["travel time"], "Travel time", ["Traffic flow"]),
        (["traveller information website"], "Advanced traveller information system", ["Intelligent transportation systems"]),
        (["loop detectors"], "Induction loop detector", ["Traffic sensors"]),
        (["ramp meters"], "Ramp meter", ["Road traffic management", "Motorway infrastructure"]),
        (["lane closures"], "Lane", ["Road infrastructure"]),
        (["emergency vehicle"], "Emergency vehicle", ["Emergency vehicles"]),
        (["incident management"], "Traffic incident management", ["Road traffic management"]),
    ],
    "categories": {
        "Road traffic management": (64, 6),
        "Road signs": (48, 4),
        "Intelligent transportation systems": (52, 4),
        "Roads": (70, 8),
        "Traffic signals": (30, 2),
        "Traffic flow": (26, 2),
        "Traffic sensors": (14, 1),
        "Motorway infrastructure": (36, 3),
        "Road infrastructure": (58, 5),
        "Emergency vehicles": (None, 3),
    },
    "missing_categories": [],
    "named_pages": {},
    "named_subcats": {},
    "cycles": [("Road infrastructure", "Roads"), ("Roads", "Road infrastructure")],
    "redirects": [],
    "target_articles": 412,
    "off_domain": ["Emergency vehicles"],
    "title_words": {
        "place": ["Avonmore", "Belgrave", "Carrow", "Denholm", "Eastfield", "Fenwick", "Granton", "Hollins",
                  "Inchmore", "Kirkby", "Lindow", "Moreton", "Newbold", "Ormskirk", "Pelham", "Rushden",
                  "Selwood", "Tarrant", "Ulverston", "Wexcombe"],
        "templates": ["{p} Road", "{p} Street", "{p} Avenue", "{p} Bypass", "{p} interchange", "{p} roundabout",
                      "{p} Bridge", "{p} toll plaza", "{p} ring road", "{p} Boulevard", "Route {n} ({p})",
                      "{p} Lane", "{p} crossing", "{p} Expressway", "{p} parkway"],
    },
}

DOMAINS = {"railway": RAILWAY, "transportation": TRANSPORTATION}


def words(s):
    out, cur = [], []
    for ch in s.lower():
        if ch.isalnum():
            cur.append(ch)
        elif cur:
            out.append("".join(cur))
            cur = []
    if cur:
        out.append("".join(cur))
    return out


def stems(s):
    return {w[:-1] if w.endswith("s") and len(w) > 3 else w for w in words(s)}


class Builder:
    def __init__(self, spec, keywords, rng):
        self.spec, self.keywords, self.rng = spec, keywords, rng
        self.pages = []
        self.by_title = {}
        self.next_id = {0: 10_001, 14: 90_001}
        self.banned = set()
        for k in keywords:
            self.banned |= stems(k)
        self.used_titles = set()

    def add(self, title, ns=0, **extra):
        if title in self.by_title:
            return self.by_title[title]
        pid = self.next_id[ns]
        self.next_id[ns] += self.rng.randint(1, 37)
        page = {"id": pid, "ns": ns, "title": title, "text": "", "categories": []}
        page.update(extra)
        self.pages.append(page)
        self.by_title[title] = page
        return page

    def cat(self, name, **extra):
        return self.add("Category:" + name, ns=14, **extra)

    def fresh_title(self):
        tw = self.spec["title_words"]
        for _ in range(10_000):
            tpl = self.rng.choice(tw["templates"])
            p, q = self.rng.sample(tw["place"], 2)
            title = tpl.format(p=p, q=q, n=self.rng.randint(2, 999))
            if self.rng.random() < 0.3:
                title = f"{title} ({self.rng.choice(tw['place'])})"
            if title in self.by_title or stems(title) & self.banned:
                continue
            return title
        raise RuntimeError("title space exhausted")


def build(domain, keywords, seed=20220901):
    spec = DOMAINS[domain]
    rng = random.Random(seed)
    b = Builder(spec, keywords, rng)

    for h in HIDDEN:
        b.cat(h[len("Category:"):], hidden=True)

    seed_pages = []
    for kws, title, cats in spec["seeds"]:
        page = b.add(title)
        page["categories"] = ["Category:" + c for c in cats] + HIDDEN[: rng.randint(1, 2)]
        seed_pages.append(page)

    # categories and their direct pages
    for name, (n_pages, n_sub) in spec["categories"].items():
        b.cat(name)
    for name in spec["missing_categories"]:
        pass  # referenced by a seed, never created

    members = {name: set() for name in spec["categories"]}
    for page in seed_pages:
        for c in page["categories"]:
            c = c[len("Category:"):]
            if c in members:
                members[c].add(page["title"])
    for name, titles in spec["named_pages"].items():
        for t in titles:
            b.add(t)
            members[name].add(t)

    def crawl_set():
        found = {p["title"] for p in seed_pages}
        for name in spec["categories"]:
            if any("Category:" + name in p["categories"] for p in seed_pages):
                found |= members[name]
        return found

    # fill categories; a slice of pages is shared with an earlier category
    filled = []
    last = list(spec["categories"])[-1]
    for name, (n_pages, _) in spec["categories"].items():
        if name == last:
            continue
        while len(members[name]) < n_pages:
            if filled and rng.random() < 0.12:
                other = rng.choice(filled)
                candidates = sorted(members[other] - members[name])
                if candidates:
                    members[name].add(rng.choice(candidates))
                    continue
            members[name].add(b.add(b.fresh_title())["title"])
        filled.append(name)
    while len(crawl_set()) < spec["target_articles"] - len(spec["redirects"]):
        members[last].add(b.add(b.fresh_title())["title"])

    for src, target, cat in spec["redirects"]:
        b.add(src, redirect=target)
        members[cat].add(src)

    for name, titles in members.items():
        for t in titles:
            p = b.by_title[t]
            if "Category:" + name not in p["categories"]:
                p["categories"].append("Category:" + name)

    # hidden categories collect lots of unrelated pages too
    extras = [b.add(b.fresh_title()) for _ in range(120)]
    for p in extras:
        p["categories"].append(HIDDEN[0])

    # subcategories with their own pages (reached from depth 2 on)
    for name, (_, n_sub) in spec["categories"].items():
        named = spec["named_subcats"].get(name, [])
        subs = list(named)
        while len(subs) < n_sub:
            subs.append(f"{name} {len(subs) + 1:02d}" if rng.random() < 0.5 else
                        f"{rng.choice(spec['title_words']['place'])} {name.lower()}")
        for s in subs:
            sub = b.cat(s)
            sub["categories"].append("Category:" + name)
            if s in spec["categories"]:
                continue
            for _ in range(rng.randint(3, 9)):
                pg = b.add(b.fresh_title())
                pg["categories"].append("Category:" + s)
    for child, parent in spec["cycles"]:
        c = b.by_title["Category:" + child]
        if "Category:" + parent not in c["categories"]:
            c["categories"].append("Category:" + parent)

    # canned search answers
    search = {}
    seed_by_kw = {}
    for kws, title, _ in spec["seeds"]:
        for k in kws:
            seed_by_kw[k] = b.by_title[title]
    disamb = b.add("Group (disambiguation)", disambiguation=True)
    others = [p for p in b.pages if p["ns"] == 0 and not p.get("redirect") and p["title"] not in seed_by_kw]
    for k in keywords:
        if k in seed_by_kw:
            pre = [p for p in rng.sample(others, rng.randint(0, 2)) if not stems(p["title"]) & stems(k)]
            hits = pre + [seed_by_kw[k]]
            if "group" in words(k):
                hits = [disamb] + hits
        elif rng.random() < 0.4:
            hits = []
        else:
            hits = [p for p in rng.sample(others, rng.randint(1, 4)) if not stems(p["title"]) & stems(k)]
        hits += [p for p in rng.sample(others, rng.randint(0, 3)) if not stems(p["title"]) & stems(k)]
        seen, ids = set(), []
        for p in hits:
            if p["id"] not in seen:
                seen.add(p["id"])
                ids.append(p["id"])
        search[k] = ids[:10]

    expected = simulate(b.pages, keywords, search, seed_by_kw)
    meta = {
        "domain": domain,
        "expected": expected,
        "off_domain_categories": ["Category:" + c for c in spec["off_domain"]],
    }
    pages = sorted(b.pages, key=lambda p: p["id"])
    return {"meta": meta, "pages": pages, "search": search}


def simulate(pages, keywords, search, seed_by_kw):
    """Independent depth-0/1/2 expansion over the model."""
    by_id = {p["id"]: p for p in pages}
    by_title = {p["title"]: p for p in pages}
    seeds = sorted({seed_by_kw[k]["id"] for k in keywords if k in seed_by_kw})

    def visible_cats(p):
        out = []
        for c in p["categories"]:
            cp = by_title.get(c)
            if cp is not None and not cp.get("hidden"):
                out.append(cp["title"])
        return out

    def members(cat):
        return [p for p in pages if cat in p["categories"]]

    result = {"seed_articles": len(seeds),
              "matched_keywords": sum(1 for k in keywords if k in seed_by_kw)}
    for depth in (0, 1, 2):
        found = set(seeds)
        frontier = []
        visited = set()
        for s in seeds:
            for c in visible_cats(by_id[s]):
                if c not in visited:
                    visited.add(c)
                    frontier.append(c)
        for level in range(depth):
            nxt = []
            for c in frontier:
                for m in members(c):
                    if m["ns"] == 0:
                        found.add(m["id"])
                    elif m["ns"] == 14 and level + 1 < depth and m["title"] not in visited:
                        visited.add(m["title"])
                        nxt.append(m["title"])
            frontier = nxt
        result[f"articles_depth{depth}"] = len(found)
        if depth == 1:
            result["depth1_ids"] = sorted(found)
    return result


def main():
    domain, kw_path, out = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    keywords = [line.split("\t")[0] for line in kw_path.read_text(encoding="utf-8").splitlines() if line]
    model = build(domain, keywords)
    e = model["meta"]["expected"]
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(model, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"{domain}: {len(model['pages'])} pages, {e['matched_keywords']} matched keywords, "
          f"{e['seed_articles']} seed articles, depth0={e['articles_depth0']} "
          f"depth1={e['articles_depth1']} depth2={e['articles_depth2']}")


if __name__ == "__main__":
    main()
