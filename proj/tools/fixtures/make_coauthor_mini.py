#!/usr/bin/env python3
"""Writes data/coauthor-mini: a bipartite author/paper graph (CHI and TVCG).

Counts that tests depend on:
  * TreePlus (TVCG) has 7 authors.
  * Catherine Plaisant and Ben Bederson have 29 papers each, Bongshin Lee 28.
  * Plaisant shares 14 papers with Ben Shneiderman (38 CHI + 8 TVCG in all)
    and all 4 of Taowei David Wang's papers; every other co-author shares at
    most 3.
  * Jean-Daniel Fekete, Petra Isenberg, Nathalie Henry Riche and Heidi Lam
    have more than 15 citations and share 1 or 2 papers with Plaisant; every
    other Plaisant co-author except Shneiderman has at most 15.
  * Bederson's only TVCG paper is TreePlus.
  * Niklas Elmqvist reaches NodeTrix by exactly two shortest paths of length 3,
    both through Melange: one via Henry Riche, one via Fekete.
"""

import itertools
import json
import pathlib
import random
import sys

OUT = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parents[2] / "data" / "coauthor-mini"

SCHEMA = {
    "nodeTypes": [
        {"name": "Author", "icon": "street-view", "attributes": [
            {"name": "citations", "kind": "numeric", "min": 0},
        ]},
        {"name": "Paper", "icon": "file", "attributes": [
            {"name": "venue", "kind": "nominal", "categories": ["CHI", "TVCG"]},
            {"name": "year", "kind": "numeric", "min": 1990, "max": 2017},
            {"name": "citations", "kind": "numeric", "min": 0},
            {"name": "keywords", "kind": "set"},
        ]},
    ],
    "edgeTypes": ["authored"],
}

# id -> (label, citations)
AUTHORS = {
    "plaisant": ("Catherine Plaisant", 48),
    "bederson": ("Ben Bederson", 15),
    "blee": ("Bongshin Lee", 11),
    "parr": ("Cynthia Sims Parr", 3),
    "veksler": ("Vladislav D. Veksler", 2),
    "gray": ("Wayne D. Gray", 9),
    "kotfila": ("Christopher Kotfila", 1),
    "shneiderman": ("Ben Shneiderman", 130),
    "wang": ("Taowei David Wang", 12),
    "fekete": ("Jean-Daniel Fekete", 64),
    "isenberg": ("Petra Isenberg", 41),
    "henry": ("Nathalie Henry Riche", 47),
    "lam": ("Heidi Lam", 26),
    "elmqvist": ("Niklas Elmqvist", 38),
    "mcguffin": ("Michael J. McGuffin", 22),
    "carpendale": ("Sheelagh Carpendale", 55),
    "heer": ("Jeffrey Heer", 90),
    "munzner": ("Tamara Munzner", 70),
    "chen": ("Haiyan Chen", 4),
    "kumar": ("Hari Kumar", 6),
    "rose": ("Anne Rose", 8),
    "druin": ("Allison Druin", 14),
    "hutchinson": ("Hilary Hutchinson", 7),
    "czerwinski": ("Mary Czerwinski", 28),
    "robertson": ("George Robertson", 33),
    "fisher": ("Danyel Fisher", 18),
    "smith": ("Marc A. Smith", 10),
    "dunne": ("Cody Dunne", 13),
    "fails": ("Jerry Alan Fails", 5),
    "kang": ("Hyunmo Kang", 6),
}

TOPICS = ["trees", "networks", "evaluation", "interaction", "temporal", "text", "children", "zooming", "matrices"]


class Builder:
    def __init__(self):
        self.papers = []
        self.rng = random.Random(20180901)

    def paper(self, pid, title, venue, year, authors):
        assert len(set(authors)) == len(authors), pid
        keywords = sorted(self.rng.sample(TOPICS, 2))
        self.papers.append({"id": pid, "title": title, "venue": venue, "year": year,
                            "citations": self.rng.randint(0, 40), "keywords": keywords, "authors": authors})

    def count(self, author, venue=None):
        return sum(1 for p in self.papers if author in p["authors"] and (venue is None or p["venue"] == venue))


def build():
    b = Builder()
    b.paper("treeplus", "TreePlus: Interactive Exploration of Networks with Enhanced Tree Layouts", "TVCG", 2006,
            ["blee", "parr", "plaisant", "bederson", "veksler", "gray", "kotfila"])
    b.paper("nodetrix", "NodeTrix: a Hybrid Visualization of Social Networks", "TVCG", 2007,
            ["henry", "fekete", "mcguffin"])
    b.paper("melange", "Melange: Space Folding for Multi-Focus Interaction", "CHI", 2008,
            ["elmqvist", "henry", "fekete"])

    # Plaisant with Shneiderman: 14 (10 CHI, 4 TVCG)
    for i in range(14):
        venue = "TVCG" if i >= 10 else "CHI"
        year = 2008 + (i - 10) * 2 if venue == "TVCG" else 1992 + i
        b.paper(f"ps-{i + 1:02d}", f"Shared Study {i + 1}", venue, year, ["plaisant", "shneiderman"])
    # Plaisant with Wang: all 4 of Wang's papers
    for i in range(4):
        b.paper(f"pw-{i + 1}", f"Temporal Summaries {i + 1}", "TVCG" if i == 3 else "CHI", 2008 + i,
                ["plaisant", "wang"])
    # prolific co-authors, 1 or 2 papers each
    b.paper("pf-1", "Network Exploration Toolkit", "TVCG", 2012, ["plaisant", "fekete"])
    b.paper("pi-1", "Collaborative Sensemaking", "CHI", 2011, ["plaisant", "isenberg"])
    b.paper("pi-2", "Empirical Studies in Visualization", "TVCG", 2013, ["plaisant", "isenberg", "lam"])
    b.paper("ph-1", "Visualizing Graph Motifs", "CHI", 2013, ["plaisant", "henry", "dunne"])
    b.paper("pl-1", "Seven Scenarios", "CHI", 2012, ["plaisant", "lam"])
    # Bederson: 2 more with Plaisant (3 shared in total)
    b.paper("pb-1", "Searching for Children's Books", "CHI", 2001, ["plaisant", "bederson", "druin"])
    b.paper("pb-2", "Zoomable Interfaces for Kids", "CHI", 2003, ["plaisant", "bederson", "hutchinson"])
    # fill Plaisant to 29 with low-citation co-authors
    fillers = ["rose", "kumar", "chen", "kang", "fails", "dunne"]
    i = 0
    while b.count("plaisant") < 29:
        venue = "TVCG" if b.count("plaisant", "TVCG") < 8 and i % 3 == 2 else "CHI"
        b.paper(f"pp-{i + 1:02d}", f"Interface Study {i + 1}", venue, 1993 + i, ["plaisant", fillers[i % len(fillers)]])
        i += 1

    # Shneiderman to 38 CHI + 8 TVCG, without Plaisant
    i = 0
    while b.count("shneiderman", "CHI") < 38:
        b.paper(f"sc-{i + 1:02d}", f"Direct Manipulation {i + 1}", "CHI", 1990 + i % 27,
                ["shneiderman", ["kang", "chen", "fails", "kumar"][i % 4]])
        i += 1
    i = 0
    while b.count("shneiderman", "TVCG") < 8:
        b.paper(f"st-{i + 1:02d}", f"Visual Analytics {i + 1}", "TVCG", 2007 + i, ["shneiderman", "dunne"])
        i += 1

    # Bederson to 29, all CHI apart from TreePlus
    i = 0
    while b.count("bederson") < 29:
        b.paper(f"bc-{i + 1:02d}", f"Zooming Interfaces {i + 1}", "CHI", 1994 + i % 20,
                ["bederson", ["druin", "hutchinson", "fails", "kumar"][i % 4]])
        i += 1

    # Bongshin Lee to 28, spread over both venues
    i = 0
    while b.count("blee") < 28:
        venue = "TVCG" if i % 3 == 0 else "CHI"
        b.paper(f"lc-{i + 1:02d}", f"Interaction Techniques {i + 1}", venue, 2004 + i % 13,
                ["blee", ["czerwinski", "robertson", "fisher", "smith"][i % 4]])
        i += 1

    # a handful of papers for the remaining authors; none pair Elmqvist with
    # Henry Riche, Fekete or McGuffin, so Melange stays the only bridge
    b.paper("x-01", "Hierarchical Aggregation", "TVCG", 2010, ["elmqvist", "carpendale"])
    b.paper("x-02", "ZAME: Zoomable Adjacency Matrices", "TVCG", 2008, ["elmqvist", "munzner"])
    b.paper("x-03", "Prefuse", "CHI", 2005, ["heer", "carpendale"])
    b.paper("x-04", "Multiscale Visualization", "TVCG", 2009, ["munzner", "heer"])
    b.paper("x-05", "Matrix Explorer", "TVCG", 2006, ["henry", "fekete"])
    b.paper("x-06", "Tabletop Collaboration", "CHI", 2009, ["isenberg", "carpendale"])
    b.paper("x-07", "Node-Link Readability", "CHI", 2010, ["mcguffin", "isenberg"])
    b.paper("x-08", "Information Visualization Evaluation", "TVCG", 2011, ["lam", "carpendale", "munzner"])
    b.paper("x-09", "Gray Matters", "CHI", 2005, ["gray", "veksler"])
    b.paper("x-10", "Species Pages", "CHI", 2004, ["parr", "kotfila"])
    return b


def main():
    b = build()
    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "schema.json", "w") as f:
        json.dump(SCHEMA, f, indent=2)
        f.write("\n")
    with open(OUT / "nodes.jsonl", "w") as f:
        for aid, (label, citations) in AUTHORS.items():
            f.write(json.dumps({"id": aid, "type": "Author", "label": label,
                                "attributes": {"citations": citations}}) + "\n")
        for p in b.papers:
            f.write(json.dumps({"id": p["id"], "type": "Paper", "label": p["title"],
                                "attributes": {"venue": p["venue"], "year": p["year"],
                                               "citations": p["citations"], "keywords": p["keywords"]}}) + "\n")
    counter = itertools.count(1)
    with open(OUT / "edges.jsonl", "w") as f:
        for p in b.papers:
            for a in p["authors"]:
                f.write(json.dumps({"id": f"a{next(counter)}", "source": a, "target": p["id"],
                                    "type": "authored", "directed": True}) + "\n")


if __name__ == "__main__":
    main()
