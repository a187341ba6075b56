#!/usr/bin/env python3
"""Writes data/got-mini: a small Game of Thrones style graph.

Counts that tests depend on:
  * Joffrey Baratheon is linked to 21 battles: 16 with attacker_size < 10000
    and 5 with attacker_size >= 10000.
  * House Stark is linked to 9 of those 16 small battles and, among the large
    ones, only to the Battle of the Green Fork.
  * Joffrey has no Person neighbors, so filtering House, Book and Set leaves
    only battles around him.
"""

import json
import pathlib
import sys

OUT = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parents[2] / "data" / "got-mini"

SCHEMA = {
    "nodeTypes": [
        {"name": "Person", "icon": "user", "attributes": [
            {"name": "gender", "kind": "nominal", "categories": ["female", "male"]},
            {"name": "popularity", "kind": "numeric", "min": 0, "max": 1},
            {"name": "status", "kind": "nominal", "categories": ["alive", "dead"]},
        ]},
        {"name": "House", "icon": "rebel", "attributes": [
            {"name": "region", "kind": "nominal",
             "categories": ["The North", "The Westerlands", "The Crownlands", "The Riverlands",
                            "The Stormlands", "The Reach", "Iron Islands"]},
        ]},
        {"name": "Battle", "icon": "crosshairs", "attributes": [
            {"name": "attacker_size", "kind": "numeric", "min": 0},
            {"name": "year", "kind": "numeric", "min": 297, "max": 301},
            {"name": "battle_type", "kind": "nominal", "categories": ["ambush", "pitched battle", "razing", "siege"]},
            {"name": "outcome", "kind": "nominal", "categories": ["win", "loss"]},
            {"name": "region", "kind": "nominal",
             "categories": ["The North", "The Westerlands", "The Crownlands", "The Riverlands",
                            "The Stormlands", "The Reach", "Iron Islands"]},
        ]},
        {"name": "Book", "icon": "book", "attributes": [
            {"name": "number", "kind": "ordinal", "categories": ["1", "2", "3", "4", "5"]},
        ]},
        {"name": "Set", "icon": "users", "attributes": []},
    ],
    "edgeTypes": ["attacker", "defender", "commander", "member", "appears", "belongs"],
}

PEOPLE = [
    ("eddard-stark", "Eddard Stark", "male", 0.92, "dead", "house-stark"),
    ("robb-stark", "Robb Stark", "male", 0.81, "dead", "house-stark"),
    ("catelyn-stark", "Catelyn Stark", "female", 0.74, "dead", "house-stark"),
    ("sansa-stark", "Sansa Stark", "female", 0.77, "alive", "house-stark"),
    ("arya-stark", "Arya Stark", "female", 0.88, "alive", "house-stark"),
    ("jon-snow", "Jon Snow", "male", 0.95, "alive", "house-stark"),
    ("joffrey-baratheon", "Joffrey Baratheon", "male", 0.83, "dead", "house-baratheon"),
    ("stannis-baratheon", "Stannis Baratheon", "male", 0.66, "alive", "house-baratheon"),
    ("renly-baratheon", "Renly Baratheon", "male", 0.45, "dead", "house-baratheon"),
    ("tywin-lannister", "Tywin Lannister", "male", 0.70, "dead", "house-lannister"),
    ("jaime-lannister", "Jaime Lannister", "male", 0.86, "alive", "house-lannister"),
    ("cersei-lannister", "Cersei Lannister", "female", 0.84, "alive", "house-lannister"),
    ("tyrion-lannister", "Tyrion Lannister", "male", 0.97, "alive", "house-lannister"),
    ("gregor-clegane", "Gregor Clegane", "male", 0.40, "dead", "house-lannister"),
    ("edmure-tully", "Edmure Tully", "male", 0.30, "alive", "house-tully"),
    ("brynden-tully", "Brynden Tully", "male", 0.35, "alive", "house-tully"),
    ("theon-greyjoy", "Theon Greyjoy", "male", 0.62, "alive", "house-greyjoy"),
    ("roose-bolton", "Roose Bolton", "male", 0.50, "dead", "house-bolton"),
    ("walder-frey", "Walder Frey", "male", 0.38, "dead", "house-frey"),
]

HOUSES = [
    ("house-stark", "House Stark", "The North"),
    ("house-lannister", "House Lannister", "The Westerlands"),
    ("house-baratheon", "House Baratheon", "The Stormlands"),
    ("house-tully", "House Tully", "The Riverlands"),
    ("house-greyjoy", "House Greyjoy", "Iron Islands"),
    ("house-bolton", "House Bolton", "The North"),
    ("house-frey", "House Frey", "The Riverlands"),
    ("house-tyrell", "House Tyrell", "The Reach"),
]

# (id, label, attacker_size, year, type, outcome, region, joffrey, stark)
BATTLES = [
    # Joffrey, small, with House Stark (9)
    ("b-mummers-ford", "Battle at the Mummer's Ford", 120, 298, "ambush", "win", "The Riverlands", True, True),
    ("b-whispering-wood", "Battle of the Whispering Wood", 6000, 298, "ambush", "loss", "The Riverlands", True, True),
    ("b-camps", "Battle of the Camps", 6000, 298, "ambush", "loss", "The Riverlands", True, True),
    ("b-oxcross", "Battle of Oxcross", 6000, 299, "ambush", "loss", "The Westerlands", True, True),
    ("b-darry", "Sack of Darry", 500, 298, "pitched battle", "win", "The Riverlands", True, True),
    ("b-fords", "Battle of the Fords", 5000, 299, "pitched battle", "loss", "The Riverlands", True, True),
    ("b-red-wedding", "The Red Wedding", 3500, 299, "ambush", "win", "The Riverlands", True, True),
    ("b-duskendale", "Battle of Duskendale", 3000, 299, "pitched battle", "win", "The Crownlands", True, True),
    ("b-ruby-ford", "Battle of the Ruby Ford", 2400, 299, "pitched battle", "win", "The Riverlands", True, True),
    # Joffrey, small, without House Stark (7)
    ("b-golden-tooth", "Battle of the Golden Tooth", 7500, 298, "pitched battle", "win", "The Westerlands", True, False),
    ("b-sack-harrenhal", "Sack of Harrenhal", 100, 299, "ambush", "win", "The Riverlands", True, False),
    ("b-raventree", "Siege of Raventree", 1500, 300, "siege", "win", "The Riverlands", True, False),
    ("b-seagard", "Siege of Seagard", 2000, 299, "siege", "win", "The Riverlands", True, False),
    ("b-saltpans", "Sack of Saltpans", 300, 300, "razing", "win", "The Riverlands", True, False),
    ("b-burning-septry", "Battle of the Burning Septry", 800, 299, "pitched battle", "win", "The Riverlands", True, False),
    ("b-darry-siege", "Siege of Darry", 1200, 300, "siege", "win", "The Riverlands", True, False),
    # Joffrey, large (5); only the Green Fork involves House Stark
    ("b-green-fork", "Battle of the Green Fork", 18000, 298, "pitched battle", "loss", "The Riverlands", True, True),
    ("b-riverrun", "Battle of Riverrun", 15000, 298, "pitched battle", "win", "The Riverlands", True, False),
    ("b-blackwater", "Battle of the Blackwater", 21000, 299, "pitched battle", "loss", "The Crownlands", True, False),
    ("b-siege-riverrun", "Siege of Riverrun", 13000, 300, "siege", "win", "The Riverlands", True, False),
    ("b-dragonstone", "Siege of Dragonstone", 10000, 300, "siege", "win", "The Stormlands", True, False),
    # not involving Joffrey
    ("b-moat-cailin", "Battle of Moat Cailin", 1000, 299, "pitched battle", "win", "The North", False, True),
    ("b-deepwood", "Battle of Deepwood Motte", 1000, 299, "siege", "win", "The North", False, True),
    ("b-winterfell-sack", "Sack of Winterfell", 618, 299, "ambush", "win", "The North", False, True),
    ("b-storms-end", "Siege of Storm's End", 5000, 299, "siege", "win", "The Stormlands", False, False),
    ("b-castle-black", "Battle of Castle Black", 100000, 300, "siege", "loss", "The North", False, False),
    ("b-shield-islands", "Battle of the Shield Islands", 2000, 300, "pitched battle", "win", "The Reach", False, False),
]

BOOKS = [("book-1", "A Game of Thrones", "1"), ("book-2", "A Clash of Kings", "2"),
         ("book-3", "A Storm of Swords", "3"), ("book-4", "A Feast for Crows", "4"),
         ("book-5", "A Dance with Dragons", "5")]

SETS = [("set-nobles", "Nobles")]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    nodes, edges = [], []

    def edge(source, target, kind, directed=False):
        edges.append({"id": f"e{len(edges) + 1}", "source": source, "target": target, "type": kind,
                      "directed": directed})

    for pid, label, gender, popularity, status, _ in PEOPLE:
        nodes.append({"id": pid, "type": "Person", "label": label,
                      "attributes": {"gender": gender, "popularity": popularity, "status": status}})
    for hid, label, region in HOUSES:
        nodes.append({"id": hid, "type": "House", "label": label, "attributes": {"region": region}})
    for bid, label, size, year, kind, outcome, region, _, _ in BATTLES:
        nodes.append({"id": bid, "type": "Battle", "label": label,
                      "attributes": {"attacker_size": size, "year": year, "battle_type": kind,
                                     "outcome": outcome, "region": region}})
    for bid, label, number in BOOKS:
        nodes.append({"id": bid, "type": "Book", "label": label, "attributes": {"number": number}})
    for sid, label in SETS:
        nodes.append({"id": sid, "type": "Set", "label": label, "attributes": {}})

    # people: house membership, books, nobility
    for index, (pid, _, _, _, _, house) in enumerate(PEOPLE):
        edge(pid, house, "member", True)
        for book in BOOKS[: 3 + index % 3]:
            edge(pid, book[0], "appears", True)
        if house in ("house-stark", "house-lannister", "house-baratheon"):
            edge(pid, "set-nobles", "belongs", True)
    for hid, _, _ in HOUSES:
        edge(hid, "set-nobles", "belongs", True)

    # family and rivalry ties between people (none touch Joffrey)
    for a, b in [("eddard-stark", "robb-stark"), ("eddard-stark", "catelyn-stark"), ("eddard-stark", "sansa-stark"),
                 ("eddard-stark", "arya-stark"), ("eddard-stark", "jon-snow"), ("catelyn-stark", "robb-stark"),
                 ("tywin-lannister", "jaime-lannister"), ("tywin-lannister", "cersei-lannister"),
                 ("tywin-lannister", "tyrion-lannister"), ("catelyn-stark", "edmure-tully"),
                 ("edmure-tully", "brynden-tully"), ("stannis-baratheon", "renly-baratheon")]:
        edge(a, b, "member")

    other_houses = ["house-lannister", "house-tully", "house-frey", "house-bolton", "house-greyjoy", "house-tyrell"]
    commanders = {"b-mummers-ford": ["robb-stark", "gregor-clegane"], "b-green-fork": ["roose-bolton", "tywin-lannister"],
                  "b-whispering-wood": ["robb-stark", "jaime-lannister"], "b-red-wedding": ["walder-frey", "roose-bolton"],
                  "b-blackwater": ["stannis-baratheon", "tyrion-lannister"], "b-deepwood": ["theon-greyjoy"],
                  "b-winterfell-sack": ["theon-greyjoy"], "b-castle-black": ["jon-snow"],
                  "b-storms-end": ["stannis-baratheon"], "b-riverrun": ["jaime-lannister", "edmure-tully"],
                  "b-siege-riverrun": ["jaime-lannister", "brynden-tully"], "b-fords": ["edmure-tully", "tywin-lannister"]}
    for index, (bid, _, _, _, _, _, _, joffrey, stark) in enumerate(BATTLES):
        if joffrey:
            edge("joffrey-baratheon", bid, "attacker", True)
        if stark:
            edge("house-stark", bid, "attacker" if index % 2 else "defender", True)
        edge(other_houses[index % len(other_houses)], bid, "defender" if index % 2 else "attacker", True)
        for person in commanders.get(bid, []):
            edge(person, bid, "commander", True)
        edge(bid, BOOKS[1 + index % 4][0], "appears", True)

    with open(OUT / "schema.json", "w") as f:
        json.dump(SCHEMA, f, indent=2)
        f.write("\n")
    with open(OUT / "nodes.jsonl", "w") as f:
        for node in nodes:
            f.write(json.dumps(node) + "\n")
    with open(OUT / "edges.jsonl", "w") as f:
        for e in edges:
            f.write(json.dumps(e) + "\n")


if __name__ == "__main__":
    main()
