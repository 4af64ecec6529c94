#!/usr/bin/env python3
"""Regenerate the demo corpus, gazetteer, vocabulary, and service config."""

from __future__ import annotations

import json
import random
from pathlib import Path

HERE = Path(__file__).parent

PERSONS = [
    "Anna Weber", "Jonas Koch", "Clara Fischer", "David Richter", "Miriam Wolf",
    "Felix Krause", "Lena Neumann", "Paul Lang", "Sofia Busch", "Max Hoffmann",
    "Ines Brandt", "Tomas Vogel", "Greta Simon", "Oskar Frank", "Marta Seidel",
    "Ruth Albrecht", "Nils Winter", "Eva Sommer", "Jan Peters", "Ida Kraft",
]

SUBJECTS = [
    "internet", "digital divide", "social capital", "civil society", "migration",
    "labor market", "education policy", "gender equality", "urbanization",
    "media literacy", "volunteering", "party systems", "social inequality",
    "climate policy", "health care", "youth culture", "religion", "trade unions",
    "risk perception", "egovernment",
]

LOCATIONS = {
    "Germany": (51.16, 10.45),
    "France": (46.23, 2.21),
    "Spain": (40.46, -3.75),
    "Italy": (41.87, 12.57),
    "Poland": (51.92, 19.15),
    "Austria": (47.52, 14.55),
    "Sweden": (60.13, 18.64),
    "Netherlands": (52.13, 5.29),
    "Denmark": (56.26, 9.50),
    "Portugal": (39.40, -8.22),
    "Greece": (39.07, 21.82),
    "Ireland": (53.41, -8.24),
}

UNMAPPED_LOCATIONS = ["Ruritania", "Borduria"]

TITLE_PATTERNS = [
    "{s} in comparative perspective",
    "Rethinking {s}",
    "{s} and the welfare state",
    "A survey of {s}",
    "{s}: evidence from panel data",
    "The politics of {s}",
    "{s} after the crisis",
    "Measuring {s}",
]

INFO_TYPES = ["literature", "literature", "literature", "journal", "research_project", "event", "study"]
DATABASES = ["solis", "ssoar", "csa-sa", "dza"]
SOURCES = [
    "Journal of Applied Social Research", "European Review of Social Policy",
    "Comparative Politics Quarterly", "Working Papers in Sociology",
]

VOCAB_LINES = [
    ("digital divide", "broader", "social inequality"),
    ("digital divide", "related", "internet"),
    ("internet", "related", "media literacy"),
    ("internet", "narrower", "egovernment"),
    ("internet", "translation", "internet access"),
    ("social capital", "related", "civil society"),
    ("social capital", "related", "volunteering"),
    ("civil society", "broader", "society"),
    ("migration", "related", "labor market"),
    ("migration", "narrower", "youth migration"),
    ("labor market", "related", "trade unions"),
    ("gender equality", "broader", "social inequality"),
    ("education policy", "related", "media literacy"),
    ("health care", "synonym", "healthcare"),
    ("climate policy", "related", "risk perception"),
    ("urbanization", "broader", "social change"),
    ("party systems", "related", "civil society"),
]


def zipf_sample(rng: random.Random, pool: list[str], k: int) -> list[str]:
    weights = [1.0 / (i + 1) for i in range(len(pool))]
    return list(dict.fromkeys(rng.choices(pool, weights=weights, k=k)))


def main() -> None:
    rng = random.Random(42)
    records = []
    all_locations = list(LOCATIONS) + UNMAPPED_LOCATIONS
    for i in range(400):
        subjects = zipf_sample(rng, SUBJECTS, rng.randint(1, 3))
        title = rng.choice(TITLE_PATTERNS).format(s=subjects[0]).capitalize()
        year = min(2010, max(1961, int(rng.gauss(1998, 9)))) if rng.random() > 0.04 else None
        record = {
            "id": f"demo-{i:04d}",
            "title": title,
            "persons": zipf_sample(rng, PERSONS, rng.randint(1, 3)),
            "subjects": subjects,
            "locations": zipf_sample(rng, all_locations, rng.randint(0, 2)),
            "info_type": rng.choice(INFO_TYPES),
            "database": rng.choice(DATABASES),
            "source": rng.choice(SOURCES),
            "language": rng.choice(["de", "en"]),
        }
        if year is not None:
            record["year"] = year
        records.append(record)

    with open(HERE / "corpus.jsonl", "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record, ensure_ascii=False, separators=(",", ":")) + "\n")

    with open(HERE / "gazetteer.tsv", "w", encoding="utf-8") as handle:
        for name, (lat, lon) in LOCATIONS.items():
            handle.write(f"{name}\t{lat}\t{lon}\n")

    with open(HERE / "vocabulary-core.tsv", "w", encoding="utf-8") as handle:
        handle.write("# core demo thesaurus\n")
        for a, relation, b in VOCAB_LINES:
            handle.write(f"{a}\t{relation}\t{b}\n")

    config = {
        "index_dir": "demo/index",
        "port": 8080,
        "host": "127.0.0.1",
        "gazetteer": "demo/gazetteer.tsv",
        "vocabularies": {"core": "demo/vocabulary-core.tsv"},
        "static_dir": "frontend/dist",
        "reference_year": 2010,
        "page_size": 10,
    }
    (HERE / "config.json").write_text(json.dumps(config, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {len(records)} demo records")


if __name__ == "__main__":
    main()
