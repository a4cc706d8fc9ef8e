"""Deterministic synthetic corpus with planted structure: two feature- and
citation-separable paper communities, heavy-tailed patent citation counts,
and a fixed field-to-CPC flow pattern."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

DEFAULT_PAPERS = 2000
DEFAULT_PATENTS = 500
DEFAULT_LINKS = 5000
WINDOW = (2001, 2020)

FIELD_ROWS = [
    ("FLD.CS", "Computer Science", 0, None),
    ("FLD.BIO", "Life Sciences", 0, None),
    ("FLD.CS.AI", "Artificial Intelligence", 1, "FLD.CS"),
    ("FLD.CS.SYS", "Computer Systems", 1, "FLD.CS"),
    ("FLD.BIO.GEN", "Genomics", 1, "FLD.BIO"),
    ("FLD.BIO.ECO", "Ecology", 1, "FLD.BIO"),
    ("FLD.CS.AI.ML", "Machine Learning", 2, "FLD.CS.AI"),
    ("FLD.CS.AI.CV", "Computer Vision", 2, "FLD.CS.AI"),
    ("FLD.CS.SYS.DB", "Databases", 2, "FLD.CS.SYS"),
    ("FLD.CS.SYS.NET", "Networks", 2, "FLD.CS.SYS"),
    ("FLD.BIO.GEN.SEQ", "Sequencing", 2, "FLD.BIO.GEN"),
    ("FLD.BIO.GEN.PRO", "Proteomics", 2, "FLD.BIO.GEN"),
    ("FLD.BIO.ECO.MAR", "Marine Ecology", 2, "FLD.BIO.ECO"),
    ("FLD.BIO.ECO.CON", "Conservation", 2, "FLD.BIO.ECO"),
    ("FLD.CS.AI.ML.DL", "Deep Learning", 3, "FLD.CS.AI.ML"),
    ("FLD.CS.AI.ML.RL", "Reinforcement Learning", 3, "FLD.CS.AI.ML"),
    ("FLD.BIO.GEN.SEQ.RNA", "RNA Sequencing", 3, "FLD.BIO.GEN.SEQ"),
]

CPC_ROWS = [
    ("A", "Human Necessities", 0, None),
    ("G", "Physics", 0, None),
    ("H", "Electricity", 0, None),
    ("A61", "Medical Science", 1, "A"),
    ("G06", "Computing", 1, "G"),
    ("G16", "Information Technology", 1, "G"),
    ("H04", "Communication", 1, "H"),
    ("A61K", "Medical Preparations", 2, "A61"),
    ("A61P", "Therapeutic Activity", 2, "A61"),
    ("G06F", "Digital Data Processing", 2, "G06"),
    ("G06N", "Computing Arrangements", 2, "G06"),
    ("G16B", "Bioinformatics", 2, "G16"),
    ("H04L", "Digital Transmission", 2, "H04"),
    ("H04W", "Wireless Networks", 2, "H04"),
]

CPC_PARENTS = {row[0]: row[3] for row in CPC_ROWS}

# Community 0 spans the CS subtree, community 1 the BIO subtree.
LEAVES = {
    0: ["FLD.CS.AI.ML", "FLD.CS.AI.CV", "FLD.CS.SYS.DB", "FLD.CS.SYS.NET",
        "FLD.CS.AI.ML.DL", "FLD.CS.AI.ML.RL"],
    1: ["FLD.BIO.GEN.SEQ", "FLD.BIO.GEN.PRO", "FLD.BIO.ECO.MAR",
        "FLD.BIO.ECO.CON", "FLD.BIO.GEN.SEQ.RNA"],
}

# The planted flow pattern: each L1 field feeds specific CPC groups.
FLOW_GROUPS = {
    "FLD.CS.AI": ["G06N", "G06F"],
    "FLD.CS.SYS": ["H04L", "H04W", "G06F"],
    "FLD.BIO.GEN": ["G16B", "A61K"],
    "FLD.BIO.ECO": ["A61P", "A61K"],
}

VOCAB = {
    0: ["neural", "network", "graph", "learning", "query", "database",
        "protocol", "wireless", "cache", "compiler", "embedding", "routing",
        "latency", "vision", "transformer", "scheduler"],
    1: ["genome", "protein", "rna", "sequencing", "cell", "marine", "species",
        "habitat", "enzyme", "expression", "assay", "plankton", "microbiome",
        "receptor", "conservation", "phylogeny"],
}
SHARED_VOCAB = ["analysis", "study", "robust", "framework", "model", "evaluation",
                "method", "large", "scale", "data"]

UNIVERSITIES = [
    "Cascadia State University", "Norhaven Institute of Technology",
    "University of Eastmoor", "Pelican Bay College", "Aldergate University",
    "Westbrook Polytechnic University",
]
COMPANIES = [
    "Quanta Dynamics Inc", "Bluefin Analytics LLC", "Helix Therapeutics Corp",
    "Northlight Semiconductor Ltd", "Arbor Signal Labs", "Vantage Motors Inc",
    "Clearwater Genomics LLC", "Orchid Networks Corp",
]
OTHERS = [
    "National Metrology Office", "Harbor City Research Consortium",
    "Open Science Cooperative",
]

ASSIGNEE_RULES = {
    "university": ["university", "institute of technology", "college", "polytechnic"],
    "company": ["inc", "llc", "corp", "ltd", "labs", "gmbh"],
}
# One name deliberately classified against the keyword rules.
OVERRIDES = {"Harbor City Research Consortium": "Company"}

FIRST_NAMES = ["Avery", "Jordan", "Riley", "Sam", "Noor", "Kai", "Maya", "Elena",
               "Tomas", "Priya", "Wei", "Amara", "Luca", "Ingrid", "Dario", "Yuki"]
LAST_NAMES = ["Okafor", "Lindqvist", "Marchetti", "Tanaka", "Novak", "Herrera",
              "Baptiste", "Koval", "Ahmed", "Osei", "Bergstrom", "Castellanos",
              "Duval", "Iyer", "Petrov", "Sandoval"]

RANKS = ["Assistant Professor", "Associate Professor", "Professor",
         "Research Scientist"]
GENDERS = ["female", "male", "nonbinary"]


def _jsonl(path: Path, rows) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True, separators=(",", ":")) + "\n")


def _csv(path: Path, header: str, rows) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _years(rng: np.random.Generator, n: int) -> list[int]:
    lo, hi = WINDOW
    span = list(range(lo, hi + 1))
    years = (span * (n // len(span) + 1))[:n]
    rng.shuffle(years)
    return years


def _title(rng: np.random.Generator, community: int) -> str:
    n_tokens = int(rng.integers(5, 9))
    words = []
    for _ in range(n_tokens):
        pool = VOCAB[community] if rng.random() < 0.7 else SHARED_VOCAB
        words.append(pool[int(rng.integers(0, len(pool)))])
    return " ".join(words)


def generate(out_dir, seed: int = 0, papers: int = DEFAULT_PAPERS,
             patents: int = DEFAULT_PATENTS, links: int = DEFAULT_LINKS) -> dict:
    """Write a complete ingest dataset plus manifest; returns summary counts."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)

    n_researchers = max(30, papers // 7)
    researcher_ids = [f"R{i:04d}" for i in range(n_researchers)]
    # Researchers split evenly across the two communities.
    researcher_community = [i % 2 for i in range(n_researchers)]
    by_community = {
        c: [r for r, rc in zip(researcher_ids, researcher_community) if rc == c]
        for c in (0, 1)
    }

    paper_ids = [f"P{i:05d}" for i in range(papers)]
    communities = [0] * (papers // 2) + [1] * (papers - papers // 2)
    rng.shuffle(communities)
    years = _years(rng, papers)

    venues = {c: [f"V.{'CS' if c == 0 else 'BIO'}{i:02d}" for i in range(10)] for c in (0, 1)}

    paper_rows = []
    paper_field: dict[str, str] = {}
    paper_year: dict[str, int] = {}
    paper_community: dict[str, int] = {}
    authors_of: dict[str, list[str]] = {}
    for pid, community, year in zip(paper_ids, communities, years):
        leaf = LEAVES[community][int(rng.integers(0, len(LEAVES[community])))]
        field_ids = [leaf]
        if rng.random() < 0.15:
            # Occasional coarser second tag exercises multi-tag assignment.
            parent_l1 = ".".join(leaf.split(".")[:3])
            if parent_l1 != leaf:
                field_ids.append(parent_l1)
        pool = by_community[community]
        k_authors = int(rng.integers(1, 6))
        author_ids = sorted(
            str(a) for a in rng.choice(pool, size=min(k_authors, len(pool)), replace=False)
        )
        if rng.random() < 0.05:
            other = by_community[1 - community]
            extra = str(other[int(rng.integers(0, len(other)))])
            if extra not in author_ids:
                author_ids = sorted(author_ids + [extra])
        venue = None
        if rng.random() >= 0.03:
            pool_c = community if rng.random() >= 0.05 else 1 - community
            venue = venues[pool_c][int(rng.integers(0, 10))]
        paper_field[pid] = leaf
        paper_year[pid] = year
        paper_community[pid] = community
        authors_of[pid] = author_ids
        paper_rows.append(
            {
                "id": pid,
                "title": _title(rng, community),
                "year": year,
                "venue_id": venue,
                "field_ids": field_ids,
                "author_ids": author_ids,
                "reference_ids": [],
                "grant_count": int(rng.poisson(1.0)),
            }
        )

    # Paper-paper citations: mostly within-community, later paper cites earlier.
    edges: set[tuple[str, str]] = set()
    ids_by_community = {
        c: [pid for pid in paper_ids if paper_community[pid] == c] for c in (0, 1)
    }
    while len(edges) < links:
        if rng.random() < 0.85:
            c = int(rng.integers(0, 2))
            a = ids_by_community[c][int(rng.integers(0, len(ids_by_community[c])))]
            b = ids_by_community[c][int(rng.integers(0, len(ids_by_community[c])))]
        else:
            a = paper_ids[int(rng.integers(0, papers))]
            b = paper_ids[int(rng.integers(0, papers))]
        if a == b:
            continue
        key_a = (paper_year[a], a)
        key_b = (paper_year[b], b)
        citing, cited = (a, b) if key_a > key_b else (b, a)
        edges.add((citing, cited))
    citation_rows = sorted(edges)

    # Patents with 1-3 CPC codes following the planted field-flow pattern.
    patent_ids = [f"T{i:04d}" for i in range(patents)]
    patent_years = _years(rng, patents)
    themes = sorted(FLOW_GROUPS)
    assignee_pool = UNIVERSITIES + COMPANIES + OTHERS
    all_groups = sorted({g for gs in FLOW_GROUPS.values() for g in gs})
    patent_rows = []
    patent_theme: dict[str, str] = {}
    patent_groups: dict[str, list[str]] = {}
    for tid, year in zip(patent_ids, patent_years):
        theme = themes[int(rng.integers(0, len(themes)))]
        groups = list(FLOW_GROUPS[theme])
        rng.shuffle(groups)
        groups = groups[: int(rng.integers(1, len(groups) + 1))]
        if rng.random() < 0.1:
            extra = all_groups[int(rng.integers(0, len(all_groups)))]
            if extra not in groups:
                groups.append(extra)
        groups = sorted(groups)
        codes = [[CPC_PARENTS[CPC_PARENTS[g]], CPC_PARENTS[g], g] for g in groups]
        patent_theme[tid] = theme
        patent_groups[tid] = groups
        patent_rows.append(
            {
                "id": tid,
                "title": _title(rng, 0 if theme.startswith("FLD.CS") else 1) + " system",
                "application_year": year,
                "assignee_name": assignee_pool[int(rng.integers(0, len(assignee_pool)))],
                "cpc_codes": codes,
            }
        )

    # Patent-paper citations: heavy-tailed per-paper popularity, themed
    # papers preferred, most applications within five years of publication.
    popularity = np.minimum(rng.zipf(2.0, size=papers), 50).astype(np.float64)
    papers_by_theme = {
        theme: [pid for pid in paper_ids if paper_field[pid].startswith(theme)]
        for theme in themes
    }
    pair_rows: set[tuple[str, str]] = set()
    index_of = {pid: i for i, pid in enumerate(paper_ids)}
    for tid, year in zip(patent_ids, patent_years):
        theme = patent_theme[tid]
        k = int(min(1 + rng.zipf(1.8), 25))
        candidates = papers_by_theme[theme]
        recent = [p for p in candidates if 0 <= year - paper_year[p] <= 5]
        pool = recent if (recent and rng.random() < 0.8) else candidates
        weights = np.array([popularity[index_of[p]] for p in pool])
        weights = weights / weights.sum()
        take = min(k, len(pool))
        chosen = rng.choice(len(pool), size=take, replace=False, p=weights)
        for ix in chosen:
            pair_rows.add((tid, pool[int(ix)]))
    patent_citation_rows = sorted(pair_rows)

    papers_of: dict[str, list[str]] = {rid: [] for rid in researcher_ids}
    for pid in paper_ids:
        for rid in authors_of[pid]:
            papers_of[rid].append(pid)
    researcher_rows = []
    for i, rid in enumerate(researcher_ids):
        first = FIRST_NAMES[int(rng.integers(0, len(FIRST_NAMES)))]
        last = LAST_NAMES[int(rng.integers(0, len(LAST_NAMES)))]
        researcher_rows.append(
            {
                "id": rid,
                "name": f"{first} {last}",
                "gender": GENDERS[int(rng.integers(0, 3))] if rng.random() > 0.05 else None,
                "rank": RANKS[int(rng.integers(0, len(RANKS)))],
                "affiliation": UNIVERSITIES[int(rng.integers(0, len(UNIVERSITIES)))],
                "paper_ids": sorted(papers_of[rid]),
                "invention_disclosure_count": int(rng.poisson(2.0)),
                "granted_patent_count": int(rng.poisson(1.0)),
            }
        )

    _jsonl(out / "papers.jsonl", paper_rows)
    _jsonl(out / "patents.jsonl", patent_rows)
    _jsonl(out / "researchers.jsonl", researcher_rows)
    _jsonl(
        out / "fields.jsonl",
        [
            {"id": i, "label": label, "level": f"L{level}", "parent_id": parent}
            for i, label, level, parent in FIELD_ROWS
        ],
    )
    cpc_levels = ("section", "subsection", "group")
    _jsonl(
        out / "cpc.jsonl",
        [
            {"id": i, "label": label, "level": cpc_levels[level], "parent_id": parent}
            for i, label, level, parent in CPC_ROWS
        ],
    )
    _csv(out / "paper_citations.csv", "citing_id,cited_id", citation_rows)
    _csv(out / "paper_patent_citations.csv", "patent_id,paper_id", patent_citation_rows)
    with (out / "assignee_rules.json").open("w", encoding="utf-8", newline="\n") as fh:
        json.dump(ASSIGNEE_RULES, fh, indent=2, sort_keys=True)
        fh.write("\n")
    with (out / "overrides.json").open("w", encoding="utf-8", newline="\n") as fh:
        json.dump(OVERRIDES, fh, indent=2, sort_keys=True)
        fh.write("\n")

    manifest = {
        "papers": "papers.jsonl",
        "patents": "patents.jsonl",
        "researchers": "researchers.jsonl",
        "fields": "fields.jsonl",
        "cpc": "cpc.jsonl",
        "paper_citations": "paper_citations.csv",
        "paper_patent_citations": "paper_patent_citations.csv",
        "assignee_rules": "assignee_rules.json",
        "overrides": "overrides.json",
        "window": list(WINDOW),
    }
    with (out / "manifest.json").open("w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")

    return {
        "papers": papers,
        "patents": patents,
        "paper_citation_edges": len(citation_rows),
        "paper_patent_pairs": len(patent_citation_rows),
        "researchers": n_researchers,
        "window": list(WINDOW),
    }
