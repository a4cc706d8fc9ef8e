"""Manifest-driven ingest: parse, validate, window-filter, and index the corpus."""

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path
from typing import Any, Iterator, Mapping

from .assignees import DEFAULT_RULES, AssigneeRules, classify_assignee
from .hierarchy import CPC_LEVELS, FIELD_LEVELS, Hierarchy, HierarchyError, HierarchyNode
from .model import (
    DEFAULT_WINDOW,
    Corpus,
    CorpusError,
    LoadReport,
    Paper,
    Patent,
    Researcher,
)

logger = logging.getLogger(__name__)


class IngestError(CorpusError):
    """Malformed or inconsistent input; message carries file and line context."""

    def __init__(self, path: str | Path, line: int | None, message: str):
        self.path = str(path)
        self.line = line
        where = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{where}: {message}")


def _iter_jsonl(path: Path) -> Iterator[tuple[int, dict[str, Any]]]:
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(path, lineno, f"invalid JSON: {exc.msg}") from None
            if not isinstance(obj, dict):
                raise IngestError(path, lineno, "expected a JSON object")
            yield lineno, obj


def _req_str(obj: Mapping[str, Any], key: str, path: Path, line: int) -> str:
    value = obj.get(key)
    if not isinstance(value, str) or not value:
        raise IngestError(path, line, f"missing or invalid required field {key!r}")
    return value


def _req_int(obj: Mapping[str, Any], key: str, path: Path, line: int) -> int:
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise IngestError(path, line, f"field {key!r} must be an integer")
    return value


def _opt_nonneg_int(obj: Mapping[str, Any], key: str, path: Path, line: int) -> int | None:
    value = obj.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise IngestError(path, line, f"field {key!r} must be a nonnegative integer")
    return value


def _str_list(obj: Mapping[str, Any], key: str, path: Path, line: int) -> tuple[str, ...]:
    value = obj.get(key)
    if value is None:
        return ()
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise IngestError(path, line, f"field {key!r} must be a list of strings")
    return tuple(value)


def _read_csv_pairs(path: Path, header: tuple[str, str]) -> list[tuple[str, str, int]]:
    """Rows of a two-column citation csv as (a, b, lineno); header row required."""
    rows: list[tuple[str, str, int]] = []
    with path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            first = next(reader)
        except StopIteration:
            raise IngestError(path, 1, f"missing header row {','.join(header)!r}") from None
        if tuple(first) != header:
            raise IngestError(path, 1, f"expected header {','.join(header)!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2 or not row[0] or not row[1]:
                raise IngestError(path, lineno, "expected two nonempty columns")
            rows.append((row[0], row[1], lineno))
    return rows


def _load_hierarchy(path: Path, level_order: tuple[str, ...]) -> Hierarchy:
    nodes = []
    for lineno, obj in _iter_jsonl(path):
        nodes.append(
            HierarchyNode(
                id=_req_str(obj, "id", path, lineno),
                label=_req_str(obj, "label", path, lineno),
                level=_req_str(obj, "level", path, lineno),
                parent_id=obj.get("parent_id"),
            )
        )
    try:
        return Hierarchy(nodes, level_order)
    except HierarchyError as exc:
        raise IngestError(path, None, str(exc)) from None


def _validate_cpc_code(
    code: Any, cpc: Hierarchy, path: Path, line: int
) -> tuple[str, str, str]:
    if not isinstance(code, list) or len(code) != 3 or not all(isinstance(c, str) for c in code):
        raise IngestError(path, line, "cpc code must be a [section, subsection, group] triple")
    section, subsection, group = code
    for node_id, level in zip(code, CPC_LEVELS):
        if node_id not in cpc:
            raise IngestError(path, line, f"dangling reference: cpc node {node_id!r}")
        if cpc.level_of(node_id) != level:
            raise IngestError(path, line, f"cpc node {node_id!r} is not a {level}")
    if cpc.get(group).parent_id != subsection or cpc.get(subsection).parent_id != section:
        raise IngestError(path, line, f"cpc triple {code} does not follow the hierarchy")
    return (section, subsection, group)


def load_corpus(
    manifest_path: str | Path, window: tuple[int, int] | None = None
) -> Corpus:
    """Load, validate, and index the corpus described by an ingest manifest.

    Papers outside the configured window are dropped (counted in the report);
    patents without any CPC code are dropped likewise. References to ids that
    never appear in the inputs raise IngestError; edges touching dropped rows
    are pruned and counted.
    """
    manifest_path = Path(manifest_path)
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise IngestError(manifest_path, None, f"invalid manifest JSON: {exc.msg}") from None
    if not isinstance(manifest, dict):
        raise IngestError(manifest_path, None, "manifest must be a JSON object")
    base = manifest_path.parent

    def resolve(key: str, required: bool = True) -> Path | None:
        value = manifest.get(key)
        if value is None:
            if required:
                raise IngestError(manifest_path, None, f"manifest is missing {key!r}")
            return None
        path = base / str(value)
        if not path.exists():
            raise IngestError(manifest_path, None, f"{key} file not found: {path}")
        return path

    if window is None:
        raw_window = manifest.get("window")
        window = (
            (int(raw_window[0]), int(raw_window[1])) if raw_window else DEFAULT_WINDOW
        )
    lo, hi = int(window[0]), int(window[1])
    if lo > hi:
        raise IngestError(manifest_path, None, f"empty corpus window [{lo}, {hi}]")

    fields = _load_hierarchy(resolve("fields"), FIELD_LEVELS)
    cpc = _load_hierarchy(resolve("cpc"), CPC_LEVELS)

    rules_path = resolve("assignee_rules", required=False)
    rules = (
        AssigneeRules.from_dict(json.loads(rules_path.read_text(encoding="utf-8")))
        if rules_path
        else DEFAULT_RULES
    )
    overrides_path = resolve("overrides", required=False)
    overrides: dict[str, str] = (
        json.loads(overrides_path.read_text(encoding="utf-8")) if overrides_path else {}
    )

    # Parse everything first; dangling checks run against the full id universe
    # so that window drops never masquerade as dangling-reference errors.
    papers_path = resolve("papers")
    raw_papers: dict[str, Paper] = {}
    for lineno, obj in _iter_jsonl(papers_path):
        paper = Paper(
            id=_req_str(obj, "id", papers_path, lineno),
            title=_req_str(obj, "title", papers_path, lineno),
            year=_req_int(obj, "year", papers_path, lineno),
            venue_id=obj.get("venue_id") or None,
            field_ids=_str_list(obj, "field_ids", papers_path, lineno),
            author_ids=_str_list(obj, "author_ids", papers_path, lineno),
            reference_ids=_str_list(obj, "reference_ids", papers_path, lineno),
            grant_count=_opt_nonneg_int(obj, "grant_count", papers_path, lineno) or 0,
        )
        if paper.id in raw_papers:
            raise IngestError(papers_path, lineno, f"duplicate id {paper.id!r}")
        for fid in paper.field_ids:
            if fid not in fields:
                raise IngestError(
                    papers_path, lineno, f"dangling reference: field {fid!r}"
                )
        raw_papers[paper.id] = paper

    patents_path = resolve("patents")
    raw_patents: dict[str, Patent] = {}
    patents_missing_cpc = 0
    for lineno, obj in _iter_jsonl(patents_path):
        pid = _req_str(obj, "id", patents_path, lineno)
        if pid in raw_patents:
            raise IngestError(patents_path, lineno, f"duplicate id {pid!r}")
        name = _req_str(obj, "assignee_name", patents_path, lineno)
        codes_raw = obj.get("cpc_codes") or []
        if not isinstance(codes_raw, list):
            raise IngestError(patents_path, lineno, "field 'cpc_codes' must be a list")
        codes = tuple(
            _validate_cpc_code(code, cpc, patents_path, lineno) for code in codes_raw
        )
        raw_patents[pid] = Patent(
            id=pid,
            title=_req_str(obj, "title", patents_path, lineno),
            application_year=_req_int(obj, "application_year", patents_path, lineno),
            assignee_name=name,
            assignee_class=classify_assignee(name, rules, overrides),
            cpc_codes=codes,
        )
        if not codes:
            patents_missing_cpc += 1

    researchers_path = resolve("researchers")
    raw_researchers: dict[str, Researcher] = {}
    for lineno, obj in _iter_jsonl(researchers_path):
        researcher = Researcher(
            id=_req_str(obj, "id", researchers_path, lineno),
            name=_req_str(obj, "name", researchers_path, lineno),
            gender=obj.get("gender") or None,
            rank=obj.get("rank") or None,
            affiliation=obj.get("affiliation") or None,
            paper_ids=_str_list(obj, "paper_ids", researchers_path, lineno),
            invention_disclosure_count=_opt_nonneg_int(
                obj, "invention_disclosure_count", researchers_path, lineno
            ),
            granted_patent_count=_opt_nonneg_int(
                obj, "granted_patent_count", researchers_path, lineno
            ),
        )
        if researcher.id in raw_researchers:
            raise IngestError(researchers_path, lineno, f"duplicate id {researcher.id!r}")
        for pid in researcher.paper_ids:
            if pid not in raw_papers:
                raise IngestError(
                    researchers_path, lineno, f"dangling reference: paper {pid!r}"
                )
        raw_researchers[researcher.id] = researcher

    paper_cites_path = resolve("paper_citations")
    paper_edges: set[tuple[str, str]] = set()
    for citing, cited, lineno in _read_csv_pairs(paper_cites_path, ("citing_id", "cited_id")):
        if citing not in raw_papers:
            raise IngestError(paper_cites_path, lineno, f"dangling reference: paper {citing!r}")
        if cited not in raw_papers:
            raise IngestError(paper_cites_path, lineno, f"dangling reference: paper {cited!r}")
        if citing == cited:
            raise IngestError(paper_cites_path, lineno, f"self reference: paper {citing!r}")
        paper_edges.add((citing, cited))
    for paper in raw_papers.values():
        for ref in paper.reference_ids:
            if ref not in raw_papers:
                raise IngestError(
                    papers_path, None, f"dangling reference: paper {paper.id!r} -> {ref!r}"
                )
            if ref == paper.id:
                raise IngestError(papers_path, None, f"self reference: paper {paper.id!r}")
            paper_edges.add((paper.id, ref))

    pp_cites_path = resolve("paper_patent_citations")
    patent_pairs: set[tuple[str, str]] = set()
    for patent_id, paper_id, lineno in _read_csv_pairs(
        pp_cites_path, ("patent_id", "paper_id")
    ):
        if patent_id not in raw_patents:
            raise IngestError(pp_cites_path, lineno, f"dangling reference: patent {patent_id!r}")
        if paper_id not in raw_papers:
            raise IngestError(pp_cites_path, lineno, f"dangling reference: paper {paper_id!r}")
        patent_pairs.add((patent_id, paper_id))

    # Apply the window and the missing-CPC rule, then prune edges to survivors.
    kept_papers = {pid: p for pid, p in raw_papers.items() if lo <= p.year <= hi}
    papers_dropped = len(raw_papers) - len(kept_papers)
    kept_patents = {pid: p for pid, p in raw_patents.items() if p.cpc_codes}

    kept_edges = {
        (a, b) for a, b in paper_edges if a in kept_papers and b in kept_papers
    }
    kept_pairs = {
        (t, p) for t, p in patent_pairs if t in kept_patents and p in kept_papers
    }

    researcher_links_pruned = 0
    kept_researchers = []
    for researcher in raw_researchers.values():
        surviving = tuple(sorted(pid for pid in researcher.paper_ids if pid in kept_papers))
        researcher_links_pruned += len(set(researcher.paper_ids)) - len(surviving)
        kept_researchers.append(
            researcher if surviving == researcher.paper_ids else
            Researcher(
                id=researcher.id,
                name=researcher.name,
                gender=researcher.gender,
                rank=researcher.rank,
                affiliation=researcher.affiliation,
                paper_ids=surviving,
                invention_disclosure_count=researcher.invention_disclosure_count,
                granted_patent_count=researcher.granted_patent_count,
            )
        )

    # Normalize reference lists to the surviving union of row refs and csv edges.
    refs_by_citing: dict[str, list[str]] = {}
    for a, b in kept_edges:
        refs_by_citing.setdefault(a, []).append(b)
    final_papers = []
    for paper in kept_papers.values():
        refs = tuple(sorted(refs_by_citing.get(paper.id, ())))
        final_papers.append(
            paper if refs == paper.reference_ids else Paper(
                id=paper.id,
                title=paper.title,
                year=paper.year,
                venue_id=paper.venue_id,
                field_ids=paper.field_ids,
                author_ids=paper.author_ids,
                reference_ids=refs,
                grant_count=paper.grant_count,
            )
        )

    report = LoadReport(
        papers_loaded=len(kept_papers),
        patents_loaded=len(kept_patents),
        researchers_loaded=len(kept_researchers),
        papers_dropped_outside_window=papers_dropped,
        patents_dropped_missing_cpc=patents_missing_cpc,
        paper_citation_edges_pruned=len(paper_edges) - len(kept_edges),
        patent_citation_pairs_pruned=len(patent_pairs) - len(kept_pairs),
        researcher_paper_links_pruned=researcher_links_pruned,
    )
    logger.info(
        "loaded corpus: %d papers (%d dropped outside [%d, %d]), %d patents "
        "(%d dropped without cpc), %d researchers",
        report.papers_loaded,
        report.papers_dropped_outside_window,
        lo,
        hi,
        report.patents_loaded,
        report.patents_dropped_missing_cpc,
        report.researchers_loaded,
    )
    return Corpus(
        papers=final_papers,
        patents=kept_patents.values(),
        researchers=kept_researchers,
        fields=fields,
        cpc=cpc,
        paper_citations=kept_edges,
        patent_citations=kept_pairs,
        window=(lo, hi),
        report=report,
    )
