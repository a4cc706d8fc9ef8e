"""Read-only query endpoints over a loaded corpus and its artifacts.

Responses are pure functions of (state, query): bodies are canonical JSON
with a strong ETag, and repeated identical requests return identical bytes.
"""

from __future__ import annotations

import hashlib
import json
import re

import numpy as np
from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel
from scipy.stats import gaussian_kde

from ..corpus.model import Corpus, CorpusError, QueryFilter
from ..interplay.payload import build_payload
from ..interplay.timeline import field_timeline
from ..metrics.papers import MetricRecord
from .schemas import (
    AssigneesResponse,
    ContourGrid,
    HealthResponse,
    InterplayResponse,
    KeywordCount,
    PaperSummary,
    PapersResponse,
    RankedPaper,
    RankedResearcher,
    ResearcherDetail,
    ScatterPoint,
    ScatterResponse,
    StatsResponse,
    SunburstChild,
    SunburstClass,
    TimelineResponse,
)
from .state import ServerState

RESEARCHER_METRICS = (
    "paper_count",
    "avg_science_citation_5y",
    "papers_cited_by_patents",
    "citing_patent_count",
    "patent_citation_count",
    "invention_disclosure_count",
    "granted_patent_count",
)

PAPER_RANKS = (
    "team_size",
    "institution_count",
    "grant_count",
    "science_citation_5y",
    "disruption",
    "novelty",
    "patent_citation_5y",
    "patentability",
)

STOPWORDS = frozenset(
    """a an and are as at be by for from has have in into is it its of on or
    such that the their this to via was were will with within without using
    based under over between through method methods system systems apparatus
    device devices thereof""".split()
)

_TOKEN = re.compile(r"[^0-9a-z]+")


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


def _parse_filter(raw: str | None) -> QueryFilter:
    if raw is None or raw.strip() == "":
        return QueryFilter()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ApiError(400, "bad_filter", f"filter is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ApiError(400, "bad_filter", "filter must be a JSON object")
    try:
        return QueryFilter.from_dict(data)
    except CorpusError as exc:
        raise ApiError(400, "bad_filter", str(exc)) from None


def _etag_response(request: Request, model: BaseModel) -> Response:
    body = json.dumps(
        model.model_dump(mode="json"), sort_keys=True, separators=(",", ":")
    ).encode("utf-8")
    etag = '"' + hashlib.sha256(body).hexdigest() + '"'
    if_none_match = request.headers.get("if-none-match")
    if if_none_match is not None:
        candidates = {tag.strip() for tag in if_none_match.split(",")}
        if etag in candidates or if_none_match.strip() == "*":
            return Response(status_code=304, headers={"ETag": etag})
    return Response(
        content=body, media_type="application/json", headers={"ETag": etag}
    )


def _contour(xs: list[float], ys: list[float]) -> ContourGrid | None:
    """Scott-bandwidth KDE on a 25x25 grid, scaled to integrate to the
    point count; None when the KDE is degenerate."""
    if len(xs) < 3:
        return None
    data = np.array([xs, ys], dtype=np.float64)
    try:
        kde = gaussian_kde(data)
    except (np.linalg.LinAlgError, ValueError):
        return None
    grid_n = 25
    pad_x = 0.05 * (max(xs) - min(xs)) or 1.0
    pad_y = 0.05 * (max(ys) - min(ys)) or 1.0
    gx = np.linspace(min(xs) - pad_x, max(xs) + pad_x, grid_n)
    gy = np.linspace(min(ys) - pad_y, max(ys) + pad_y, grid_n)
    mx, my = np.meshgrid(gx, gy)
    density = kde(np.vstack([mx.ravel(), my.ravel()])).reshape(grid_n, grid_n)
    density = density * len(xs)
    return ContourGrid(
        x=[float(v) for v in gx],
        y=[float(v) for v in gy],
        density=[[float(v) for v in row] for row in density],
    )


def _keywords(view: Corpus, limit: int = 30) -> list[KeywordCount]:
    counts: dict[str, int] = {}
    for patent_id in view.patents:
        for token in _TOKEN.split(view.patents[patent_id].title.lower()):
            if len(token) < 3 or token in STOPWORDS:
                continue
            counts[token] = counts.get(token, 0) + 1
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:limit]
    return [KeywordCount(term=t, count=c) for t, c in ranked]


def create_app(state: ServerState) -> FastAPI:
    app = FastAPI(title="sciflow", docs_url=None, redoc_url=None)

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(CorpusError)
    async def _corpus_error(_request: Request, exc: CorpusError):
        return JSONResponse(
            status_code=400, content={"code": "validation_error", "message": str(exc)}
        )

    @app.get("/health")
    def health(request: Request):
        return _etag_response(request, HealthResponse(status="ok"))

    @app.get("/researchers/{researcher_id}")
    def researcher_detail(researcher_id: str, request: Request):
        corpus = state.corpus
        if researcher_id not in corpus.researchers:
            raise ApiError(404, "not_found", f"unknown researcher {researcher_id!r}")
        fv = state.view_for(QueryFilter())
        researcher = corpus.researchers[researcher_id]
        metrics = fv.researcher_metrics[researcher_id]
        papers = []
        for pid in sorted(corpus.papers_of_researcher.get(researcher_id, ())):
            paper = corpus.papers[pid]
            papers.append(
                PaperSummary(
                    id=pid,
                    title=paper.title,
                    year=paper.year,
                    venue_id=paper.venue_id,
                    patentability=(state.patentability or {}).get(pid),
                )
            )
        detail = ResearcherDetail(
            id=researcher_id,
            name=researcher.name,
            gender=researcher.gender,
            rank=researcher.rank,
            affiliation=researcher.affiliation,
            metrics=metrics.to_dict(),
            p_index=state.pindex.get(researcher_id),
            papers=papers,
        )
        return _etag_response(request, detail)

    @app.get("/researchers")
    def researchers(
        request: Request,
        x: str = "invention_disclosure_count",
        y: str = "papers_cited_by_patents",
        filter: str | None = None,
    ):
        for axis in (x, y):
            if axis not in RESEARCHER_METRICS:
                raise ApiError(400, "unknown_metric", f"unknown researcher metric {axis!r}")
        qf = _parse_filter(filter)
        fv = state.view_for(qf)
        points = []
        kde_x: list[float] = []
        kde_y: list[float] = []
        for rid in sorted(fv.view.researchers):
            record = fv.researcher_metrics[rid].to_dict()
            px, py = record[x], record[y]
            points.append(
                ScatterPoint(
                    id=rid,
                    x=None if px is None else float(px),
                    y=None if py is None else float(py),
                    p_index=state.pindex.get(rid),
                )
            )
            if px is not None and py is not None:
                kde_x.append(float(px))
                kde_y.append(float(py))
        payload = ScatterResponse(
            x_metric=x, y_metric=y, points=points, contour=_contour(kde_x, kde_y)
        )
        return _etag_response(request, payload)

    @app.get("/stats")
    def stats(request: Request, filter: str | None = None):
        qf = _parse_filter(filter)
        fv = state.view_for(qf)
        view = fv.view
        by_gender: dict[str, int] = {}
        by_rank: dict[str, int] = {}
        for rid in view.researchers:
            r = view.researchers[rid]
            by_gender[r.gender or "unknown"] = by_gender.get(r.gender or "unknown", 0) + 1
            by_rank[r.rank or "unknown"] = by_rank.get(r.rank or "unknown", 0) + 1
        by_class: dict[str, int] = {}
        patents_per_year: dict[str, int] = {}
        for tid in view.patents:
            patent = view.patents[tid]
            by_class[patent.assignee_class] = by_class.get(patent.assignee_class, 0) + 1
            key = str(patent.application_year)
            patents_per_year[key] = patents_per_year.get(key, 0) + 1
        papers_per_year: dict[str, int] = {}
        for pid in view.papers:
            key = str(view.papers[pid].year)
            papers_per_year[key] = papers_per_year.get(key, 0) + 1
        ranked = sorted(
            fv.researcher_metrics.values(),
            key=lambda m: (-m.citing_patent_count, m.researcher_id),
        )[:10]
        top = [
            RankedResearcher(
                id=m.researcher_id,
                name=view.researchers[m.researcher_id].name,
                citing_patent_count=m.citing_patent_count,
                p_index=state.pindex.get(m.researcher_id),
            )
            for m in ranked
        ]
        payload = StatsResponse(
            researchers=len(view.researchers),
            papers=len(view.papers),
            patents=len(view.patents),
            by_gender=dict(sorted(by_gender.items())),
            by_rank=dict(sorted(by_rank.items())),
            by_assignee_class=dict(sorted(by_class.items())),
            papers_per_year=dict(sorted(papers_per_year.items())),
            patents_per_year=dict(sorted(patents_per_year.items())),
            top_researchers=top,
        )
        return _etag_response(request, payload)

    @app.get("/interplay")
    def interplay(
        request: Request,
        filter: str | None = None,
        level: str = "L1",
        bins: str = "0,1,3,8,21",
        alpha: float = 1.0,
        beta: float = 1.0,
        gamma: float = 1.0,
        mode: str = "historical",
        min_pct: float | None = None,
    ):
        qf = _parse_filter(filter)
        key = "|".join(
            [
                qf.cache_key(),
                level,
                bins,
                repr(alpha),
                repr(beta),
                repr(gamma),
                mode,
                repr(min_pct),
            ]
        )

        def build() -> InterplayResponse:
            fv = state.view_for(qf)
            payload = build_payload(
                fv.view,
                level=level,
                bins=bins,
                alpha=alpha,
                beta=beta,
                gamma=gamma,
                mode=mode,
                min_patentability=min_pct,
                metrics=fv.paper_metrics,
                predictions=state.predictions,
            )
            return InterplayResponse.model_validate(payload)

        try:
            model = state.layout_cache.get_or_build(key, build)
        except (CorpusError, ValueError) as exc:
            raise ApiError(400, "validation_error", str(exc)) from None
        return _etag_response(request, model)

    @app.get("/timeline")
    def timeline(request: Request, ids: str, kind: str | None = None):
        id_list = [part for part in ids.split(",") if part]
        if not id_list:
            raise ApiError(400, "bad_request", "ids must name at least one node")
        if kind is not None and kind not in ("paper", "patent"):
            raise ApiError(400, "bad_request", f"kind must be paper or patent, got {kind!r}")
        try:
            result = field_timeline(state.corpus, id_list, kind=kind)
        except CorpusError as exc:
            raise ApiError(404, "not_found", str(exc)) from None
        data = result.to_dict()
        payload = TimelineResponse(window=data["window"], series=data["series"])
        return _etag_response(request, payload)

    @app.get("/assignees")
    def assignees(request: Request, filter: str | None = None, k: int = 10):
        if k < 1:
            raise ApiError(400, "bad_request", "k must be >= 1")
        qf = _parse_filter(filter)
        view = state.view_for(qf).view
        class_counts: dict[str, int] = {}
        name_counts: dict[str, dict[str, int]] = {}
        for tid in view.patents:
            patent = view.patents[tid]
            cls = patent.assignee_class
            class_counts[cls] = class_counts.get(cls, 0) + 1
            bucket = name_counts.setdefault(cls, {})
            bucket[patent.assignee_name] = bucket.get(patent.assignee_name, 0) + 1

        shown: list[tuple[str, int, list[tuple[str, int]]]] = []
        for cls in sorted(class_counts):
            names = sorted(
                name_counts[cls].items(), key=lambda kv: (-kv[1], kv[0])
            )[:k]
            shown.append((cls, class_counts[cls], names))
        class_total = sum(count for _, count, _ in shown)
        child_total = sum(c for _, _, names in shown for _, c in names)
        classes = [
            SunburstClass(
                name=cls,
                count=count,
                share=count / class_total if class_total else 0.0,
                children=[
                    SunburstChild(
                        name=name,
                        count=c,
                        share=c / child_total if child_total else 0.0,
                    )
                    for name, c in names
                ],
            )
            for cls, count, names in shown
        ]
        payload = AssigneesResponse(classes=classes, keywords=_keywords(view))
        return _etag_response(request, payload)

    @app.get("/papers")
    def papers(
        request: Request,
        filter: str | None = None,
        rank: str = "science_citation_5y",
        limit: int = 20,
    ):
        if rank not in PAPER_RANKS:
            raise ApiError(400, "unknown_metric", f"unknown paper rank {rank!r}")
        if limit < 1 or limit > 500:
            raise ApiError(400, "bad_request", "limit must be in [1, 500]")
        qf = _parse_filter(filter)
        fv = state.view_for(qf)
        view = fv.view

        def value_of(pid: str) -> float | None:
            if rank == "patentability":
                return (state.patentability or {}).get(pid)
            v = getattr(fv.paper_metrics[pid], rank)
            return None if v is None else float(v)

        scored = [
            (pid, value_of(pid)) for pid in sorted(view.papers)
        ]
        ranked = sorted(
            (item for item in scored if item[1] is not None),
            key=lambda item: (-item[1], item[0]),
        )[:limit]
        rows = []
        for pid, value in ranked:
            paper = view.papers[pid]
            record: MetricRecord = fv.paper_metrics[pid]
            rows.append(
                RankedPaper(
                    id=pid,
                    title=paper.title,
                    year=paper.year,
                    venue_id=paper.venue_id,
                    value=value,
                    metrics=record.to_dict(),
                )
            )
        return _etag_response(request, PapersResponse(rank=rank, papers=rows))

    return app
