"""Response models for the query service."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, ConfigDict


class ErrorBody(BaseModel):
    code: str
    message: str


class HealthResponse(BaseModel):
    status: str


class ScatterPoint(BaseModel):
    id: str
    x: Optional[float] = None
    y: Optional[float] = None
    p_index: Optional[float] = None


class ContourGrid(BaseModel):
    x: list[float]
    y: list[float]
    density: list[list[float]]  # scaled so the grid integral is ~point count


class ScatterResponse(BaseModel):
    x_metric: str
    y_metric: str
    points: list[ScatterPoint]
    contour: Optional[ContourGrid] = None


class PaperSummary(BaseModel):
    id: str
    title: str
    year: int
    venue_id: Optional[str] = None
    patentability: Optional[float] = None


class ResearcherDetail(BaseModel):
    id: str
    name: str
    gender: Optional[str] = None
    rank: Optional[str] = None
    affiliation: Optional[str] = None
    metrics: dict[str, Any]
    p_index: Optional[float] = None
    papers: list[PaperSummary]


class RankedResearcher(BaseModel):
    id: str
    name: str
    citing_patent_count: int
    p_index: Optional[float] = None


class StatsResponse(BaseModel):
    researchers: int
    papers: int
    patents: int
    by_gender: dict[str, int]
    by_rank: dict[str, int]
    by_assignee_class: dict[str, int]
    papers_per_year: dict[str, int]
    patents_per_year: dict[str, int]
    top_researchers: list[RankedResearcher]


class SunburstChild(BaseModel):
    name: str
    count: int
    share: float


class SunburstClass(BaseModel):
    name: str
    count: int
    share: float
    children: list[SunburstChild]


class KeywordCount(BaseModel):
    term: str
    count: int


class AssigneesResponse(BaseModel):
    classes: list[SunburstClass]
    keywords: list[KeywordCount]


class TimelineResponse(BaseModel):
    window: list[int]
    series: dict[str, list[int]]


class RankedPaper(BaseModel):
    id: str
    title: str
    year: int
    venue_id: Optional[str] = None
    value: Optional[float] = None
    metrics: dict[str, Any]


class PapersResponse(BaseModel):
    rank: str
    papers: list[RankedPaper]


class InterplayResponse(BaseModel):
    model_config = ConfigDict(extra="forbid")

    columns: list[dict[str, Any]]
    rows: list[dict[str, Any]]
    cells: list[dict[str, Any]]
    icicle: dict[str, Any]
    flows: dict[str, Any]
    positions: dict[str, Any]
    diversity: dict[str, float]
    timelines: dict[str, Any]
