/** Wire types for the sciflow query API. Field names match the JSON bodies. */

export interface QueryFilter {
  researcher_ids?: string[];
  paper_year_range?: [number, number];
  patent_year_range?: [number, number];
  field_ids?: string[];
  cpc_prefixes?: string[];
  min_patentability?: number;
}

export interface MatrixColumn {
  id: string;
  label: string;
  x: number;
}

export interface MatrixRow {
  lo: number;
  hi: number | null;
  label: string;
}

export interface MatrixCell {
  column: string;
  row: number;
  count: number;
  paper_ids: string[];
  mean_patent_citation: number | null;
  glyph: Array<number | null>;
}

export interface IcicleNode {
  id: string;
  label: string;
  level: string;
  count: number;
  children: IcicleNode[];
}

export interface FlowEdge {
  column: string;
  row: number | null; // null on column-level aggregates
  group: string;
  weight: number;
}

export interface FlowSet {
  mode: "historical" | "prediction";
  cell_edges: FlowEdge[];
  column_edges: FlowEdge[];
}

export interface Positions {
  fields: Record<string, number>;
  patents: Record<string, number>;
  ordering: string[];
  objective: number;
}

export interface Timelines {
  window: [number, number];
  years: number[];
  fields: Record<string, number[]>;
  groups: Record<string, number[]>;
}

export interface InterplayPayload {
  columns: MatrixColumn[];
  rows: MatrixRow[];
  cells: MatrixCell[];
  icicle: { roots: IcicleNode[] };
  flows: FlowSet;
  positions: Positions;
  diversity: Record<string, number>;
  timelines: Timelines;
}

export interface ScatterPoint {
  id: string;
  x: number | null;
  y: number | null;
  p_index: number | null;
}

export interface ContourGrid {
  x: number[];
  y: number[];
  density: number[][];
}

export interface ScatterResponse {
  x_metric: string;
  y_metric: string;
  points: ScatterPoint[];
  contour: ContourGrid | null;
}

export interface RankedResearcher {
  id: string;
  name: string;
  citing_patent_count: number;
  p_index: number | null;
}

export interface StatsResponse {
  researchers: number;
  papers: number;
  patents: number;
  by_gender: Record<string, number>;
  by_rank: Record<string, number>;
  by_assignee_class: Record<string, number>;
  papers_per_year: Record<string, number>;
  patents_per_year: Record<string, number>;
  top_researchers: RankedResearcher[];
}

export interface SunburstChild {
  name: string;
  count: number;
  share: number;
}

export interface SunburstClass {
  name: string;
  count: number;
  share: number;
  children: SunburstChild[];
}

export interface KeywordCount {
  term: string;
  count: number;
}

export interface AssigneesResponse {
  classes: SunburstClass[];
  keywords: KeywordCount[];
}

export interface TimelineResponse {
  window: [number, number];
  series: Record<string, number[]>;
}

export interface RankedPaper {
  id: string;
  title: string;
  year: number;
  venue_id: string | null;
  value: number | null;
  metrics: Record<string, unknown>;
}

export interface PapersResponse {
  rank: string;
  papers: RankedPaper[];
}

export interface PaperSummary {
  id: string;
  title: string;
  year: number;
  venue_id: string | null;
  patentability: number | null;
}

export interface ResearcherDetail {
  id: string;
  name: string;
  gender: string | null;
  rank: string | null;
  affiliation: string | null;
  metrics: Record<string, unknown>;
  p_index: number | null;
  papers: PaperSummary[];
}

/** Axis labels for the six-spoke cell glyph, in payload order. */
export const GLYPH_LABELS = [
  "team size",
  "institutions",
  "grants",
  "citations 5y",
  "disruption",
  "novelty",
] as const;
