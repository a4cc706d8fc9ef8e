import type { QueryFilter } from "./types.js";

export type Mode = "historical" | "prediction";

/**
 * The single source of truth for every view. Each distinct state maps to
 * exactly one request key per endpoint, so refetching is a pure function
 * of state and the whole session round-trips through the URL.
 */
export interface ViewState {
  paperYears: [number, number] | null;
  patentYears: [number, number] | null;
  fieldIds: string[];
  cpcPrefixes: string[];
  researcherIds: string[];
  level: string;
  bins: string;
  mode: Mode;
  minPct: number | null;
  selectedResearchers: string[];
  highlightedGroup: string | null;
  starredCells: string[]; // "column|row" keys rendered as star glyphs
}

export function initialState(): ViewState {
  return {
    paperYears: null,
    patentYears: null,
    fieldIds: [],
    cpcPrefixes: [],
    researcherIds: [],
    level: "L1",
    bins: "0,1,3,8,21",
    mode: "historical",
    minPct: null,
    selectedResearchers: [],
    highlightedGroup: null,
    starredCells: [],
  };
}

export function toFilter(state: ViewState): QueryFilter {
  const filter: QueryFilter = {};
  if (state.paperYears) filter.paper_year_range = state.paperYears;
  if (state.patentYears) filter.patent_year_range = state.patentYears;
  if (state.fieldIds.length) filter.field_ids = [...state.fieldIds].sort();
  if (state.cpcPrefixes.length) filter.cpc_prefixes = [...state.cpcPrefixes].sort();
  if (state.researcherIds.length) {
    filter.researcher_ids = [...state.researcherIds].sort();
  }
  return filter;
}

function filterParam(state: ViewState): string | null {
  const filter = toFilter(state);
  return Object.keys(filter).length ? JSON.stringify(filter) : null;
}

export function interplayParams(state: ViewState): Record<string, string> {
  const params: Record<string, string> = { level: state.level, bins: state.bins };
  const raw = filterParam(state);
  if (raw) params.filter = raw;
  if (state.mode === "prediction") {
    params.mode = "prediction";
    if (state.minPct !== null) params.min_pct = String(state.minPct);
  }
  return params;
}

export function statsParams(state: ViewState): Record<string, string> {
  const raw = filterParam(state);
  return raw ? { filter: raw } : {};
}

/** Canonical cache key: endpoint plus its sorted query string. */
export function requestKey(endpoint: string, params: Record<string, string>): string {
  const pairs = Object.keys(params)
    .sort()
    .map((k) => `${k}=${params[k]}`);
  return `${endpoint}?${pairs.join("&")}`;
}

const URL_KEYS = [
  "py",
  "ty",
  "fields",
  "cpc",
  "rids",
  "level",
  "bins",
  "mode",
  "minpct",
  "sel",
  "star",
] as const;

export function toUrl(state: ViewState): string {
  const q = new URLSearchParams();
  if (state.paperYears) q.set("py", state.paperYears.join(":"));
  if (state.patentYears) q.set("ty", state.patentYears.join(":"));
  if (state.fieldIds.length) q.set("fields", state.fieldIds.join(","));
  if (state.cpcPrefixes.length) q.set("cpc", state.cpcPrefixes.join(","));
  if (state.researcherIds.length) q.set("rids", state.researcherIds.join(","));
  if (state.level !== "L1") q.set("level", state.level);
  if (state.bins !== "0,1,3,8,21") q.set("bins", state.bins);
  if (state.mode !== "historical") q.set("mode", state.mode);
  if (state.minPct !== null) q.set("minpct", String(state.minPct));
  if (state.selectedResearchers.length) q.set("sel", state.selectedResearchers.join(","));
  if (state.starredCells.length) q.set("star", state.starredCells.join(","));
  const text = q.toString();
  return text ? `#${text}` : "#";
}

function parseRange(raw: string | null): [number, number] | null {
  if (!raw) return null;
  const parts = raw.split(":").map(Number);
  if (parts.length !== 2 || parts.some(Number.isNaN)) return null;
  return [parts[0], parts[1]];
}

function parseList(raw: string | null): string[] {
  return raw ? raw.split(",").filter(Boolean) : [];
}

export function fromUrl(hash: string): ViewState {
  const state = initialState();
  const q = new URLSearchParams(hash.replace(/^#/, ""));
  for (const key of [...q.keys()]) {
    if (!URL_KEYS.includes(key as (typeof URL_KEYS)[number])) q.delete(key);
  }
  state.paperYears = parseRange(q.get("py"));
  state.patentYears = parseRange(q.get("ty"));
  state.fieldIds = parseList(q.get("fields"));
  state.cpcPrefixes = parseList(q.get("cpc"));
  state.researcherIds = parseList(q.get("rids"));
  state.level = q.get("level") ?? "L1";
  state.bins = q.get("bins") ?? "0,1,3,8,21";
  state.mode = q.get("mode") === "prediction" ? "prediction" : "historical";
  const minPct = q.get("minpct");
  state.minPct = minPct === null ? null : Number(minPct);
  state.selectedResearchers = parseList(q.get("sel"));
  state.starredCells = parseList(q.get("star"));
  return state;
}
