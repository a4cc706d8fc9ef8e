import { ApiClient } from "./api.js";
import {
  fromUrl,
  initialState,
  interplayParams,
  statsParams,
  toUrl,
  type ViewState,
} from "./state.js";
import { HorizonView } from "./views/horizon.js";
import { InterplayView } from "./views/interplay.js";
import { PapersView } from "./views/papers.js";
import { ScatterView } from "./views/scatter.js";
import { StatsView } from "./views/stats.js";
import { SunburstView } from "./views/sunburst.js";

const FILTER_KEYS: Array<keyof ViewState> = [
  "paperYears",
  "patentYears",
  "fieldIds",
  "cpcPrefixes",
  "researcherIds",
];

const LEVELS = ["L0", "L1", "L2"];

function slot(parent: HTMLElement, id: string): HTMLElement {
  const div = document.createElement("div");
  div.id = id;
  parent.appendChild(div);
  return div;
}

export class App {
  state: ViewState;
  private interplay: InterplayView;
  private paperHorizon: HorizonView;
  private patentHorizon: HorizonView;
  private scatter: ScatterView;
  private stats: StatsView;
  private sunburst: SunburstView;
  private papers: PapersView;
  private status: HTMLElement;

  constructor(
    root: HTMLElement,
    private readonly api: ApiClient,
    hash: string = "",
  ) {
    this.state = hash ? fromUrl(hash) : initialState();
    this.status = slot(root, "status");
    this.interplay = new InterplayView(slot(root, "interplay"), {
      starredCells: new Set(this.state.starredCells),
      onCellToggle: (key, starred) => this.onCellToggle(key, starred),
      onGroupClick: (group) => this.onGroupClick(group),
      onColumnClick: () => this.cycleLevel(),
    });
    this.paperHorizon = new HorizonView(slot(root, "paper-horizon"), {
      onBrush: (range) => this.update({ paperYears: range }),
    });
    this.patentHorizon = new HorizonView(slot(root, "patent-horizon"), {
      onBrush: (range) => this.update({ patentYears: range }),
    });
    this.scatter = new ScatterView(slot(root, "scatter"), {
      onSelect: (id) => this.update({ selectedResearchers: [id] }),
    });
    this.stats = new StatsView(slot(root, "stats"));
    this.sunburst = new SunburstView(slot(root, "sunburst"));
    this.papers = new PapersView(slot(root, "papers"));
  }

  async start(): Promise<void> {
    await this.refetchAll();
  }

  /** Apply a state patch; refetch exactly the views whose inputs changed. */
  async update(patch: Partial<ViewState>): Promise<void> {
    const before = this.state;
    this.state = { ...before, ...patch };
    this.syncUrl();

    const filterChanged = FILTER_KEYS.some(
      (k) => JSON.stringify(before[k]) !== JSON.stringify(this.state[k]),
    );
    const interplayChanged =
      filterChanged ||
      before.level !== this.state.level ||
      before.bins !== this.state.bins ||
      before.mode !== this.state.mode ||
      before.minPct !== this.state.minPct;

    if (filterChanged) {
      await this.refetchAll();
    } else if (interplayChanged) {
      await this.refetchInterplay();
    }
    if (patch.highlightedGroup !== undefined) {
      this.interplay.highlightGroup(this.state.highlightedGroup);
    }
  }

  private syncUrl(): void {
    if (typeof window !== "undefined" && window.history?.replaceState) {
      window.history.replaceState(null, "", toUrl(this.state));
    }
  }

  private onCellToggle(key: string, starred: boolean): void {
    const cells = new Set(this.state.starredCells);
    if (starred) cells.add(key);
    else cells.delete(key);
    this.state = { ...this.state, starredCells: [...cells].sort() };
    this.syncUrl();
  }

  private onGroupClick(group: string): void {
    const next = this.state.highlightedGroup === group ? null : group;
    void this.update({ highlightedGroup: next });
  }

  private cycleLevel(): void {
    const i = LEVELS.indexOf(this.state.level);
    void this.update({ level: LEVELS[(i + 1) % LEVELS.length] });
  }

  private report(err: unknown): void {
    if (err instanceof DOMException && err.name === "AbortError") return;
    this.status.textContent = err instanceof Error ? err.message : String(err);
    this.status.className = "error";
  }

  async refetchInterplay(): Promise<void> {
    try {
      const payload = await this.api.interplay(interplayParams(this.state));
      this.interplay.render(payload);
      this.interplay.highlightGroup(this.state.highlightedGroup);
      this.paperHorizon.render(payload.timelines.years, payload.timelines.fields);
      this.patentHorizon.render(payload.timelines.years, payload.timelines.groups);
      this.status.textContent = "";
      this.status.className = "";
    } catch (err) {
      this.report(err);
    }
  }

  async refetchAll(): Promise<void> {
    const params = statsParams(this.state);
    const results = await Promise.allSettled([
      this.refetchInterplay(),
      this.api.stats(params).then((d) => this.stats.render(d)),
      this.api.researchers(params).then((d) => this.scatter.render(d)),
      this.api.assignees(params).then((d) => this.sunburst.render(d)),
      this.api.papers(params).then((d) => this.papers.render(d)),
    ]);
    for (const r of results) {
      if (r.status === "rejected") this.report(r.reason);
    }
  }
}
