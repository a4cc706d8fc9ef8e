import { proportional } from "../scales.js";
import type { StatsResponse } from "../types.js";

function barChart(title: string, counts: Record<string, number>): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "bar-chart";
  const heading = document.createElement("h4");
  heading.textContent = title;
  wrap.appendChild(heading);
  const max = Math.max(1, ...Object.values(counts));
  const width = proportional(max, 160);
  for (const [label, count] of Object.entries(counts)) {
    const row = document.createElement("div");
    row.className = "bar-row";
    row.setAttribute("data-label", label);
    const bar = document.createElement("div");
    bar.className = "bar";
    bar.style.width = `${width(count).toFixed(1)}px`;
    const text = document.createElement("span");
    text.textContent = `${label}: ${count}`;
    row.appendChild(bar);
    row.appendChild(text);
    wrap.appendChild(row);
  }
  return wrap;
}

/** Corpus overview: headline counts, distribution bars, top-cited card list. */
export class StatsView {
  constructor(
    private readonly container: HTMLElement,
    private readonly onResearcherClick?: (id: string) => void,
  ) {}

  render(data: StatsResponse): void {
    this.container.textContent = "";

    const headline = document.createElement("div");
    headline.className = "headline";
    headline.textContent =
      `${data.researchers} researchers | ${data.papers} papers | ${data.patents} patents`;
    this.container.appendChild(headline);

    this.container.appendChild(barChart("Gender", data.by_gender));
    this.container.appendChild(barChart("Rank", data.by_rank));
    this.container.appendChild(barChart("Assignee class", data.by_assignee_class));
    this.container.appendChild(barChart("Papers per year", data.papers_per_year));
    this.container.appendChild(barChart("Patents per year", data.patents_per_year));

    const cards = document.createElement("ol");
    cards.className = "top-researchers";
    for (const r of data.top_researchers) {
      const card = document.createElement("li");
      card.className = "researcher-card";
      card.setAttribute("data-id", r.id);
      const p = r.p_index === null ? "" : ` | p-index ${r.p_index.toFixed(1)}`;
      card.textContent = `${r.name} | cited by ${r.citing_patent_count} patents${p}`;
      card.addEventListener("click", () => this.onResearcherClick?.(r.id));
      cards.appendChild(card);
    }
    this.container.appendChild(cards);
  }
}
