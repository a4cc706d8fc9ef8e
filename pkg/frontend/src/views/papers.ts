import type { PapersResponse } from "../types.js";

/** Ranked paper cards; plain DOM, no SVG needed. */
export class PapersView {
  constructor(private readonly container: HTMLElement) {}

  render(data: PapersResponse): void {
    this.container.textContent = "";
    const list = document.createElement("ol");
    list.className = "paper-list";
    list.setAttribute("data-rank", data.rank);
    for (const paper of data.papers) {
      const item = document.createElement("li");
      item.className = "paper-card";
      item.setAttribute("data-id", paper.id);

      const title = document.createElement("span");
      title.className = "paper-title";
      title.textContent = paper.title;
      item.appendChild(title);

      const meta = document.createElement("span");
      meta.className = "paper-meta";
      const venue = paper.venue_id ?? "no venue";
      const value = paper.value === null ? "" : ` | ${data.rank}: ${paper.value}`;
      meta.textContent = `${paper.year} | ${venue}${value}`;
      item.appendChild(meta);

      list.appendChild(item);
    }
    this.container.appendChild(list);
  }
}
