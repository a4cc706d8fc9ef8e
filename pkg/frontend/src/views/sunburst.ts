import { proportional } from "../scales.js";
import type { AssigneesResponse } from "../types.js";

const SVG = "http://www.w3.org/2000/svg";

function arcPath(
  cx: number,
  cy: number,
  r0: number,
  r1: number,
  a0: number,
  a1: number,
): string {
  const large = a1 - a0 > Math.PI ? 1 : 0;
  const p = (r: number, a: number) => `${cx + r * Math.sin(a)} ${cy - r * Math.cos(a)}`;
  return [
    `M ${p(r0, a0)}`,
    `A ${r0} ${r0} 0 ${large} 1 ${p(r0, a1)}`,
    `L ${p(r1, a1)}`,
    `A ${r1} ${r1} 0 ${large} 0 ${p(r1, a0)}`,
    "Z",
  ].join(" ");
}

/** Two-ring assignee sunburst plus a keyword list sized by frequency. */
export class SunburstView {
  private readonly size: number;

  constructor(
    private readonly container: HTMLElement,
    size = 360,
  ) {
    this.size = size;
  }

  render(data: AssigneesResponse): void {
    this.container.textContent = "";
    const svg = document.createElementNS(SVG, "svg");
    svg.setAttribute("width", String(this.size));
    svg.setAttribute("height", String(this.size));
    svg.setAttribute("class", "sunburst");
    const cx = this.size / 2;
    const cy = this.size / 2;
    const r = this.size / 2 - 4;

    let angle = 0;
    for (const cls of data.classes) {
      const span = 2 * Math.PI * cls.share;
      const inner = document.createElementNS(SVG, "path");
      inner.setAttribute("d", arcPath(cx, cy, r * 0.35, r * 0.65, angle, angle + span));
      inner.setAttribute("class", "ring class-ring");
      inner.setAttribute("data-name", cls.name);
      inner.setAttribute("data-count", String(cls.count));
      svg.appendChild(inner);

      // Children subdivide the parent's angular span by their own shares.
      const childTotal = cls.children.reduce((acc, c) => acc + c.share, 0) || 1;
      let childAngle = angle;
      for (const child of cls.children) {
        const childSpan = span * (child.share / childTotal);
        const outer = document.createElementNS(SVG, "path");
        outer.setAttribute(
          "d",
          arcPath(cx, cy, r * 0.65, r, childAngle, childAngle + childSpan),
        );
        outer.setAttribute("class", "ring child-ring");
        outer.setAttribute("data-name", child.name);
        outer.setAttribute("data-count", String(child.count));
        svg.appendChild(outer);
        childAngle += childSpan;
      }
      angle += span;
    }
    this.container.appendChild(svg);

    const cloud = document.createElement("div");
    cloud.className = "keyword-cloud";
    const maxCount = Math.max(1, ...data.keywords.map((k) => k.count));
    const fontSize = proportional(maxCount, 18);
    for (const kw of data.keywords) {
      const span = document.createElement("span");
      span.className = "keyword";
      span.textContent = kw.term;
      span.style.fontSize = `${(8 + fontSize(kw.count)).toFixed(1)}px`;
      span.setAttribute("data-count", String(kw.count));
      cloud.appendChild(span);
    }
    this.container.appendChild(cloud);
  }
}
