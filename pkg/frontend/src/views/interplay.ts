import { proportional } from "../scales.js";
import type { FlowEdge, IcicleNode, InterplayPayload } from "../types.js";
import { GLYPH_LABELS } from "../types.js";

const SVG = "http://www.w3.org/2000/svg";
const MAX_STROKE = 16;

export interface InterplayOptions {
  width?: number;
  height?: number;
  /** Above this many cell edges the view falls back to column aggregates. */
  flowThreshold?: number;
  starredCells?: Set<string>;
  onCellToggle?: (cellKey: string, starred: boolean) => void;
  onGroupClick?: (group: string) => void;
  onColumnClick?: (columnId: string) => void;
}

interface Point {
  x: number;
  y: number;
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

function starPath(cx: number, cy: number, r: number): string {
  // Five-point star, outer radius r, inner radius 0.42r.
  const points: string[] = [];
  for (let i = 0; i < 10; i++) {
    const radius = i % 2 === 0 ? r : r * 0.42;
    const angle = -Math.PI / 2 + (i * Math.PI) / 5;
    points.push(`${cx + radius * Math.cos(angle)},${cy + radius * Math.sin(angle)}`);
  }
  return points.join(" ");
}

export class InterplayView {
  private readonly width: number;
  private readonly height: number;
  private readonly flowThreshold: number;
  private starred: Set<string>;
  private readonly opts: InterplayOptions;

  constructor(
    private readonly container: HTMLElement,
    opts: InterplayOptions = {},
  ) {
    this.width = opts.width ?? 960;
    this.height = opts.height ?? 620;
    this.flowThreshold = opts.flowThreshold ?? 400;
    this.starred = new Set(opts.starredCells ?? []);
    this.opts = opts;
  }

  render(payload: InterplayPayload): void {
    this.container.textContent = "";
    const svg = el("svg", {
      width: String(this.width),
      height: String(this.height),
      class: "interplay",
    });

    const matrixTop = 40;
    const matrixHeight = this.height * 0.45;
    const icicleTop = this.height * 0.72;
    const icicleHeight = this.height * 0.24;

    const order = payload.positions.ordering;
    const colWidth = this.width / Math.max(order.length, 1);
    const colCenter = new Map<string, number>();
    order.forEach((id, i) => colCenter.set(id, (i + 0.5) * colWidth));

    const rowHeight = matrixHeight / Math.max(payload.rows.length, 1);
    const cellCenter = (column: string, row: number): Point => ({
      x: colCenter.get(column) ?? this.width / 2,
      y: matrixTop + (row + 0.5) * rowHeight,
    });

    const groupCenter = this.drawIcicle(svg, payload.icicle.roots, icicleTop, icicleHeight);
    const flowLayer = this.drawFlows(svg, payload.flows, cellCenter, groupCenter, icicleTop);
    svg.appendChild(flowLayer);
    this.drawMatrix(svg, payload, matrixTop, rowHeight, colCenter, colWidth);
    this.drawGlyphLegend(svg);

    this.container.appendChild(svg);
  }

  private drawMatrix(
    svg: SVGSVGElement,
    payload: InterplayPayload,
    top: number,
    rowHeight: number,
    colCenter: Map<string, number>,
    colWidth: number,
  ): void {
    const labelById = new Map(payload.columns.map((c) => [c.id, c.label]));
    const layer = el("g", { class: "matrix" });

    for (const [id, cx] of colCenter) {
      const label = el("text", {
        x: String(cx),
        y: String(top - 18),
        "text-anchor": "middle",
        class: "column-label",
        "data-column": id,
      });
      label.textContent = labelById.get(id) ?? id;
      label.addEventListener("click", () => this.opts.onColumnClick?.(id));
      layer.appendChild(label);
    }

    payload.rows.forEach((row, i) => {
      const text = el("text", {
        x: "4",
        y: String(top + (i + 0.5) * rowHeight),
        class: "row-label",
      });
      text.textContent = row.label;
      layer.appendChild(text);
    });

    const maxCount = Math.max(1, ...payload.cells.map((c) => c.count));
    const radius = proportional(Math.sqrt(maxCount), Math.min(rowHeight, colWidth) * 0.38);
    for (const cell of payload.cells) {
      const key = `${cell.column}|${cell.row}`;
      const cx = colCenter.get(cell.column) ?? this.width / 2;
      const cy = top + (cell.row + 0.5) * rowHeight;
      const r = Math.max(3, radius(Math.sqrt(cell.count)));
      const group = el("g", { class: "cell", "data-cell": key });
      group.appendChild(this.glyphShape(key, cx, cy, r));
      this.drawGlyphSpokes(group, cell.glyph, cx, cy, r);
      group.addEventListener("click", () => this.toggleCell(group, key, cx, cy, r));
      layer.appendChild(group);
    }
    svg.appendChild(layer);
  }

  private glyphShape(key: string, cx: number, cy: number, r: number): SVGElement {
    if (this.starred.has(key)) {
      return el("polygon", {
        points: starPath(cx, cy, r),
        class: "cell-shape",
        "data-glyph": "star",
      });
    }
    return el("circle", {
      cx: String(cx),
      cy: String(cy),
      r: String(r),
      class: "cell-shape",
      "data-glyph": "circle",
    });
  }

  private toggleCell(group: SVGElement, key: string, cx: number, cy: number, r: number): void {
    const starred = !this.starred.has(key);
    if (starred) this.starred.add(key);
    else this.starred.delete(key);
    const old = group.querySelector(".cell-shape");
    if (old) group.replaceChild(this.glyphShape(key, cx, cy, r), old);
    this.opts.onCellToggle?.(key, starred);
  }

  private drawGlyphSpokes(
    group: SVGElement,
    glyph: Array<number | null>,
    cx: number,
    cy: number,
    r: number,
  ): void {
    glyph.forEach((value, i) => {
      if (value === null) return;
      const angle = -Math.PI / 2 + (i * 2 * Math.PI) / glyph.length;
      const len = r * value;
      group.appendChild(
        el("line", {
          x1: String(cx),
          y1: String(cy),
          x2: String(cx + len * Math.cos(angle)),
          y2: String(cy + len * Math.sin(angle)),
          class: "glyph-spoke",
          "data-metric": GLYPH_LABELS[i] ?? `metric ${i}`,
        }),
      );
    });
  }

  private drawGlyphLegend(svg: SVGSVGElement): void {
    const legend = el("g", { class: "glyph-legend" });
    GLYPH_LABELS.forEach((label, i) => {
      const text = el("text", {
        x: String(8 + i * 110),
        y: String(this.height - 6),
        class: "glyph-axis-label",
      });
      text.textContent = label;
      legend.appendChild(text);
    });
    svg.appendChild(legend);
  }

  private drawIcicle(
    svg: SVGSVGElement,
    roots: IcicleNode[],
    top: number,
    height: number,
  ): Map<string, number> {
    const layer = el("g", { class: "icicle" });
    const groupCenter = new Map<string, number>();
    const total = roots.reduce((acc, r) => acc + r.count, 0);
    const levelHeight = height / 3;

    // Upturned: sections sit at the bottom, groups on top facing the matrix.
    const place = (nodes: IcicleNode[], x0: number, x1: number, depth: number): void => {
      const sum = nodes.reduce((acc, n) => acc + n.count, 0);
      let x = x0;
      for (const node of nodes) {
        const w = sum > 0 ? ((x1 - x0) * node.count) / sum : 0;
        const y = top + (2 - depth) * levelHeight;
        const rect = el("rect", {
          x: String(x),
          y: String(y),
          width: String(Math.max(w, 0)),
          height: String(levelHeight - 1),
          class: `icicle-node level-${depth}`,
          "data-node": node.id,
        });
        rect.addEventListener("click", () => this.opts.onGroupClick?.(node.id));
        layer.appendChild(rect);
        const text = el("text", {
          x: String(x + w / 2),
          y: String(y + levelHeight / 2),
          "text-anchor": "middle",
          class: "icicle-label",
        });
        text.textContent = w > 30 ? node.label : "";
        layer.appendChild(text);
        if (node.children.length === 0 && depth === 2) {
          groupCenter.set(node.id, x + w / 2);
        }
        place(node.children, x, x + w, depth + 1);
        x += w;
      }
    };
    if (total > 0) place(roots, 0, this.width, 0);
    svg.appendChild(layer);
    return groupCenter;
  }

  private drawFlows(
    svg: SVGSVGElement,
    flows: InterplayPayload["flows"],
    cellCenter: (column: string, row: number) => Point,
    groupCenter: Map<string, number>,
    icicleTop: number,
  ): SVGElement {
    void svg;
    const layer = el("g", { class: "flows", "data-mode": flows.mode });
    let edges: FlowEdge[] = flows.cell_edges;
    if (edges.length > this.flowThreshold) {
      edges = flows.column_edges;
      const warning = el("text", {
        x: String(this.width / 2),
        y: "14",
        "text-anchor": "middle",
        class: "flow-warning",
      });
      warning.textContent =
        `${flows.cell_edges.length} flows exceed the detail limit; ` +
        "showing column-level aggregates";
      layer.appendChild(warning);
    }
    if (edges.length === 0) return layer;

    const widthOf = proportional(Math.max(...edges.map((e) => e.weight)), MAX_STROKE);
    for (const edge of edges) {
      const from = cellCenter(edge.column, edge.row ?? 2);
      const gx = groupCenter.get(edge.group);
      if (gx === undefined) continue; // group absent from the icicle
      const gy = icicleTop;
      const midY = (from.y + gy) / 2;
      const path = el("path", {
        d: `M ${from.x} ${from.y} C ${from.x} ${midY}, ${gx} ${midY}, ${gx} ${gy}`,
        class: "flow",
        fill: "none",
        "stroke-width": String(widthOf(edge.weight)),
        "data-group": edge.group,
        "data-column": edge.column,
        "data-weight": String(edge.weight),
      });
      layer.appendChild(path);
    }
    return layer;
  }

  /** Dim every flow not incident to `group`; null clears the highlight. */
  highlightGroup(group: string | null): void {
    for (const path of this.container.querySelectorAll<SVGPathElement>("path.flow")) {
      const match = group === null || path.dataset.group === group;
      path.classList.toggle("dimmed", !match);
    }
  }
}
