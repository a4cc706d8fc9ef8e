import { horizonBand, linear } from "../scales.js";

const SVG = "http://www.w3.org/2000/svg";

export interface HorizonOptions {
  width?: number;
  rowHeight?: number;
  bands?: number;
  onBrush?: (range: [number, number] | null) => void;
}

/**
 * Stacked horizon rows, one per series, with a shared year brush. Dragging
 * across the x axis selects an inclusive year range and reports it upward;
 * a click without movement clears the brush.
 */
export class HorizonView {
  private readonly width: number;
  private readonly rowHeight: number;
  private readonly bands: number;
  private years: number[] = [];
  private svg: SVGSVGElement | null = null;
  private brushRect: SVGRectElement | null = null;
  private dragStart: number | null = null;

  constructor(
    private readonly container: HTMLElement,
    private readonly opts: HorizonOptions = {},
  ) {
    this.width = opts.width ?? 720;
    this.rowHeight = opts.rowHeight ?? 28;
    this.bands = opts.bands ?? 3;
  }

  render(years: number[], series: Record<string, number[]>): void {
    this.container.textContent = "";
    this.years = years;
    const names = Object.keys(series).sort();
    const height = names.length * this.rowHeight + 20;
    const svg = document.createElementNS(SVG, "svg");
    svg.setAttribute("width", String(this.width));
    svg.setAttribute("height", String(height));
    svg.setAttribute("class", "horizon");

    const slot = this.width / Math.max(years.length, 1);
    names.forEach((name, rowIdx) => {
      const values = series[name];
      const max = Math.max(0, ...values);
      const row = document.createElementNS(SVG, "g");
      row.setAttribute("class", "horizon-row");
      row.setAttribute("data-series", name);
      values.forEach((value, i) => {
        const band = horizonBand(value, max, this.bands);
        const rect = document.createElementNS(SVG, "rect");
        rect.setAttribute("x", String(i * slot));
        rect.setAttribute("y", String(rowIdx * this.rowHeight));
        rect.setAttribute("width", String(slot));
        rect.setAttribute("height", String(this.rowHeight - 2));
        rect.setAttribute("class", `band band-${band}`);
        rect.setAttribute("data-year", String(this.years[i]));
        row.appendChild(rect);
      });
      const label = document.createElementNS(SVG, "text");
      label.setAttribute("x", "2");
      label.setAttribute("y", String(rowIdx * this.rowHeight + 12));
      label.setAttribute("class", "horizon-label");
      label.textContent = name;
      row.appendChild(label);
      svg.appendChild(row);
    });

    svg.addEventListener("mousedown", (ev) => this.beginBrush(ev));
    svg.addEventListener("mousemove", (ev) => this.moveBrush(ev));
    svg.addEventListener("mouseup", (ev) => this.endBrush(ev));
    this.svg = svg;
    this.container.appendChild(svg);
  }

  private yearAt(clientX: number): number {
    const left = this.svg?.getBoundingClientRect().left ?? 0;
    const scale = linear(
      [0, this.width],
      [0, Math.max(this.years.length - 1, 0)],
    );
    const idx = Math.round(scale(clientX - left));
    const clamped = Math.min(Math.max(idx, 0), this.years.length - 1);
    return this.years[clamped] ?? 0;
  }

  private beginBrush(ev: MouseEvent): void {
    if (!this.years.length) return;
    this.dragStart = ev.clientX;
    this.brushRect?.remove();
    this.brushRect = null;
  }

  private moveBrush(ev: MouseEvent): void {
    if (this.dragStart === null || !this.svg) return;
    if (!this.brushRect) {
      this.brushRect = document.createElementNS(SVG, "rect");
      this.brushRect.setAttribute("class", "brush");
      this.brushRect.setAttribute("y", "0");
      this.brushRect.setAttribute("height", this.svg.getAttribute("height") ?? "0");
      this.svg.appendChild(this.brushRect);
    }
    const left = this.svg.getBoundingClientRect().left;
    const x0 = Math.min(this.dragStart, ev.clientX) - left;
    const x1 = Math.max(this.dragStart, ev.clientX) - left;
    this.brushRect.setAttribute("x", String(x0));
    this.brushRect.setAttribute("width", String(x1 - x0));
  }

  private endBrush(ev: MouseEvent): void {
    if (this.dragStart === null) return;
    const start = this.dragStart;
    this.dragStart = null;
    if (ev.clientX === start) {
      // A plain click clears the selection.
      this.brushRect?.remove();
      this.brushRect = null;
      this.opts.onBrush?.(null);
      return;
    }
    const a = this.yearAt(Math.min(start, ev.clientX));
    const b = this.yearAt(Math.max(start, ev.clientX));
    this.opts.onBrush?.([a, b]);
  }
}
