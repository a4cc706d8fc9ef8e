import { linear, proportional } from "../scales.js";
import type { ScatterResponse } from "../types.js";

const SVG = "http://www.w3.org/2000/svg";

export interface ScatterOptions {
  width?: number;
  height?: number;
  onSelect?: (researcherId: string) => void;
}

/** Researcher scatter with a density layer drawn from the server's KDE grid. */
export class ScatterView {
  private readonly width: number;
  private readonly height: number;

  constructor(
    private readonly container: HTMLElement,
    private readonly opts: ScatterOptions = {},
  ) {
    this.width = opts.width ?? 520;
    this.height = opts.height ?? 420;
  }

  render(data: ScatterResponse): void {
    this.container.textContent = "";
    const svg = document.createElementNS(SVG, "svg");
    svg.setAttribute("width", String(this.width));
    svg.setAttribute("height", String(this.height));
    svg.setAttribute("class", "scatter");

    const xs = data.points.map((p) => p.x).filter((v): v is number => v !== null);
    const ys = data.points.map((p) => p.y).filter((v): v is number => v !== null);
    const pad = 24;
    const sx = linear(
      [Math.min(0, ...xs), Math.max(1, ...xs)],
      [pad, this.width - pad],
    );
    const sy = linear(
      [Math.min(0, ...ys), Math.max(1, ...ys)],
      [this.height - pad, pad],
    );

    if (data.contour) {
      const { x, y, density } = data.contour;
      const flat = density.flat();
      const alpha = proportional(Math.max(...flat, 1e-12), 0.6);
      const layer = document.createElementNS(SVG, "g");
      layer.setAttribute("class", "density");
      const cellW = Math.abs(sx(x[1] ?? 1) - sx(x[0] ?? 0));
      const cellH = Math.abs(sy(y[0] ?? 0) - sy(y[1] ?? 1));
      density.forEach((rowVals, yi) => {
        rowVals.forEach((v, xi) => {
          if (v <= 0) return;
          const rect = document.createElementNS(SVG, "rect");
          rect.setAttribute("x", String(sx(x[xi]) - cellW / 2));
          rect.setAttribute("y", String(sy(y[yi]) - cellH / 2));
          rect.setAttribute("width", String(cellW));
          rect.setAttribute("height", String(cellH));
          rect.setAttribute("class", "density-cell");
          rect.setAttribute("opacity", String(alpha(v)));
          layer.appendChild(rect);
        });
      });
      svg.appendChild(layer);
    }

    for (const point of data.points) {
      if (point.x === null || point.y === null) continue;
      const dot = document.createElementNS(SVG, "circle");
      dot.setAttribute("cx", String(sx(point.x)));
      dot.setAttribute("cy", String(sy(point.y)));
      dot.setAttribute("r", "4");
      dot.setAttribute("class", "point");
      dot.setAttribute("data-id", point.id);
      if (point.p_index !== null) {
        dot.setAttribute("data-p-index", String(point.p_index));
      }
      dot.addEventListener("click", () => this.opts.onSelect?.(point.id));
      svg.appendChild(dot);
    }

    const caption = document.createElementNS(SVG, "text");
    caption.setAttribute("x", String(this.width / 2));
    caption.setAttribute("y", String(this.height - 4));
    caption.setAttribute("text-anchor", "middle");
    caption.setAttribute("class", "axis-caption");
    caption.textContent = `${data.x_metric} vs ${data.y_metric}`;
    svg.appendChild(caption);

    this.container.appendChild(svg);
  }
}
