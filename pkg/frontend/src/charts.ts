import type { ClusterPoint, StatsEntry } from "./types.js";

/** Dependency-free SVG chart renderers for the stats dashboard. */

const SVG_NS = "http://www.w3.org/2000/svg";

const PALETTE = [
  "#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2",
  "#eeca3b", "#b279a2", "#ff9da6", "#9d755d", "#bab0ac",
];

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K, attrs: Record<string, string | number> = {}) {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, String(v));
  return el;
}

function emptyState(container: HTMLElement): void {
  const note = document.createElement("p");
  note.className = "chart-empty";
  note.textContent = "no data";
  container.appendChild(note);
}

export function renderBarChart(title: string, entries: StatsEntry[], maxBars = 20): HTMLElement {
  const container = document.createElement("section");
  container.className = "chart-card bar-chart";
  const heading = document.createElement("h3");
  heading.textContent = title;
  container.appendChild(heading);

  const shown = entries.slice(0, maxBars);
  if (shown.length === 0) {
    emptyState(container);
    return container;
  }
  const rowH = 22;
  const labelW = 180;
  const barW = 260;
  const max = Math.max(...shown.map((e) => e.count));
  const svg = svgEl("svg", {
    width: labelW + barW + 50,
    height: shown.length * rowH + 4,
    role: "img",
  });
  shown.forEach((entry, i) => {
    const y = i * rowH;
    const label = svgEl("text", { x: labelW - 6, y: y + 15, "text-anchor": "end", class: "bar-label" });
    label.textContent = String(entry.value);
    svg.appendChild(label);
    const width = max > 0 ? (entry.count / max) * barW : 0;
    svg.appendChild(
      svgEl("rect", { x: labelW, y: y + 3, width: Math.max(width, 1), height: rowH - 8, class: "bar", fill: PALETTE[0] }),
    );
    const count = svgEl("text", { x: labelW + width + 4, y: y + 15, class: "bar-count" });
    count.textContent = String(entry.count);
    svg.appendChild(count);
  });
  container.appendChild(svg);
  return container;
}

function arcPath(cx: number, cy: number, r0: number, r1: number, a0: number, a1: number): string {
  const p = (r: number, a: number) => [cx + r * Math.cos(a), cy + r * Math.sin(a)];
  const [x0, y0] = p(r1, a0);
  const [x1, y1] = p(r1, a1);
  const [x2, y2] = p(r0, a1);
  const [x3, y3] = p(r0, a0);
  const large = a1 - a0 > Math.PI ? 1 : 0;
  return (
    `M ${x0} ${y0} A ${r1} ${r1} 0 ${large} 1 ${x1} ${y1} ` +
    `L ${x2} ${y2} A ${r0} ${r0} 0 ${large} 0 ${x3} ${y3} Z`
  );
}

export function renderDoughnut(title: string, entries: StatsEntry[]): HTMLElement {
  const container = document.createElement("section");
  container.className = "chart-card doughnut-chart";
  const heading = document.createElement("h3");
  heading.textContent = title;
  container.appendChild(heading);

  const total = entries.reduce((acc, e) => acc + e.count, 0);
  if (total === 0) {
    emptyState(container);
    return container;
  }
  const size = 220;
  const cx = size / 2;
  const svg = svgEl("svg", { width: size, height: size, role: "img" });
  let angle = -Math.PI / 2;
  entries.forEach((entry, i) => {
    const sweep = (entry.count / total) * 2 * Math.PI;
    // A full-circle slice degenerates; cap just below 2*pi.
    const end = angle + Math.min(sweep, 2 * Math.PI - 1e-4);
    const path = svgEl("path", {
      d: arcPath(cx, cx, 55, 100, angle, end),
      fill: PALETTE[i % PALETTE.length],
      class: "doughnut-slice",
    });
    const slice = path as SVGPathElement;
    slice.setAttribute("data-value", String(entry.value));
    slice.setAttribute("data-count", String(entry.count));
    svg.appendChild(slice);
    angle += sweep;
  });
  container.appendChild(svg);

  const legend = document.createElement("ul");
  legend.className = "legend";
  entries.forEach((entry, i) => {
    const item = document.createElement("li");
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.backgroundColor = PALETTE[i % PALETTE.length];
    item.appendChild(swatch);
    item.appendChild(document.createTextNode(`${entry.value} (${entry.count})`));
    legend.appendChild(item);
  });
  container.appendChild(legend);
  return container;
}

export interface ScatterOptions {
  onSelect?: (index: number) => void;
  width?: number;
  height?: number;
}

export function renderScatter(points: ClusterPoint[], opts: ScatterOptions = {}): HTMLElement {
  const container = document.createElement("section");
  container.className = "chart-card cluster-scatter";
  const heading = document.createElement("h3");
  heading.textContent = "Cluster map";
  container.appendChild(heading);
  if (points.length === 0) {
    emptyState(container);
    return container;
  }

  const width = opts.width ?? 520;
  const height = opts.height ?? 380;
  const pad = 20;
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const xMin = Math.min(...xs), xMax = Math.max(...xs);
  const yMin = Math.min(...ys), yMax = Math.max(...ys);
  const sx = (x: number) => pad + ((x - xMin) / (xMax - xMin || 1)) * (width - 2 * pad);
  const sy = (y: number) => height - pad - ((y - yMin) / (yMax - yMin || 1)) * (height - 2 * pad);

  const tooltip = document.createElement("div");
  tooltip.className = "scatter-tooltip";
  tooltip.hidden = true;

  const svg = svgEl("svg", { width, height, role: "img" });
  for (const point of points) {
    const dot = svgEl("circle", {
      cx: sx(point.x),
      cy: sy(point.y),
      r: 5,
      fill: PALETTE[point.cluster % PALETTE.length],
      class: "scatter-dot",
    }) as SVGCircleElement;
    dot.setAttribute("data-index", String(point.index));
    dot.setAttribute("data-name", point.name ?? "");
    dot.addEventListener("mouseenter", () => {
      tooltip.textContent = point.name ?? `dataset ${point.index}`;
      tooltip.hidden = false;
    });
    dot.addEventListener("mouseleave", () => {
      tooltip.hidden = true;
    });
    if (opts.onSelect) {
      dot.addEventListener("click", () => opts.onSelect!(point.index));
    }
    svg.appendChild(dot);
  }
  container.appendChild(svg);
  container.appendChild(tooltip);
  return container;
}
