import { ApiError, CatalogApi } from "./api.js";
import { renderBarChart, renderDoughnut, renderScatter } from "./charts.js";

const DOUGHNUT_FEATURE = "Dialect";

/**
 * Stats dashboard: one bar chart per feature the service reports counts for,
 * a doughnut for the dialect distribution, and the cluster scatter.
 */
export class StatsPage {
  constructor(
    private root: HTMLElement,
    private api: CatalogApi,
    private onSelectDataset?: (index: number) => void,
  ) {}

  async render(): Promise<void> {
    this.root.innerHTML = "";
    const scatterHolder = document.createElement("div");
    scatterHolder.className = "scatter-holder";
    this.root.appendChild(scatterHolder);
    const grid = document.createElement("div");
    grid.className = "charts-grid";
    this.root.appendChild(grid);

    try {
      const clusters = await this.api.clusters();
      scatterHolder.appendChild(renderScatter(clusters, { onSelect: this.onSelectDataset }));
    } catch (err) {
      const placeholder = document.createElement("p");
      placeholder.className = "cluster-placeholder";
      placeholder.textContent =
        err instanceof ApiError && err.status === 503
          ? "Cluster map not available yet: the embedding model has not been built for this catalogue."
          : `Cluster map unavailable: ${(err as Error).message}`;
      scatterHolder.appendChild(placeholder);
    }

    const stats = await this.api.stats();
    for (const [feature, entries] of Object.entries(stats)) {
      grid.appendChild(renderBarChart(feature, entries));
    }
    if (DOUGHNUT_FEATURE in stats) {
      grid.appendChild(renderDoughnut(`${DOUGHNUT_FEATURE} share`, stats[DOUGHNUT_FEATURE]));
    }
  }
}
