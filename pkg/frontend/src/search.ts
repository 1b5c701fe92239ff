import { ApiError, CatalogApi } from "./api.js";
import { compileFilters, emptyFilterState, type FilterState } from "./filters.js";
import { encodeState } from "./hashstate.js";
import type { RegionMap } from "./region-map.js";
import type { DatasetRow } from "./types.js";

const TABLE_COLUMNS = ["Name", "Year", "Unit", "Dialect", "Tasks", "Access", "License"];
const INITIAL_TASKS = 20;

/**
 * Filterable dataset table. All filtering runs server-side: every sidebar
 * change compiles the facet state to a query and re-fetches, debounced, with
 * latest-wins cancellation of in-flight requests.
 */
export class SearchPage {
  state: FilterState;
  advancedQuery = "";
  private tagValues: Record<string, (string | number)[]> = {};
  private taskOrder: string[] = [];
  private tasksExpanded = false;
  private nameToIndex = new Map<string, number>();
  private inflight: AbortController | null = null;
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private lastRows: DatasetRow[] = [];

  constructor(
    private root: HTMLElement,
    private api: CatalogApi,
    private regionMap: RegionMap,
    private debounceMs = 250,
    initial?: FilterState,
  ) {
    this.state = initial ?? emptyFilterState();
  }

  async init(): Promise<void> {
    this.root.innerHTML = "";
    this.root.appendChild(this.buildSkeleton());
    try {
      const [tags, stats, names] = await Promise.all([
        this.api.tags(["Tasks", "Dialect", "Access", "License", "Year"]),
        this.api.stats().catch(() => ({})),
        this.api.datasets(undefined, ["Name"]),
      ]);
      this.tagValues = tags;
      const byFrequency = (stats as Record<string, { value: unknown; count: number }[]>).Tasks ?? [];
      const frequencyOrder = byFrequency.map((e) => String(e.value));
      const allTasks = (tags.Tasks ?? []).map(String);
      this.taskOrder = [
        ...frequencyOrder.filter((t) => allTasks.includes(t)),
        ...allTasks.filter((t) => !frequencyOrder.includes(t)),
      ];
      names.forEach((row, i) => {
        if (typeof row.Name === "string" && !this.nameToIndex.has(row.Name)) {
          this.nameToIndex.set(row.Name, i);
        }
      });
      this.renderSidebar();
      await this.refreshTable();
    } catch (err) {
      this.showBanner(`failed to load facets: ${(err as Error).message}`);
    }
  }

  /** The query sent to the API for the current UI state. */
  effectiveQuery(): string {
    const compiled = compileFilters(this.state, this.regionMap);
    const advanced = this.advancedQuery.trim();
    if (compiled && advanced) return `(${compiled}) and (${advanced})`;
    return compiled || advanced;
  }

  onStateChange(): void {
    window.location.hash = `#/search?${encodeState(this.state)}`;
    if (this.debounceTimer !== null) clearTimeout(this.debounceTimer);
    this.debounceTimer = setTimeout(() => {
      this.debounceTimer = null;
      void this.refreshTable();
    }, this.debounceMs);
  }

  async refreshTable(): Promise<void> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const rows = await this.api.datasets(this.effectiveQuery(), TABLE_COLUMNS, controller.signal);
      if (controller !== this.inflight) return; // a newer request superseded us
      this.lastRows = rows;
      this.hideBanner();
      this.renderTable(rows);
    } catch (err) {
      if ((err as Error).name === "AbortError") return;
      const detail =
        err instanceof ApiError && err.offset !== undefined
          ? `${err.message}: ${err.detail ?? ""} (offset ${err.offset})`
          : (err as Error).message;
      this.showBanner(detail);
    }
  }

  // -- DOM ---------------------------------------------------------------

  private buildSkeleton(): HTMLElement {
    const layout = document.createElement("div");
    layout.className = "search-layout";
    layout.innerHTML = `
      <aside class="sidebar"></aside>
      <main class="results">
        <div class="error-banner" hidden></div>
        <div class="table-holder"></div>
      </main>`;
    return layout;
  }

  private renderSidebar(): void {
    const sidebar = this.root.querySelector<HTMLElement>(".sidebar")!;
    sidebar.innerHTML = "";

    sidebar.appendChild(this.taskFacet());
    sidebar.appendChild(this.dialectFacet());
    sidebar.appendChild(this.checkboxFacet("Access", (this.tagValues.Access ?? []).map(String), this.state.access));
    sidebar.appendChild(this.checkboxFacet("License", (this.tagValues.License ?? []).map(String), this.state.license));
    sidebar.appendChild(this.yearFacet());

    const advanced = document.createElement("div");
    advanced.className = "facet facet-advanced";
    advanced.innerHTML = `<h4>Advanced query</h4>`;
    const input = document.createElement("input");
    input.type = "text";
    input.className = "advanced-query";
    input.placeholder = "Year>2003 and Unit=='tokens'";
    input.addEventListener("change", () => {
      this.advancedQuery = input.value;
      this.onStateChange();
    });
    advanced.appendChild(input);
    sidebar.appendChild(advanced);
  }

  private taskFacet(): HTMLElement {
    const facet = document.createElement("div");
    facet.className = "facet facet-tasks";
    facet.innerHTML = "<h4>Tasks</h4>";
    const list = document.createElement("div");
    const visible = this.tasksExpanded ? this.taskOrder : this.taskOrder.slice(0, INITIAL_TASKS);
    for (const task of visible) {
      list.appendChild(this.checkbox("Tasks", task, this.state.tasks));
    }
    facet.appendChild(list);
    if (this.taskOrder.length > INITIAL_TASKS) {
      const toggle = document.createElement("button");
      toggle.type = "button";
      toggle.className = "show-more";
      toggle.textContent = this.tasksExpanded
        ? "Show fewer"
        : `Show all ${this.taskOrder.length}`;
      toggle.addEventListener("click", () => {
        this.tasksExpanded = !this.tasksExpanded;
        this.renderSidebar();
      });
      facet.appendChild(toggle);
    }
    return facet;
  }

  private dialectFacet(): HTMLElement {
    const facet = document.createElement("div");
    facet.className = "facet facet-dialect";
    facet.innerHTML = "<h4>Dialect</h4><h5>Regions</h5>";
    const knownCountries = new Set((this.tagValues.Dialect ?? []).map(String));
    const regions = document.createElement("div");
    for (const region of Object.keys(this.regionMap)) {
      // Offer a region only when the catalogue contains one of its countries.
      if (!this.regionMap[region].some((c) => knownCountries.has(c))) continue;
      regions.appendChild(this.checkbox("Region", region, this.state.dialect.regions));
    }
    facet.appendChild(regions);
    const label = document.createElement("h5");
    label.textContent = "Countries";
    facet.appendChild(label);
    const countries = document.createElement("div");
    for (const value of knownCountries) {
      countries.appendChild(this.checkbox("Dialect", value, this.state.dialect.countries));
    }
    facet.appendChild(countries);
    return facet;
  }

  private checkboxFacet(title: string, values: string[], selected: string[]): HTMLElement {
    const facet = document.createElement("div");
    facet.className = `facet facet-${title.toLowerCase()}`;
    const heading = document.createElement("h4");
    heading.textContent = title;
    facet.appendChild(heading);
    for (const value of values) {
      facet.appendChild(this.checkbox(title, value, selected));
    }
    return facet;
  }

  private checkbox(group: string, value: string, selected: string[]): HTMLElement {
    const label = document.createElement("label");
    label.className = "facet-option";
    const box = document.createElement("input");
    box.type = "checkbox";
    box.value = value;
    box.dataset.group = group;
    box.checked = selected.includes(value);
    box.addEventListener("change", () => {
      const i = selected.indexOf(value);
      if (box.checked && i < 0) selected.push(value);
      if (!box.checked && i >= 0) selected.splice(i, 1);
      this.onStateChange();
    });
    label.appendChild(box);
    label.appendChild(document.createTextNode(value));
    return label;
  }

  private yearFacet(): HTMLElement {
    const facet = document.createElement("div");
    facet.className = "facet facet-year";
    facet.innerHTML = "<h4>Year</h4>";
    const years = (this.tagValues.Year ?? []).map(Number);
    const min = years.length ? Math.min(...years) : 2000;
    const max = years.length ? Math.max(...years) : 2022;
    const [currentLo, currentHi] = this.state.year ?? [min, max];

    const makeInput = (cls: string, value: number) => {
      const input = document.createElement("input");
      input.type = "number";
      input.className = cls;
      input.min = String(min);
      input.max = String(max);
      input.value = String(value);
      return input;
    };
    const lo = makeInput("year-lo", currentLo);
    const hi = makeInput("year-hi", currentHi);
    const apply = () => {
      const l = Number(lo.value);
      const h = Number(hi.value);
      this.state.year = l <= h ? [l, h] : [h, l];
      this.onStateChange();
    };
    lo.addEventListener("change", apply);
    hi.addEventListener("change", apply);
    facet.appendChild(lo);
    facet.appendChild(document.createTextNode(" to "));
    facet.appendChild(hi);
    return facet;
  }

  private renderTable(rows: DatasetRow[]): void {
    const holder = this.root.querySelector<HTMLElement>(".table-holder")!;
    holder.innerHTML = "";
    const count = document.createElement("p");
    count.className = "result-count";
    count.textContent = `${rows.length} dataset${rows.length === 1 ? "" : "s"}`;
    holder.appendChild(count);

    const table = document.createElement("table");
    table.className = "dataset-table";
    const thead = document.createElement("thead");
    const headRow = document.createElement("tr");
    for (const col of TABLE_COLUMNS) {
      const th = document.createElement("th");
      th.textContent = col;
      headRow.appendChild(th);
    }
    thead.appendChild(headRow);
    table.appendChild(thead);

    const tbody = document.createElement("tbody");
    for (const row of rows) {
      const tr = document.createElement("tr");
      for (const col of TABLE_COLUMNS) {
        const td = document.createElement("td");
        const value = row[col];
        if (col === "Name" && typeof value === "string" && this.nameToIndex.has(value)) {
          const link = document.createElement("a");
          link.href = `#/dataset/${this.nameToIndex.get(value)}`;
          link.textContent = value;
          td.appendChild(link);
        } else {
          td.textContent = Array.isArray(value) ? value.join(", ") : value === null ? "" : String(value);
        }
        tr.appendChild(td);
      }
      tbody.appendChild(tr);
    }
    table.appendChild(tbody);
    holder.appendChild(table);
  }

  private showBanner(message: string): void {
    const banner = this.root.querySelector<HTMLElement>(".error-banner")!;
    banner.hidden = false;
    banner.innerHTML = "";
    banner.appendChild(document.createTextNode(message + " "));
    const retry = document.createElement("button");
    retry.type = "button";
    retry.textContent = "Retry";
    retry.addEventListener("click", () => void this.refreshTable());
    banner.appendChild(retry);
    // The table keeps showing the last successful rows.
  }

  private hideBanner(): void {
    const banner = this.root.querySelector<HTMLElement>(".error-banner");
    if (banner) banner.hidden = true;
  }

  get visibleRows(): DatasetRow[] {
    return this.lastRows;
  }
}
