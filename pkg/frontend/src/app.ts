import { CatalogApi } from "./api.js";
import { DataCardPage } from "./datacard.js";
import { decodeState } from "./hashstate.js";
import { REGION_MAP } from "./region-map.js";
import { SearchPage } from "./search.js";
import { StatsPage } from "./stats.js";

/** Hash router: #/search?<filters>, #/dataset/<index>, #/stats. */
export function createApp(root: HTMLElement, api = new CatalogApi("")): { route: () => Promise<void> } {
  root.innerHTML = `
    <nav class="topnav">
      <strong>datashelf</strong>
      <a href="#/search">Search</a>
      <a href="#/stats">Stats</a>
    </nav>
    <div class="page"></div>`;
  const page = root.querySelector<HTMLElement>(".page")!;

  async function route(): Promise<void> {
    const hash = window.location.hash || "#/search";
    const cardMatch = hash.match(/^#\/dataset\/(-?\d+)/);
    if (cardMatch) {
      await new DataCardPage(page, api).render(Number(cardMatch[1]));
      return;
    }
    if (hash.startsWith("#/stats")) {
      await new StatsPage(page, api, (index) => {
        window.location.hash = `#/dataset/${index}`;
      }).render();
      return;
    }
    const queryStart = hash.indexOf("?");
    const initial = queryStart >= 0 ? decodeState(hash.slice(queryStart + 1)) : undefined;
    await new SearchPage(page, api, REGION_MAP, 250, initial).init();
  }

  window.addEventListener("hashchange", (event: HashChangeEvent) => {
    // Filter-state updates rewrite the hash without needing a re-route.
    const stripped = (u: string) => u.replace(/^.*#/, "#").split("?")[0];
    if (stripped(event.oldURL) === stripped(event.newURL)) return;
    void route();
  });
  return { route };
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const app = createApp(document.getElementById("app")!);
  void app.route();
}
