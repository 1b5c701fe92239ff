import { emptyFilterState, type FilterState } from "./filters.js";

/** FilterState <-> URL hash params, so filtered views are shareable links. */

export function encodeState(state: FilterState): string {
  const params = new URLSearchParams();
  for (const t of state.tasks) params.append("task", t);
  for (const r of state.dialect.regions) params.append("region", r);
  for (const c of state.dialect.countries) params.append("country", c);
  for (const a of state.access) params.append("access", a);
  for (const l of state.license) params.append("license", l);
  if (state.year) {
    params.set("ylo", String(state.year[0]));
    params.set("yhi", String(state.year[1]));
  }
  return params.toString();
}

export function decodeState(encoded: string): FilterState {
  const params = new URLSearchParams(encoded);
  const state = emptyFilterState();
  state.tasks = params.getAll("task");
  state.dialect.regions = params.getAll("region");
  state.dialect.countries = params.getAll("country");
  state.access = params.getAll("access");
  state.license = params.getAll("license");
  const lo = params.get("ylo");
  const hi = params.get("yhi");
  if (lo !== null && hi !== null && !Number.isNaN(+lo) && !Number.isNaN(+hi)) {
    state.year = [Number(lo), Number(hi)];
  }
  return state;
}
