import type { RegionMap } from "./region-map.js";

/** Sidebar selections; every value comes from /datasets/tags responses. */
export interface FilterState {
  tasks: string[];
  dialect: { regions: string[]; countries: string[] };
  access: string[];
  license: string[];
  year: [number, number] | null;
}

export function emptyFilterState(): FilterState {
  return { tasks: [], dialect: { regions: [], countries: [] }, access: [], license: [], year: null };
}

function quote(value: string): string {
  if (!value.includes("'")) return `'${value}'`;
  if (!value.includes('"')) return `"${value}"`;
  throw new Error(`facet value mixes both quote characters: ${value}`);
}

function orChain(feature: string, values: string[]): string | null {
  if (values.length === 0) return null;
  const parts = values.map((v) => `${feature}==${quote(v)}`);
  return parts.length === 1 ? parts[0] : `(${parts.join(" or ")})`;
}

/** Expand selected regions into their countries, preserving order, deduplicated. */
export function dialectCountries(state: FilterState, regionMap: RegionMap): string[] {
  const out: string[] = [];
  for (const region of state.dialect.regions) {
    for (const country of regionMap[region] ?? []) {
      if (!out.includes(country)) out.push(country);
    }
  }
  for (const country of state.dialect.countries) {
    if (!out.includes(country)) out.push(country);
  }
  return out;
}

/**
 * Lower the facet state onto the filtration query language: conjunction
 * across facets, disjunction within a facet. An empty state compiles to the
 * empty query (all records).
 */
export function compileFilters(state: FilterState, regionMap: RegionMap): string {
  const groups: (string | null)[] = [
    orChain("Tasks", state.tasks),
    orChain("Dialect", dialectCountries(state, regionMap)),
    orChain("Access", state.access),
    orChain("License", state.license),
  ];
  if (state.year) {
    const [lo, hi] = state.year;
    groups.push(`Year>=${lo} and Year<=${hi}`);
  }
  return groups.filter((g): g is string => g !== null).join(" and ");
}
