/** Static region configuration: each country dialect belongs to exactly one region.
 *
 * The grouping is illustrative, not canonical; edit to match your catalogue's
 * dialect values.
 */
export type RegionMap = Record<string, string[]>;

export const REGION_MAP: RegionMap = {
  Gulf: ["Bahrain", "Kuwait", "Oman", "Qatar", "Saudi Arabia", "United Arab Emirates"],
  Levant: ["Jordan", "Lebanon", "Palestine", "Syria"],
  "North Africa": ["Algeria", "Egypt", "Libya", "Morocco", "Sudan", "Tunisia"],
  Mesopotamia: ["Iraq"],
  "South Arabia": ["Yemen"],
};
