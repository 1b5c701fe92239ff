export type FieldValue = string | number | string[] | null;

export type DatasetRow = Record<string, FieldValue>;

export interface StatsEntry {
  value: FieldValue;
  count: number;
}

export type StatsPayload = Record<string, StatsEntry[]>;

export type TagsPayload = Record<string, (string | number)[]>;

export interface ClusterPoint {
  index: number;
  name: string | null;
  x: number;
  y: number;
  cluster: number;
}

export interface ReportBody {
  dataset_index: number;
  message: string;
  field?: string;
  reporter?: string;
}
