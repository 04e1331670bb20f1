/** Wire types mirroring the service JSON. The client never computes covers
 * or ranks; these shapes are consumed as delivered. */

export interface SpaceJson {
  label: string;
  points: string[];
  coords?: Record<string, number[]>;
  metric: { kind: "taxicab" } | { kind: "matrix"; rows: number[][] };
  lattice?: { steps: number[]; box: number };
}

export interface CoverJson {
  space: string;
  s: number[];
  D: number;
  families: string[][][];
}

export interface RoundJson {
  r: number;
  k: number;
  cover: CoverJson;
}

export interface TranscriptJson {
  space: string;
  config: { bound: number; kcap: number; rmax: number; mode: string };
  rounds: RoundJson[];
  status: "ongoing" | "a-wins" | "b-wins" | "aborted";
  pending_r: number | null;
  failed_r: number | null;
  stabilization_round: number | null;
}

export interface MoveResponse {
  id: string;
  state: TranscriptJson;
  status: string;
  round?: RoundJson;
}

export interface CreateResponse {
  id: string;
  state: TranscriptJson;
}

export interface ExportResponse {
  transcript: TranscriptJson;
  space: SpaceJson;
}

export interface TreeResponse {
  nodes: number[][];
  config?: Record<string, unknown>;
  rank: number | null;
  node_ranks: Array<[number[], number]>;
}

export interface ServiceError {
  error: string;
  detail: string;
}
