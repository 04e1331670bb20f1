import { ApiClient, ApiError } from "./api.js";
import type { ExportResponse, SpaceJson, TranscriptJson } from "./types.js";

export type RenderMode = "1d" | "2d" | "list";

/** View state for one game session.  Everything displayed is derived from
 * service JSON; the only local rule is the pre-flight demand guard, which
 * mirrors the server's own validation to avoid a doomed request. */
export interface GameView {
  sessionId: string | null;
  space: SpaceJson | null;
  state: TranscriptJson | null;
  selectedRound: number | null;
  renderMode: RenderMode;
  busy: boolean;
  error: string | null;
}

export function newView(): GameView {
  return {
    sessionId: null,
    space: null,
    state: null,
    selectedRound: null,
    renderMode: "1d",
    busy: false,
    error: null,
  };
}

export function renderModeFor(space: SpaceJson | null): RenderMode {
  if (!space || !space.coords) return "list";
  const first = space.points[0];
  const dim = first !== undefined ? (space.coords[first]?.length ?? 0) : 0;
  if (dim === 1) return "1d";
  if (dim === 2) return "2d";
  return "list";
}

export function lastDemand(view: GameView): number | null {
  const rounds = view.state?.rounds ?? [];
  return rounds.length ? rounds[rounds.length - 1].r : null;
}

/** k values as rendered in the round list; used by tests to compare the
 * view against the raw transcript. */
export function renderedKValues(view: GameView): number[] {
  return (view.state?.rounds ?? []).map((round) => round.k);
}

export async function createGame(
  client: ApiClient,
  view: GameView,
  space: SpaceJson,
  opts: { bound: number; kcap: number; rmax: number },
): Promise<GameView> {
  await client.uploadSpace(space);
  const created = await client.createGame({ space: space.label, ...opts });
  return {
    ...newView(),
    sessionId: created.id,
    space,
    state: created.state,
    renderMode: renderModeFor(space),
  };
}

/** Play one round as B.  Demands below the previous one are rejected
 * locally without a request; while a move is in flight further moves are
 * refused (the UI disables input on `busy`). */
export async function playRound(
  client: ApiClient,
  view: GameView,
  r: number,
): Promise<GameView> {
  if (view.sessionId === null) {
    return { ...view, error: "no active session" };
  }
  if (view.busy) {
    return { ...view, error: "a move is already in flight" };
  }
  if (view.state && view.state.status !== "ongoing") {
    return { ...view, error: `game already ended (${view.state.status})` };
  }
  const prev = lastDemand(view);
  if (prev !== null && r < prev) {
    return { ...view, error: `demand ${r} is below the previous demand ${prev}` };
  }
  const pending: GameView = { ...view, busy: true, error: null };
  try {
    const moved = await client.move(view.sessionId, r);
    return {
      ...pending,
      busy: false,
      state: moved.state,
      selectedRound: moved.state.rounds.length ? moved.state.rounds.length - 1 : null,
    };
  } catch (err) {
    const detail = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    return { ...pending, busy: false, error: detail };
  }
}

export async function refresh(client: ApiClient, view: GameView): Promise<GameView> {
  if (view.sessionId === null) return view;
  const state = await client.getGame(view.sessionId);
  return { ...view, state };
}

export async function exportView(client: ApiClient, view: GameView): Promise<ExportResponse> {
  if (view.sessionId === null) throw new Error("no active session");
  return client.exportGame(view.sessionId);
}

/** Rebuild a view from an exported bundle; replaying an export must yield
 * the same rendered values as the live session it came from. */
export function importView(bundle: ExportResponse, sessionId: string | null = null): GameView {
  return {
    sessionId,
    space: bundle.space,
    state: bundle.transcript,
    selectedRound: bundle.transcript.rounds.length
      ? bundle.transcript.rounds.length - 1
      : null,
    renderMode: renderModeFor(bundle.space),
    busy: false,
    error: null,
  };
}

export interface StatusLine {
  text: string;
  ended: boolean;
  stabilized: number | null;
}

export function statusLine(view: GameView): StatusLine {
  const state = view.state;
  if (!state) return { text: "no game", ended: false, stabilized: null };
  const stabilized = state.stabilization_round;
  const parts: string[] = [];
  if (state.status === "a-wins") parts.push("A wins");
  else if (state.status === "b-wins") parts.push("B wins");
  else if (state.status === "aborted") parts.push("aborted");
  else parts.push(`round ${state.rounds.length + 1}`);
  if (stabilized !== null) parts.push(`stabilized at round ${stabilized}`);
  return {
    text: parts.join(", "),
    ended: state.status !== "ongoing",
    stabilized,
  };
}
