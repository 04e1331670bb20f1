import type {
  CreateResponse,
  ExportResponse,
  MoveResponse,
  ServiceError,
  SpaceJson,
  TranscriptJson,
  TreeResponse,
} from "./types.js";

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    detail: string,
  ) {
    super(detail);
  }
}

/** Thin typed client over the session service; the fetch implementation is
 * injectable so tests can replay captured responses. */
export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = (await resp.json()) as T | ServiceError;
    if (resp.status >= 400) {
      const err = payload as ServiceError;
      throw new ApiError(resp.status, err.error ?? "error", err.detail ?? "request failed");
    }
    return payload as T;
  }

  listSpaces(): Promise<{ spaces: string[] }> {
    return this.request("GET", "/spaces");
  }

  uploadSpace(space: SpaceJson): Promise<{ label: string }> {
    return this.request("POST", "/spaces", space);
  }

  createGame(opts: {
    space: string;
    bound: number;
    kcap: number;
    rmax: number;
  }): Promise<CreateResponse> {
    return this.request("POST", "/games", opts);
  }

  move(sessionId: string, r: number): Promise<MoveResponse> {
    return this.request("POST", `/games/${sessionId}/move`, { r });
  }

  getGame(sessionId: string): Promise<TranscriptJson> {
    return this.request("GET", `/games/${sessionId}`);
  }

  exportGame(sessionId: string): Promise<ExportResponse> {
    return this.request("GET", `/games/${sessionId}/export`);
  }

  empiricalTree(opts: {
    space: string;
    rmax: number;
    lmax: number;
    bound: number;
    variant?: string;
  }): Promise<TreeResponse> {
    const variant = opts.variant ?? "nondecreasing";
    const query =
      `space=${encodeURIComponent(opts.space)}&rmax=${opts.rmax}` +
      `&lmax=${opts.lmax}&bound=${opts.bound}&variant=${variant}`;
    return this.request("GET", `/trees/empirical?${query}`);
  }
}
