import type { GameStatePayload, HintPayload, NewGameRequest } from "./types.js";

/** A non-2xx API response; `rule` carries the server's rule name verbatim. */
export class ApiError extends Error {
  constructor(
    readonly rule: string,
    readonly status: number,
    detail?: string,
  ) {
    super(detail ? `${rule}: ${detail}` : rule);
    this.name = "ApiError";
  }
}

type FetchLike = typeof fetch;

/** Thin typed client over the /api/game endpoints — the UI's only way of
 * reading or mutating game state. */
export class GameApi {
  private readonly fetchImpl: FetchLike;

  constructor(
    private readonly base = "",
    fetchImpl?: FetchLike,
  ) {
    this.fetchImpl = fetchImpl ?? globalThis.fetch.bind(globalThis);
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(this.base + path, init);
    const body = (await resp
      .json()
      .catch(() => ({ error: "malformed-response" }))) as Record<string, unknown>;
    if (!resp.ok) {
      throw new ApiError(
        typeof body.error === "string" ? body.error : "unknown",
        resp.status,
        typeof body.detail === "string" ? body.detail : undefined,
      );
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  newGame(req: NewGameRequest): Promise<{ id: string }> {
    return this.post("/api/game", req);
  }

  getState(id: string): Promise<GameStatePayload> {
    return this.request(`/api/game/${id}`);
  }

  postMove(id: string, numbers: number[]): Promise<GameStatePayload> {
    return this.post(`/api/game/${id}/move`, { numbers });
  }

  getHint(id: string): Promise<HintPayload> {
    return this.request(`/api/game/${id}/hint`);
  }
}
