/**
 * Thin client for the cubeframes session service.
 *
 * Execute requests carry a sequence number: when several are in flight the
 * client resolves only the newest one and returns null for the rest, so a
 * slow early response can never overwrite a later result on screen.
 */

import type {
  ExecuteResponse,
  ExerciseInfo,
  FixtureInfo,
  GradeReport,
  SessionCreated,
  SessionExport,
  WireFrame,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`service responded ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private executeSeq = 0;

  constructor(
    public baseUrl: string = "http://127.0.0.1:7878",
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const text = await response.text();
    const payload = text ? JSON.parse(text) : null;
    if (!response.ok) {
      const detail =
        payload && typeof payload.detail === "string"
          ? payload.detail
          : response.statusText;
      throw new ApiError(response.status, detail);
    }
    return payload as T;
  }

  createSession(start: { fixture?: string; frame?: WireFrame }): Promise<SessionCreated> {
    return this.request("POST", "/sessions", start);
  }

  exportSession(sessionId: string): Promise<SessionExport> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  /**
   * Run a pipeline. Resolves null when a newer execute was issued before
   * this response arrived (the stale result must be discarded).
   */
  async execute(
    sessionId: string,
    source: string,
    preview: boolean,
  ): Promise<ExecuteResponse | null> {
    const seq = ++this.executeSeq;
    const response = await this.request<ExecuteResponse>(
      "POST",
      `/sessions/${sessionId}/execute`,
      { source, preview },
    );
    if (seq !== this.executeSeq) {
      return null;
    }
    return response;
  }

  grade(
    sessionId: string,
    exerciseId: string,
    source: string,
  ): Promise<GradeReport> {
    return this.request("POST", `/sessions/${sessionId}/grade`, {
      exercise_id: exerciseId,
      source,
    });
  }

  listExercises(): Promise<ExerciseInfo[]> {
    return this.request("GET", "/exercises");
  }

  listFixtures(): Promise<FixtureInfo[]> {
    return this.request("GET", "/fixtures");
  }
}
