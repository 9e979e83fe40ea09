import { describe, expect, it, vi } from "vitest";
import { ApiClient, ApiError } from "../src/api.js";
import type { ExecuteResponse, SessionCreated } from "../src/types.js";
import sessionFixture from "./fixtures/session_figure1.json";
import filterFixture from "./fixtures/execute_filter.json";

const session = sessionFixture as unknown as SessionCreated;
const filterRun = filterFixture as unknown as ExecuteResponse;

function jsonResponse(body: unknown, status = 200): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    statusText: String(status),
    text: () => Promise.resolve(JSON.stringify(body)),
  } as unknown as Response;
}

describe("ApiClient request shapes", () => {
  it("creates a session from a fixture name", async () => {
    const fetchImpl = vi.fn(() => Promise.resolve(jsonResponse(session)));
    const client = new ApiClient("http://svc:7878", fetchImpl);
    const created = await client.createSession({ fixture: "figure1" });
    expect(created.session_id).toBe(session.session_id);
    expect(fetchImpl).toHaveBeenCalledOnce();
    const [url, init] = fetchImpl.mock.calls[0] as unknown as [string, RequestInit];
    expect(url).toBe("http://svc:7878/sessions");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body as string)).toEqual({ fixture: "figure1" });
    expect((init.headers as Record<string, string>)["Content-Type"]).toBe(
      "application/json",
    );
  });

  it("trims trailing slashes off the base URL", async () => {
    const fetchImpl = vi.fn(() => Promise.resolve(jsonResponse([])));
    const client = new ApiClient("http://svc:7878///", fetchImpl);
    await client.listFixtures();
    const [url] = fetchImpl.mock.calls[0] as unknown as [string];
    expect(url).toBe("http://svc:7878/fixtures");
  });

  it("sends grade submissions with the exercise id", async () => {
    const fetchImpl = vi.fn(() => Promise.resolve(jsonResponse({ verdict: "correct" })));
    const client = new ApiClient("http://svc", fetchImpl);
    await client.grade("abc", "filter-1", "data |> filter(red == 3)");
    const [url, init] = fetchImpl.mock.calls[0] as unknown as [string, RequestInit];
    expect(url).toBe("http://svc/sessions/abc/grade");
    expect(JSON.parse(init.body as string)).toEqual({
      exercise_id: "filter-1",
      source: "data |> filter(red == 3)",
    });
  });

  it("raises a typed error with the service detail on failure", async () => {
    const fetchImpl = vi.fn(() =>
      Promise.resolve(jsonResponse({ detail: "unknown session" }, 404)),
    );
    const client = new ApiClient("http://svc", fetchImpl);
    await expect(client.exportSession("nope")).rejects.toThrowError(ApiError);
    await expect(client.exportSession("nope")).rejects.toThrowError(
      /404.*unknown session/,
    );
  });
});

describe("execute sequencing", () => {
  it("returns the payload for the newest run", async () => {
    const fetchImpl = vi.fn(() => Promise.resolve(jsonResponse(filterRun)));
    const client = new ApiClient("http://svc", fetchImpl);
    const result = await client.execute("abc", "data |> filter(red > 3)", true);
    expect(result).not.toBeNull();
    expect(result!.stages).toHaveLength(1);
    const [url, init] = fetchImpl.mock.calls[0] as unknown as [string, RequestInit];
    expect(url).toBe("http://svc/sessions/abc/execute");
    expect(JSON.parse(init.body as string)).toEqual({
      source: "data |> filter(red > 3)",
      preview: true,
    });
  });

  it("discards a stale response once a newer run is in flight", async () => {
    const resolvers: Array<(r: Response) => void> = [];
    const fetchImpl = vi.fn(
      () =>
        new Promise<Response>((resolve) => {
          resolvers.push(resolve);
        }),
    );
    const client = new ApiClient("http://svc", fetchImpl);
    const slow = client.execute("abc", "data |> filter(red > 3)", true);
    const fast = client.execute("abc", "data |> filter(red > 4)", true);
    // the older request happens to answer first; it must still be dropped
    resolvers[0]!(jsonResponse(filterRun));
    resolvers[1]!(jsonResponse(filterRun));
    expect(await slow).toBeNull();
    expect(await fast).not.toBeNull();
  });

  it("keeps later runs working after a discarded one", async () => {
    const resolvers: Array<(r: Response) => void> = [];
    const fetchImpl = vi.fn(
      () =>
        new Promise<Response>((resolve) => {
          resolvers.push(resolve);
        }),
    );
    const client = new ApiClient("http://svc", fetchImpl);
    const first = client.execute("abc", "data", true);
    const second = client.execute("abc", "data", true);
    resolvers[1]!(jsonResponse(filterRun));
    resolvers[0]!(jsonResponse(filterRun));
    expect(await first).toBeNull();
    expect(await second).not.toBeNull();
    const third = client.execute("abc", "data", false);
    resolvers[2]!(jsonResponse(filterRun));
    expect(await third).not.toBeNull();
  });
});
