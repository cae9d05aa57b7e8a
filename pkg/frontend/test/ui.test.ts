/**
 * Round-trip tests against the real service plus unit tests for the pure
 * view-model pieces. The service is spawned as a subprocess on the two
 * person / one facility fixture; nothing is affordable at the default
 * budget, so the flow is: default ratio 1.0, raise the budget and pin the
 * hall closed for ratio 0.0, then slide the budget to 0 for ratio 1.0 again.
 */

import { spawn, ChildProcess } from "node:child_process";
import { fileURLToPath } from "node:url";
import path from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError, ServiceClient } from "../src/api.js";
import type { SummaryResponse } from "../src/api.js";
import {
  LatestWins,
  buildRequest,
  buildView,
  cycleMark,
  emptyEdits,
  sortRows,
} from "../src/state.js";
import { renderCurveSvg, renderGaugeSvg } from "../src/chart.js";

const here = path.dirname(fileURLToPath(import.meta.url));
const FIXTURE = path.join(here, "fixtures", "f1.json");
const PORT = 18100 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;
let client: ServiceClient;
let summary: SummaryResponse;

beforeAll(async () => {
  service = spawn(
    "python3",
    ["-m", "riskcut.cli", "serve", "--in", FIXTURE, "--port", String(PORT)],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  client = new ServiceClient(BASE);
  const deadline = Date.now() + 20000;
  while (Date.now() < deadline) {
    if (await client.healthz()) break;
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  if (!(await client.healthz())) throw new Error("service did not come up");
  summary = await client.getSummary();
}, 30000);

afterAll(() => {
  service?.kill();
});

describe("round trip against the running service", () => {
  it("loads the summary headline numbers", () => {
    expect(summary.nPeople).toBe(2);
    expect(summary.nFacilities).toBe(1);
    expect(summary.budget).toBe(4.0);
    expect(summary.facilities.closureCosts).toEqual([10.0]);
    expect(summary.facilities.labels).toEqual(["community hall"]);
  });

  it("renders ratio 1.0 for the default scenario", async () => {
    const edits = emptyEdits();
    const response = await client.postScenario(buildRequest(edits));
    const view = buildView(summary, response, edits);
    expect(view.ratio).toBe(1.0);
    expect(view.closedCount).toBe(0);
    expect(view.isolatedCount).toBe(0);
    expect(view.curve).toHaveLength(101);
    expect(view.facilities[0]?.name).toBe("community hall");
    expect(view.facilities[0]?.closed).toBe(false);
  });

  it("renders ratio 0.0 after pinning the hall closed with budget to match", async () => {
    const edits = emptyEdits();
    edits.budget = 12;
    edits.facilityMarks[0] = "pin";
    const request = buildRequest(edits);
    expect(request).toEqual({ budget: 12, forcedClosures: [0] });
    const response = await client.postScenario(request);
    const view = buildView(summary, response, edits);
    expect(view.ratio).toBe(0.0);
    expect(view.facilities[0]?.closed).toBe(true);
    expect(view.facilities[0]?.forced).toBe(true);
    expect(view.spent).toBe(10.0);
  });

  it("renders ratio 1.0 with the budget slider at zero", async () => {
    const edits = emptyEdits();
    edits.budget = 0;
    const response = await client.postScenario(buildRequest(edits));
    const view = buildView(summary, response, edits);
    expect(view.ratio).toBe(1.0);
    expect(view.spent).toBe(0.0);
  });

  it("pins the evaluated split when asked", async () => {
    const edits = emptyEdits();
    edits.splitPercent = 40;
    const response = await client.postScenario(buildRequest(edits));
    expect(response.evaluatedSplit).toBe(40);
    expect(response.splitCurve).toHaveLength(101);
  });

  it("surfaces service rejections as ApiError without retrying", async () => {
    const error = await client
      .postScenario({ forcedClosures: [7] })
      .then(() => null)
      .catch((err: unknown) => err);
    expect(error).toBeInstanceOf(ApiError);
    expect((error as ApiError).status).toBe(400);
  });

  it("reports 422 when a pin cannot fit the budget", async () => {
    const error = await client
      .postScenario({ forcedClosures: [0] }) // default budget 4 < cost 10
      .then(() => null)
      .catch((err: unknown) => err);
    expect((error as ApiError).status).toBe(422);
  });
});

describe("view-model pieces", () => {
  it("cycles facility marks none -> pin -> exclude -> none", () => {
    expect(cycleMark("none")).toBe("pin");
    expect(cycleMark("pin")).toBe("exclude");
    expect(cycleMark("exclude")).toBe("none");
  });

  it("builds requests only from active edits", () => {
    const edits = emptyEdits();
    expect(buildRequest(edits)).toEqual({});
    edits.facilityMarks[3] = "exclude";
    edits.facilityMarks[1] = "pin";
    edits.facilityMarks[2] = "none";
    expect(buildRequest(edits)).toEqual({ forcedClosures: [1], excludedFacilities: [3] });
  });

  it("discards stale responses, latest wins", () => {
    const guard = new LatestWins();
    const first = guard.next();
    const second = guard.next();
    expect(guard.accept(second)).toBe(true);
    expect(guard.accept(first)).toBe(false);
    expect(guard.accept(guard.next())).toBe(true);
  });

  it("sorts facility rows by the chosen column with stable ids", () => {
    const rows = [
      { id: 0, name: "a", size: 10, cost: 8, risk: 2, closed: false, forced: false, excluded: false },
      { id: 1, name: "b", size: 30, cost: 4, risk: 2, closed: false, forced: false, excluded: false },
      { id: 2, name: "c", size: 20, cost: 6, risk: 0, closed: false, forced: false, excluded: false },
    ];
    expect(sortRows(rows, "efficiency").map((r) => r.id)).toEqual([1, 0, 2]);
    expect(sortRows(rows, "size", true).map((r) => r.id)).toEqual([1, 2, 0]);
  });

  it("renders the curve and gauge as self-contained svg", () => {
    const curve = Array.from({ length: 101 }, (_, split) => ({ split, ratio: 1 - split / 200 }));
    const svg = renderCurveSvg(curve, 100, 40);
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain("polyline");
    expect(svg).toContain("best-dot");
    expect(renderGaugeSvg(0.5)).toContain("0.500");
  });

  it("retries transport failures with backoff, then succeeds", async () => {
    let calls = 0;
    const flaky = async (url: string): Promise<Response> => {
      calls += 1;
      if (calls < 3) throw new TypeError("connection refused");
      return new Response(JSON.stringify({ ok: true, url }), { status: 200 });
    };
    const retryClient = new ServiceClient("http://example.invalid", flaky, 1);
    const result = await retryClient.getSummary();
    expect(calls).toBe(3);
    expect((result as unknown as { ok: boolean }).ok).toBe(true);
  });

  it("does not retry http errors", async () => {
    let calls = 0;
    const denying = async (): Promise<Response> => {
      calls += 1;
      return new Response(JSON.stringify({ detail: "nope" }), { status: 400 });
    };
    const noRetryClient = new ServiceClient("http://example.invalid", denying, 1);
    await expect(noRetryClient.getSummary()).rejects.toBeInstanceOf(ApiError);
    expect(calls).toBe(1);
  });
});
