/**
 * Typed client for the what-if service.
 *
 * All risk numbers come from the server; this module only moves JSON.
 * Network failures are retried with exponential backoff, HTTP errors are
 * surfaced as ApiError and never retried.
 */

export interface SolutionDto {
  closedFacilities: number[];
  isolatedPeople: number[];
  spent: number;
}

export interface RiskReportDto {
  facilityRisk: number[];
  personRisk: number[];
  totalRisk: number;
  baselineRisk: number;
  ratio: number;
}

export interface CurvePointDto {
  split: number;
  spentIsolation: number;
  spentClosure: number;
  totalRisk: number;
  ratio: number;
}

export interface ScenarioResponse {
  solution: SolutionDto;
  riskReport: RiskReportDto;
  splitCurve: CurvePointDto[];
  bestSplit: number;
  evaluatedSplit: number;
  spentIsolation: number;
  spentClosure: number;
  budget: number;
}

export interface FacilityStaticDto {
  sizes: number[];
  closureCosts: number[];
  labels: string[] | null;
}

export interface SummaryResponse {
  nPeople: number;
  nFacilities: number;
  budget: number;
  baselineRisk: number;
  summary: unknown;
  facilities: FacilityStaticDto;
}

export interface ScenarioRequest {
  budget?: number;
  splitPercent?: number;
  forcedClosures?: number[];
  forcedIsolations?: number[];
  excludedFacilities?: number[];
  excludedPeople?: number[];
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`service returned ${status}: ${detail}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

const RETRYABLE_ATTEMPTS = 3;
const BACKOFF_MS = 250;

const sleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

export class ServiceClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
    private readonly backoffMs: number = BACKOFF_MS,
  ) {}

  async getSummary(): Promise<SummaryResponse> {
    return this.request<SummaryResponse>("/instance/summary", { method: "GET" });
  }

  async postScenario(request: ScenarioRequest): Promise<ScenarioResponse> {
    return this.request<ScenarioResponse>("/scenario", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
  }

  async healthz(): Promise<boolean> {
    try {
      const response = await this.fetchFn(`${this.baseUrl}/healthz`, { method: "GET" });
      return response.ok;
    } catch {
      return false;
    }
  }

  /** GET/POST with backoff on transport errors only; 4xx/5xx throw ApiError. */
  private async request<T>(path: string, init: RequestInit): Promise<T> {
    let lastError: unknown = null;
    for (let attempt = 0; attempt < RETRYABLE_ATTEMPTS; attempt++) {
      if (attempt > 0) await sleep(this.backoffMs * 2 ** (attempt - 1));
      let response: Response;
      try {
        response = await this.fetchFn(`${this.baseUrl}${path}`, init);
      } catch (err) {
        lastError = err; // network failure: retry
        continue;
      }
      if (!response.ok) {
        let detail = response.statusText;
        try {
          const body = (await response.json()) as { detail?: unknown };
          if (body && body.detail !== undefined) detail = JSON.stringify(body.detail);
        } catch {
          // non-JSON error body; keep the status text
        }
        throw new ApiError(response.status, detail);
      }
      return (await response.json()) as T;
    }
    throw new Error(`network failure after ${RETRYABLE_ATTEMPTS} attempts: ${String(lastError)}`);
  }
}
