import type {
  ApiErrorBody,
  CaseView,
  ExternalContext,
  HealthView,
  ModelView,
  PatternView,
  PreferencesDraft,
  RecommendationResponse,
  StepInput,
} from "./types";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(code: string, message: string, status: number) {
    super(message);
    this.code = code;
    this.status = status;
  }
}

/** Thin typed client over the /api/v1 HTTP surface. The fetch function is
 * injectable so tests can run without a server. */
export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(base = "", fetchFn: FetchLike = (i, init) => fetch(i, init)) {
    this.base = base.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "Content-Type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchFn(`${this.base}/api/v1${path}`, init);
    if (!resp.ok) {
      let code = "INTERNAL";
      let message = `HTTP ${resp.status}`;
      try {
        const parsed = (await resp.json()) as ApiErrorBody;
        code = parsed.error.code;
        message = parsed.error.message;
      } catch {
        // keep the generic message
      }
      throw new ApiError(code, message, resp.status);
    }
    return (await resp.json()) as T;
  }

  health(): Promise<HealthView> {
    return this.request("GET", "/health");
  }

  appendEvents(events: object[]): Promise<{ accepted: number }> {
    return this.request("POST", "/events", events);
  }

  getCase(caseId: string): Promise<CaseView> {
    return this.request("GET", `/cases/${encodeURIComponent(caseId)}`);
  }

  listCases(): Promise<{ cases: { case_id: string; status: string }[] }> {
    return this.request("GET", "/cases");
  }

  model(context: string): Promise<ModelView> {
    return this.request("GET", `/model?context=${encodeURIComponent(context)}`);
  }

  patterns(context: string): Promise<{ patterns: PatternView[] }> {
    return this.request("GET", `/patterns?context=${encodeURIComponent(context)}`);
  }

  mine(preferences?: PreferencesDraft): Promise<{ patterns_by_context: Record<string, number> }> {
    return this.request("POST", "/mine", preferences ? { preferences } : {});
  }

  recommendations(
    trace: StepInput[],
    externalContext: string | ExternalContext,
    participant?: string,
    preferences?: PreferencesDraft,
  ): Promise<RecommendationResponse> {
    const body: Record<string, unknown> = {
      trace,
      external_context: externalContext,
    };
    if (participant) {
      body.participant = participant;
    }
    if (preferences && Object.keys(preferences).length > 0) {
      body.preferences = preferences;
    }
    return this.request("POST", "/recommendations", body);
  }
}
