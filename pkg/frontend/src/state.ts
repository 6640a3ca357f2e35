import { ApiClient, ApiError } from "./api";
import type {
  ExternalContext,
  PreferencesDraft,
  RecommendationItem,
  StepInput,
  TraceStep,
} from "./types";

export interface SessionState {
  caseId: string | null;
  /** Mirror of the server's trace; refetched after every append, never
   * updated optimistically. */
  steps: TraceStep[];
  status: "ongoing" | "completed" | null;
  contextId: string | null;
  participant: string | null;
  /** Ranked exactly as the API returned them; confidences are never
   * recomputed client-side. */
  items: RecommendationItem[];
  /** Non-null while a what-if preview is shown instead of the live view. */
  previewContext: ExternalContext | null;
  previewItems: RecommendationItem[] | null;
  preferencesDraft: PreferencesDraft;
  error: string | null;
}

export function initialState(): SessionState {
  return {
    caseId: null,
    steps: [],
    status: null,
    contextId: null,
    participant: null,
    items: [],
    previewContext: null,
    previewItems: null,
    preferencesDraft: {},
    error: null,
  };
}

function toStepInput(step: TraceStep): StepInput {
  const ctx = step.context;
  const attrs: Record<string, string> = {};
  for (const [dim, values] of Object.entries(ctx)) {
    if (dim === "participants" || dim === "tool" || dim === "data") {
      continue;
    }
    if (values.length > 0) {
      attrs[dim] = values[0];
    }
  }
  const input: StepInput = {
    activity: step.activity,
    participants: ctx.participants ?? [],
    data: ctx.data ?? [],
  };
  if (ctx.tool && ctx.tool.length > 0) {
    input.tool = ctx.tool[0];
  }
  if (Object.keys(attrs).length > 0) {
    input.attrs = attrs;
  }
  return input;
}

export class Session {
  state: SessionState = initialState();

  constructor(private readonly api: ApiClient) {}

  async start(caseId: string, contextId: string, participant?: string): Promise<void> {
    this.state = {
      ...initialState(),
      caseId,
      contextId,
      participant: participant ?? null,
    };
    try {
      await this.refresh();
    } catch (err) {
      if (err instanceof ApiError && err.code === "NOT_FOUND") {
        // fresh case: no events on the server yet
        await this.refreshRecommendations();
        return;
      }
      throw err;
    }
  }

  /** Refetch the server trace and the live recommendations. */
  async refresh(): Promise<void> {
    if (!this.state.caseId) {
      return;
    }
    const view = await this.api.getCase(this.state.caseId);
    this.state = {
      ...this.state,
      steps: view.steps,
      status: view.status,
      contextId: view.external_context,
      error: null,
    };
    await this.refreshRecommendations();
  }

  private async refreshRecommendations(): Promise<void> {
    if (!this.state.contextId) {
      return;
    }
    const response = await this.api.recommendations(
      this.state.steps.map(toStepInput),
      this.state.contextId,
      this.state.participant ?? undefined,
      this.state.preferencesDraft,
    );
    this.state = { ...this.state, items: response.items };
  }

  /** Record one performed activity: POST the event, then refetch trace and
   * recommendations. A server rejection surfaces as state.error and leaves
   * the mirrored trace untouched. */
  async recordStep(step: StepInput, lifecycle: "step" | "case_end" = "step"): Promise<boolean> {
    if (!this.state.caseId || !this.state.contextId) {
      throw new Error("no active session");
    }
    const event = {
      ...step,
      case_id: this.state.caseId,
      seq: this.state.steps.length + 1,
      external_context: this.state.contextId,
      lifecycle,
    };
    try {
      await this.api.appendEvents([event]);
    } catch (err) {
      if (err instanceof ApiError) {
        this.state = { ...this.state, error: `${err.code}: ${err.message}` };
        return false;
      }
      throw err;
    }
    await this.refresh();
    return true;
  }

  /** Preview recommendations under a hypothetical external context without
   * writing any event. The live view stays intact until clearWhatIf(). */
  async whatIfContext(context: ExternalContext): Promise<void> {
    const response = await this.api.recommendations(
      this.state.steps.map(toStepInput),
      context,
      this.state.participant ?? undefined,
      this.state.preferencesDraft,
    );
    this.state = {
      ...this.state,
      previewContext: context,
      previewItems: response.items,
    };
  }

  clearWhatIf(): void {
    this.state = { ...this.state, previewContext: null, previewItems: null };
  }

  /** Items to display: the preview when one is active, else the live list. */
  visibleItems(): RecommendationItem[] {
    return this.state.previewItems ?? this.state.items;
  }

  setPreferencesDraft(draft: PreferencesDraft): void {
    this.state = { ...this.state, preferencesDraft: draft };
  }
}
