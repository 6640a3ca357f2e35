import { ApiClient, ApiError } from "./api";
import { Session } from "./state";
import { renderError, renderItems, renderModel, renderPatterns, renderTrace } from "./render";
import type { PatternView, StepInput } from "./types";

const api = new ApiClient("");
const session = new Session(api);

let patterns: PatternView[] = [];
let selectedActivity: string | null = null;

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function value(id: string): string {
  return byId<HTMLInputElement>(id).value.trim();
}

function splitList(raw: string): string[] {
  return raw
    .split(",")
    .map((part) => part.trim())
    .filter((part) => part.length > 0);
}

async function redraw(): Promise<void> {
  const tracePane = byId("trace-pane");
  tracePane.replaceChildren(renderTrace(session.state.steps, session.state.status));

  const itemsPane = byId("items-pane");
  itemsPane.replaceChildren(
    renderItems(session.visibleItems(), session.state.previewItems !== null),
  );

  byId("error-pane").replaceChildren(renderError(session.state.error));
  byId("patterns-pane").replaceChildren(renderPatterns(patterns, selectedActivity));

  const clear = byId<HTMLButtonElement>("clear-what-if");
  clear.disabled = session.state.previewItems === null;
}

async function refreshModel(): Promise<void> {
  const contextId = session.state.contextId;
  const pane = byId("model-pane");
  if (!contextId) {
    pane.replaceChildren();
    return;
  }
  try {
    const model = await api.model(contextId);
    pane.replaceChildren(
      renderModel(model, (activity) => {
        selectedActivity = selectedActivity === activity ? null : activity;
        void redraw();
      }),
    );
  } catch (err) {
    if (err instanceof ApiError && err.code === "NOT_FOUND") {
      pane.replaceChildren();
      return;
    }
    throw err;
  }
}

async function refreshPatterns(): Promise<void> {
  const contextId = session.state.contextId;
  if (!contextId) {
    patterns = [];
    return;
  }
  try {
    const response = await api.patterns(contextId);
    patterns = response.patterns;
  } catch (err) {
    if (err instanceof ApiError && err.code === "NOT_FOUND") {
      patterns = [];
      return;
    }
    throw err;
  }
}

async function startSession(): Promise<void> {
  const caseId = value("case-id");
  const contextId = value("context-id");
  if (!caseId || !contextId) {
    byId("error-pane").replaceChildren(renderError("Case id and context id are required."));
    return;
  }
  await session.start(caseId, contextId, value("participant") || undefined);
  selectedActivity = null;
  await refreshPatterns();
  await refreshModel();
  await redraw();
}

function stepFromForm(): StepInput {
  const step: StepInput = {
    activity: value("step-activity"),
    participants: splitList(value("step-participants")),
    data: splitList(value("step-data")),
  };
  const tool = value("step-tool");
  if (tool) {
    step.tool = tool;
  }
  return step;
}

async function recordStep(closeCase: boolean): Promise<void> {
  const step = stepFromForm();
  if (!step.activity) {
    byId("error-pane").replaceChildren(renderError("Activity is required."));
    return;
  }
  const ok = await session.recordStep(step, closeCase ? "case_end" : "step");
  if (ok) {
    // Clear the draft only after the server accepted it.
    byId<HTMLInputElement>("step-activity").value = "";
  }
  await redraw();
}

async function previewContext(): Promise<void> {
  const id = value("what-if-id") || "what-if";
  const attrs: Record<string, string> = {};
  for (const pair of splitList(byId<HTMLTextAreaElement>("what-if-attrs").value)) {
    const eq = pair.indexOf("=");
    if (eq > 0) {
      attrs[pair.slice(0, eq).trim()] = pair.slice(eq + 1).trim();
    }
  }
  await session.whatIfContext({ id, attributes: attrs });
  await redraw();
}

async function mineNow(): Promise<void> {
  try {
    await api.mine();
  } catch (err) {
    if (err instanceof ApiError) {
      byId("error-pane").replaceChildren(renderError(`${err.code}: ${err.message}`));
      return;
    }
    throw err;
  }
  await refreshPatterns();
  await session.refresh();
  await redraw();
}

function wire(): void {
  byId("start-session").addEventListener("click", () => void startSession());
  byId("record-step").addEventListener("click", () => void recordStep(false));
  byId("record-end").addEventListener("click", () => void recordStep(true));
  byId("run-what-if").addEventListener("click", () => void previewContext());
  byId("clear-what-if").addEventListener("click", () => {
    session.clearWhatIf();
    void redraw();
  });
  byId("mine-now").addEventListener("click", () => void mineNow());
}

async function boot(): Promise<void> {
  wire();
  try {
    const health = await api.health();
    byId("health-pane").textContent =
      `server ${health.status} — ${health.events} events, ${health.patterns} patterns`;
  } catch {
    byId("health-pane").textContent = "server unreachable";
  }
}

if (typeof document !== "undefined" && document.getElementById("start-session")) {
  void boot();
}
