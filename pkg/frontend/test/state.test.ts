import { describe, expect, it } from "vitest";
import { ApiClient } from "../src/api";
import { Session } from "../src/state";
import { fakeFetch, type Route } from "./helpers";
import type { RecommendationItem } from "../src/types";

function item(patternId: string, confidence: number): RecommendationItem {
  return {
    pattern_id: patternId,
    continuation: [{ activity: "partner selection", profile: {} }],
    confidence,
    justification: `pattern ${patternId}`,
    breakdown: {
      structure_anchor_len: 1,
      internal_score: 1,
      external_score: confidence,
      confidence,
      per_dimension: {},
    },
  };
}

const caseView = (steps: { activity: string; context: Record<string, string[]> }[]) => ({
  case_id: "w1",
  external_context: "c1",
  status: "ongoing",
  steps,
});

const stepOne = {
  activity: "partner search",
  context: { participants: ["P2"], tool: ["search engine"], data: [], mode: ["email"] },
};

function sessionWith(routes: Route[]) {
  const { fetchFn, calls } = fakeFetch(routes);
  return { session: new Session(new ApiClient("", fetchFn)), calls };
}

describe("recordStep", () => {
  it("posts the event, then refetches trace and recommendations", async () => {
    const { session, calls } = sessionWith([
      { method: "POST", path: "/api/v1/events", body: { accepted: 1 } },
      { method: "GET", path: "/api/v1/cases/w1", body: caseView([stepOne]) },
      { method: "POST", path: "/api/v1/recommendations", body: { items: [item("p1", 1.0)] } },
    ]);
    session.state = { ...session.state, caseId: "w1", contextId: "c1" };

    const ok = await session.recordStep({
      activity: "partner search",
      participants: ["P2"],
      tool: "search engine",
      data: [],
    });

    expect(ok).toBe(true);
    expect(calls.map((c) => `${c.method} ${c.path}`)).toEqual([
      "POST /api/v1/events",
      "GET /api/v1/cases/w1",
      "POST /api/v1/recommendations",
    ]);
    const posted = calls[0].body as Record<string, unknown>[];
    expect(posted[0]).toMatchObject({ case_id: "w1", seq: 1, lifecycle: "step" });
    // trace mirrors the server response, not the local draft
    expect(session.state.steps).toEqual([stepOne]);
    // the refetched trace is replayed back in the recommendation request
    expect(calls[2].body).toMatchObject({
      trace: [
        {
          activity: "partner search",
          participants: ["P2"],
          tool: "search engine",
          data: [],
          attrs: { mode: "email" },
        },
      ],
      external_context: "c1",
    });
    expect(session.state.items.map((i) => i.pattern_id)).toEqual(["p1"]);
  });

  it("keeps state untouched when the server rejects the event", async () => {
    const { session, calls } = sessionWith([
      {
        method: "POST",
        path: "/api/v1/events",
        status: 422,
        body: { error: { code: "ORDERING", message: "seq out of order" } },
      },
    ]);
    session.state = { ...session.state, caseId: "w1", contextId: "c1", steps: [stepOne] };

    const ok = await session.recordStep({ activity: "bad", participants: [], data: [] });

    expect(ok).toBe(false);
    expect(session.state.error).toBe("ORDERING: seq out of order");
    expect(session.state.steps).toEqual([stepOne]);
    // no refetch after a rejected append
    expect(calls).toHaveLength(1);
  });
});

describe("whatIfContext", () => {
  it("never writes events and restores the live view afterwards", async () => {
    const live = [item("live", 1.0)];
    const preview = [item("preview", 0.75)];
    const { session, calls } = sessionWith([
      { method: "POST", path: "/api/v1/recommendations", body: { items: preview } },
    ]);
    session.state = { ...session.state, caseId: "w1", contextId: "c1", items: live };

    await session.whatIfContext({ id: "c2-like", attributes: { market: "renovation" } });

    expect(calls.every((c) => !c.path.endsWith("/events"))).toBe(true);
    expect(calls[0].body).toMatchObject({
      external_context: { id: "c2-like", attributes: { market: "renovation" } },
    });
    expect(session.visibleItems()).toEqual(preview);
    expect(session.state.items).toEqual(live);

    session.clearWhatIf();
    expect(session.visibleItems()).toEqual(live);
    expect(session.state.previewContext).toBeNull();
  });
});

describe("ranking", () => {
  it("preserves the API order verbatim", async () => {
    const ordered = [item("b", 0.9), item("a", 0.9), item("c", 0.4)];
    const { session } = sessionWith([
      { method: "POST", path: "/api/v1/recommendations", body: { items: ordered } },
    ]);
    session.state = { ...session.state, caseId: "w1", contextId: "c1" };

    await session.whatIfContext({ id: "x", attributes: {} });

    expect(session.visibleItems().map((i) => i.pattern_id)).toEqual(["b", "a", "c"]);
  });
});

describe("start", () => {
  it("treats an unknown case as a fresh one and still asks for recommendations", async () => {
    const { session, calls } = sessionWith([
      { method: "POST", path: "/api/v1/recommendations", body: { items: [item("p1", 1.0)] } },
    ]);

    await session.start("brand-new", "c1", "P2");

    expect(calls[0].path).toBe("/api/v1/cases/brand-new");
    expect(calls[1].path).toBe("/api/v1/recommendations");
    expect((calls[1].body as { participant?: string }).participant).toBe("P2");
    expect(session.state.steps).toEqual([]);
    expect(session.state.items.map((i) => i.pattern_id)).toEqual(["p1"]);
  });
});
