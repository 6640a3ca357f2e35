import type { ModelView, PatternView, RecommendationItem, TraceStep } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";

function el(tag: string, cls?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (cls) {
    node.className = cls;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

export function renderTrace(steps: TraceStep[], status: string | null): HTMLElement {
  const root = el("div", "trace");
  const heading = el("h3", undefined, `Recorded steps${status ? ` (${status})` : ""}`);
  root.appendChild(heading);
  const list = el("ol", "trace-steps");
  for (const step of steps) {
    const item = el("li");
    item.appendChild(el("span", "activity", step.activity));
    const detail = Object.entries(step.context)
      .filter(([, values]) => values.length > 0)
      .map(([dim, values]) => `${dim}: ${values.join(", ")}`)
      .join(" | ");
    if (detail) {
      item.appendChild(el("small", "context", detail));
    }
    list.appendChild(item);
  }
  root.appendChild(list);
  return root;
}

/** Render the ranked recommendations exactly in API order; every number shown
 * comes straight from the response. */
export function renderItems(items: RecommendationItem[], preview: boolean): HTMLElement {
  const root = el("div", preview ? "items preview" : "items");
  root.appendChild(el("h3", undefined, preview ? "What-if preview" : "Recommendations"));
  if (preview) {
    root.appendChild(el("p", "preview-note", "Hypothetical context — nothing was recorded."));
  }
  if (items.length === 0) {
    root.appendChild(el("p", "empty", "No pattern matches the current trace."));
    return root;
  }
  const list = el("ol", "item-list");
  for (const item of items) {
    const card = el("li", "item-card");
    card.dataset.patternId = item.pattern_id;
    const next = item.continuation.map((t) => t.activity).join(" → ") || "(complete)";
    card.appendChild(el("div", "continuation", next));
    card.appendChild(el("div", "confidence", `confidence ${item.confidence.toFixed(2)}`));
    const b = item.breakdown;
    card.appendChild(
      el(
        "div",
        "breakdown",
        `anchor ${b.structure_anchor_len} | internal ${b.internal_score.toFixed(2)} | ` +
          `external ${b.external_score.toFixed(2)}`,
      ),
    );
    card.appendChild(el("div", "justification", item.justification));
    list.appendChild(card);
  }
  root.appendChild(list);
  return root;
}

export function renderPatterns(patterns: PatternView[], activity: string | null): HTMLElement {
  const root = el("div", "patterns");
  const title = activity ? `Patterns through '${activity}'` : "Mined patterns";
  root.appendChild(el("h3", undefined, title));
  const shown = activity
    ? patterns.filter((p) => p.templates.some((t) => t.activity === activity))
    : patterns;
  if (shown.length === 0) {
    root.appendChild(el("p", "empty", "No patterns."));
    return root;
  }
  const list = el("ul", "pattern-list");
  for (const pattern of shown) {
    const item = el("li", "pattern-card");
    item.appendChild(
      el("div", "pattern-activities", pattern.templates.map((t) => t.activity).join(" → ")),
    );
    item.appendChild(
      el(
        "div",
        "pattern-support",
        `support ${pattern.support}, successful ${pattern.successful_support}`,
      ),
    );
    list.appendChild(item);
  }
  root.appendChild(list);
  return root;
}

/** Simple layered SVG of the directly-follows model with edge counts.
 * Clicking a node invokes onNode with its activity name. */
export function renderModel(model: ModelView, onNode: (activity: string) => void): SVGSVGElement {
  const nodes = [...model.nodes].sort();
  const width = 640;
  const rowHeight = 64;
  const height = Math.max(nodes.length * rowHeight + 40, 120);
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("width", String(width));
  svg.setAttribute("class", "model-view");

  const position = new Map<string, { x: number; y: number }>();
  nodes.forEach((name, idx) => {
    position.set(name, { x: width / 2, y: 40 + idx * rowHeight });
  });

  for (const edge of model.edges) {
    const from = position.get(edge.from);
    const to = position.get(edge.to);
    if (!from || !to) {
      continue;
    }
    const path = document.createElementNS(SVG_NS, "path");
    const bend = from.y < to.y ? 120 : 240;
    const midX = width / 2 + (from.y === to.y ? 0 : bend * (from.y < to.y ? -1 : 1) * 0.5);
    path.setAttribute(
      "d",
      `M ${from.x} ${from.y} Q ${midX} ${(from.y + to.y) / 2} ${to.x} ${to.y}`,
    );
    path.setAttribute("class", "model-edge");
    path.setAttribute("fill", "none");
    path.setAttribute("stroke", "#888");
    svg.appendChild(path);

    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(midX));
    label.setAttribute("y", String((from.y + to.y) / 2));
    label.setAttribute("class", "edge-count");
    label.setAttribute("font-size", "11");
    label.textContent = String(edge.count);
    svg.appendChild(label);
  }

  for (const name of nodes) {
    const pos = position.get(name)!;
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", "model-node");
    group.setAttribute("data-activity", name);
    group.addEventListener("click", () => onNode(name));

    const rect = document.createElementNS(SVG_NS, "rect");
    rect.setAttribute("x", String(pos.x - 110));
    rect.setAttribute("y", String(pos.y - 16));
    rect.setAttribute("width", "220");
    rect.setAttribute("height", "32");
    rect.setAttribute("rx", "6");
    rect.setAttribute("fill", "#eef");
    rect.setAttribute("stroke", "#557");
    group.appendChild(rect);

    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(pos.x));
    text.setAttribute("y", String(pos.y + 4));
    text.setAttribute("text-anchor", "middle");
    text.setAttribute("font-size", "12");
    const starts = model.starts[name] ?? 0;
    const ends = model.ends[name] ?? 0;
    text.textContent =
      name + (starts ? ` ▸${starts}` : "") + (ends ? ` ◂${ends}` : "");
    group.appendChild(text);

    svg.appendChild(group);
  }
  return svg;
}

export function renderError(message: string | null): HTMLElement {
  const root = el("div", "error-bar");
  if (message) {
    root.textContent = message;
    root.classList.add("visible");
  }
  return root;
}
