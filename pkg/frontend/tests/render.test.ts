// Rendering is a pure function of (artifacts, state): these tests feed the
// stored fixture artifacts (produced by the real pipeline offline) through
// every view and assert on the markup. No network, no live providers.

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import {
  renderApp,
  renderDetailPanel,
  renderHighlighted,
  renderShortColumn,
  renderTimeline,
} from "../src/render.js";
import { initialState, selectShort, setLevel, toggleHighlight } from "../src/state.js";
import type { HierarchyArtifact, TranscriptArtifact } from "../src/types.js";
import { childrenOf, nodesAtLevel } from "../src/types.js";

const fixturesDir = join(__dirname, "fixtures");
const hierarchy: HierarchyArtifact = JSON.parse(
  readFileSync(join(fixturesDir, "hierarchy.json"), "utf-8")
);
const transcript: TranscriptArtifact = JSON.parse(
  readFileSync(join(fixturesDir, "transcript.json"), "utf-8")
);

const emptyHierarchy: HierarchyArtifact = {
  ...hierarchy,
  nodes: [],
  edges: [],
  highlights: [],
  timeline: [],
  drop_ledger: [],
};

describe("short column", () => {
  it("renders one card per SHORT node in transcript order", () => {
    const state = initialState(hierarchy);
    const html = renderShortColumn(hierarchy, state);
    const shorts = nodesAtLevel(hierarchy, "SHORT");
    expect(shorts.length).toBeGreaterThanOrEqual(3);
    const ids = [...html.matchAll(/data-node-id="(S-\d+)"/g)].map((m) => m[1]);
    expect(ids).toEqual(shorts.map((n) => n.id));
    for (const node of shorts) {
      expect(html).toContain(node.id);
    }
  });

  it("marks the selected card", () => {
    const state = selectShort(initialState(hierarchy), hierarchy, "S-001");
    const html = renderShortColumn(hierarchy, state);
    expect(html).toMatch(/short-card is-selected[^>]*data-node-id="S-001"/);
  });

  it("shows an empty state for an empty hierarchy", () => {
    const html = renderShortColumn(emptyHierarchy, initialState(emptyHierarchy));
    expect(html).toContain("No summaries available");
  });

  it("shows a degraded badge when a node is flagged", () => {
    const degraded: HierarchyArtifact = {
      ...hierarchy,
      nodes: hierarchy.nodes.map((n) =>
        n.id === "S-000" ? { ...n, degraded: true } : n
      ),
    };
    const html = renderShortColumn(degraded, initialState(degraded));
    expect(html).toContain("badge-degraded");
  });

  it("card texts match the stored artifact exactly", () => {
    const state = { ...initialState(hierarchy), highlightOn: false };
    const html = renderShortColumn(hierarchy, state);
    for (const node of nodesAtLevel(hierarchy, "SHORT")) {
      expect(html).toContain(`<p class="short-card-text">${node.text}</p>`);
    }
  });

  it("matches the column snapshot", () => {
    const html = renderShortColumn(hierarchy, initialState(hierarchy));
    expect(html).toMatchSnapshot();
  });
});

describe("drill-down panel", () => {
  const base = initialState(hierarchy); // selects S-000, MEDIUM expanded

  it("MEDIUM level shows the node's medium children", () => {
    const html = renderDetailPanel(hierarchy, transcript, base);
    for (const medium of childrenOf(hierarchy, "S-000")) {
      expect(html).toContain(medium.id);
    }
  });

  it("LONG level shows the grandchildren", () => {
    const html = renderDetailPanel(hierarchy, transcript, setLevel(base, "LONG"));
    const longs = childrenOf(hierarchy, "S-000").flatMap((m) => childrenOf(hierarchy, m.id));
    expect(longs.length).toBeGreaterThan(0);
    for (const long of longs) {
      expect(html).toContain(long.id);
    }
  });

  it("TRANSCRIPT level shows the sentences of the node's span", () => {
    const html = renderDetailPanel(hierarchy, transcript, setLevel(base, "TRANSCRIPT"));
    const short = nodesAtLevel(hierarchy, "SHORT")[0];
    const [lo, hi] = short.transcript_span;
    for (const sentence of transcript.sentences.slice(lo, hi + 1)) {
      // sentences are joined with single spaces; marks may interrupt, so
      // check a highlight-free render
      const plain = renderDetailPanel(hierarchy, transcript, {
        ...setLevel(base, "TRANSCRIPT"),
        highlightOn: false,
      });
      expect(plain).toContain(sentence.text);
    }
    expect(html).toContain("detail-transcript");
  });

  it("AUDIO level embeds a player scoped to the node's time range", () => {
    const html = renderDetailPanel(hierarchy, transcript, setLevel(base, "AUDIO"));
    const short = nodesAtLevel(hierarchy, "SHORT")[0];
    const [start, end] = short.time_range_s;
    expect(html).toContain(
      `/api/recordings/${hierarchy.recording_id}/audio?start_s=${start}&end_s=${end}`
    );
    expect(html).toContain("<audio controls");
  });

  it("renders tabs in the fixed recovery-ladder order", () => {
    const html = renderDetailPanel(hierarchy, transcript, base);
    const order = [...html.matchAll(/data-level="(\w+)"/g)].map((m) => m[1]);
    expect(order).toEqual(["MEDIUM", "LONG", "TRANSCRIPT", "AUDIO"]);
  });

  it("explains stemmed material from the drop ledger", () => {
    expect(hierarchy.drop_ledger.length).toBeGreaterThan(0);
    const drop = hierarchy.drop_ledger[0];
    const owner = nodesAtLevel(hierarchy, "SHORT").find(
      (n) =>
        drop.transcript_span[0] <= n.transcript_span[1] &&
        n.transcript_span[0] <= drop.transcript_span[1]
    );
    if (owner) {
      const html = renderDetailPanel(
        hierarchy,
        transcript,
        selectShort(base, hierarchy, owner.id)
      );
      expect(html).toContain("drop-notes");
      expect(html).toContain("stemmed");
    }
  });
});

describe("highlighting", () => {
  it("wraps the key phrase in <mark> at every level it targets", () => {
    for (const link of hierarchy.highlights) {
      if (!link.phrase) continue;
      const selected = selectShort(initialState(hierarchy), hierarchy, link.short_node_id);
      const levels = new Set(link.targets.map((t) => t.level));

      if (levels.has("SHORT")) {
        const html = renderShortColumn(hierarchy, selected);
        expect(html).toContain("<mark>");
      }
      for (const level of ["MEDIUM", "LONG", "TRANSCRIPT"] as const) {
        if (!levels.has(level)) continue;
        const html = renderDetailPanel(hierarchy, transcript, setLevel(selected, level));
        expect(html, `${link.short_node_id} at ${level}`).toContain("<mark>");
        const marked = html.match(/<mark>(.*?)<\/mark>/);
        expect(marked, `${link.short_node_id} at ${level}`).not.toBeNull();
        expect(marked![1].toLowerCase()).toBe(link.phrase);
      }
    }
  });

  it("toggling highlights off removes every mark", () => {
    const state = toggleHighlight(initialState(hierarchy));
    expect(state.highlightOn).toBe(false);
    expect(renderShortColumn(hierarchy, state)).not.toContain("<mark>");
    expect(renderDetailPanel(hierarchy, transcript, state)).not.toContain("<mark>");
  });

  it("escapes html and rejects bad ranges", () => {
    expect(renderHighlighted("<b>x</b>", null)).toBe("&lt;b&gt;x&lt;/b&gt;");
    expect(renderHighlighted("abc", [2, 1])).toBe("abc");
    expect(renderHighlighted("abcdef", [1, 3])).toBe("a<mark>bc</mark>def");
  });
});

describe("timeline", () => {
  it("renders one segment per timeline entry", () => {
    const html = renderTimeline(hierarchy, initialState(hierarchy));
    const count = (html.match(/timeline-segment/g) || []).length;
    expect(count).toBe(hierarchy.timeline.length);
  });

  it("selected node's segment is marked", () => {
    const state = selectShort(initialState(hierarchy), hierarchy, "S-002");
    const html = renderTimeline(hierarchy, state);
    expect(html).toMatch(/timeline-segment is-selected[^>]*data-node-id="S-002"/);
  });
});

describe("whole app", () => {
  it("is a pure function of artifacts and state", () => {
    const state = initialState(hierarchy);
    const a = renderApp(hierarchy, transcript, state);
    const b = renderApp(hierarchy, transcript, state);
    expect(a).toBe(b);
  });

  it("matches the app snapshot", () => {
    expect(renderApp(hierarchy, transcript, initialState(hierarchy))).toMatchSnapshot();
  });
});
