// Pure HTML renderers: same artifacts + same state, same markup.

import type {
  HierarchyArtifact,
  HighlightLink,
  SummaryNode,
  TranscriptArtifact,
} from "./types.js";
import { childrenOf, highlightFor, nodeById, nodesAtLevel } from "./types.js";
import type { ViewState } from "./state.js";
import { DETAIL_LEVELS } from "./state.js";

export function escapeHtml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

// Wrap one character range in <mark>, escaping around it.
export function renderHighlighted(
  text: string,
  range: [number, number] | null
): string {
  if (!range || range[0] < 0 || range[1] > text.length || range[0] >= range[1]) {
    return escapeHtml(text);
  }
  const [start, end] = range;
  return (
    escapeHtml(text.slice(0, start)) +
    `<mark>${escapeHtml(text.slice(start, end))}</mark>` +
    escapeHtml(text.slice(end))
  );
}

function targetRange(
  link: HighlightLink | undefined,
  level: string,
  nodeId: string | null
): [number, number] | null {
  if (!link) return null;
  const target = link.targets.find((t) => t.level === level && t.node_id === nodeId);
  return target ? [target.start_char, target.end_char] : null;
}

function formatSeconds(value: number): string {
  const minutes = Math.floor(value / 60);
  const seconds = Math.round(value % 60);
  return `${minutes}:${String(seconds).padStart(2, "0")}`;
}

export function renderShortColumn(hierarchy: HierarchyArtifact, state: ViewState): string {
  const shorts = nodesAtLevel(hierarchy, "SHORT");
  if (shorts.length === 0) {
    return `<div class="empty-state">No summaries available for this recording yet.</div>`;
  }
  const cards = shorts.map((node) => {
    const selected = node.id === state.selectedShortId ? " is-selected" : "";
    const badge = node.degraded
      ? `<span class="badge badge-degraded" title="summarizer unavailable; raw text shown">degraded</span>`
      : "";
    const link = highlightFor(hierarchy, node.id);
    const body = state.highlightOn
      ? renderHighlighted(node.text, targetRange(link, "SHORT", node.id))
      : escapeHtml(node.text);
    const [start, end] = node.time_range_s;
    return `
      <article class="short-card${selected}" data-action="select-short" data-node-id="${node.id}">
        <header class="short-card-meta">
          <span class="short-card-id">${node.id}</span>
          <span class="short-card-time">${formatSeconds(start)}&ndash;${formatSeconds(end)}</span>
          ${badge}
        </header>
        <p class="short-card-text">${body}</p>
      </article>`;
  });
  return cards.join("\n");
}

export function renderTimeline(hierarchy: HierarchyArtifact, state: ViewState): string {
  const segments = hierarchy.timeline.map((entry) => {
    const left = (entry.start_fraction * 100).toFixed(2);
    const width = Math.max((entry.end_fraction - entry.start_fraction) * 100, 0.4).toFixed(2);
    const selected = entry.short_node_id === state.selectedShortId ? " is-selected" : "";
    return (
      `<div class="timeline-segment${selected}" data-action="select-short"` +
      ` data-node-id="${entry.short_node_id}"` +
      ` style="left:${left}%;width:${width}%"` +
      ` title="${entry.short_node_id}"></div>`
    );
  });
  return `<div class="timeline-track" data-role="timeline">${segments.join("")}</div>`;
}

function renderLevelTabs(state: ViewState): string {
  const tabs = DETAIL_LEVELS.map((level) => {
    const active = level === state.expandedLevel ? " is-active" : "";
    return `<button class="tab${active}" data-action="set-level" data-level="${level}">${level}</button>`;
  });
  const toggle = `<button class="tab tab-toggle${state.highlightOn ? " is-active" : ""}" data-action="toggle-highlight">highlight</button>`;
  return `<nav class="tabs">${tabs.join("")}${toggle}</nav>`;
}

function transcriptSpanText(transcript: TranscriptArtifact, span: [number, number]): string {
  return transcript.sentences
    .slice(span[0], span[1] + 1)
    .map((s) => s.text)
    .join(" ");
}

function renderDropNotes(hierarchy: HierarchyArtifact, node: SummaryNode): string {
  const overlapping = hierarchy.drop_ledger.filter(
    (drop) =>
      drop.transcript_span[0] <= node.transcript_span[1] &&
      node.transcript_span[0] <= drop.transcript_span[1]
  );
  if (overlapping.length === 0) return "";
  const items = overlapping
    .map(
      (drop) =>
        `<li>${drop.word_count} words stemmed while building ${drop.level}: ` +
        `<q>${escapeHtml(drop.text)}</q></li>`
    )
    .join("");
  return (
    `<aside class="drop-notes"><p>Some merged summaries in this section fell at or below the ` +
    `stem cutoff and were omitted from higher levels; the transcript still contains them.</p>` +
    `<ul>${items}</ul></aside>`
  );
}

function renderNodeTexts(
  hierarchy: HierarchyArtifact,
  nodes: SummaryNode[],
  level: string,
  link: HighlightLink | undefined,
  highlightOn: boolean
): string {
  if (nodes.length === 0) {
    return `<p class="empty-state">Nothing survived at this level; see the notes below or read the transcript.</p>`;
  }
  return nodes
    .map((node) => {
      const body = highlightOn
        ? renderHighlighted(node.text, targetRange(link, level, node.id))
        : escapeHtml(node.text);
      return `<section class="detail-node" data-node-id="${node.id}"><h4>${node.id}</h4><p>${body}</p></section>`;
    })
    .join("\n");
}

export function renderDetailPanel(
  hierarchy: HierarchyArtifact,
  transcript: TranscriptArtifact,
  state: ViewState
): string {
  if (!state.selectedShortId) {
    return `<div class="empty-state">Select a short summary to drill down.</div>`;
  }
  const short = nodeById(hierarchy, state.selectedShortId);
  if (!short) {
    return `<div class="empty-state">Unknown node ${escapeHtml(state.selectedShortId)}.</div>`;
  }
  const link = highlightFor(hierarchy, short.id);
  const mediums = childrenOf(hierarchy, short.id);
  const longs = mediums.flatMap((m) => childrenOf(hierarchy, m.id));

  let content: string;
  if (state.expandedLevel === "MEDIUM") {
    content = renderNodeTexts(hierarchy, mediums, "MEDIUM", link, state.highlightOn);
  } else if (state.expandedLevel === "LONG") {
    content = renderNodeTexts(hierarchy, longs, "LONG", link, state.highlightOn);
  } else if (state.expandedLevel === "TRANSCRIPT") {
    const spanText = transcriptSpanText(transcript, short.transcript_span);
    const body = state.highlightOn
      ? renderHighlighted(spanText, targetRange(link, "TRANSCRIPT", null))
      : escapeHtml(spanText);
    content = `<section class="detail-transcript"><p>${body}</p></section>`;
  } else {
    const [start, end] = short.time_range_s;
    const src = `/api/recordings/${encodeURIComponent(hierarchy.recording_id)}/audio?start_s=${start}&end_s=${end}`;
    content =
      `<section class="detail-audio">` +
      `<p>Audio for ${formatSeconds(start)}&ndash;${formatSeconds(end)}</p>` +
      `<audio controls preload="none" src="${src}" data-role="player" data-start-s="${start}"></audio>` +
      `</section>`;
  }

  return [
    `<header class="detail-header"><h3>${short.id}</h3>` +
      `<p class="detail-short-text">${escapeHtml(short.text)}</p></header>`,
    renderLevelTabs(state),
    `<div class="detail-content">${content}</div>`,
    renderDropNotes(hierarchy, short),
  ].join("\n");
}

export function renderApp(
  hierarchy: HierarchyArtifact,
  transcript: TranscriptArtifact,
  state: ViewState
): string {
  return `
    <header class="app-header">
      <h1>${escapeHtml(transcript.title || hierarchy.recording_id)}</h1>
      ${renderTimeline(hierarchy, state)}
    </header>
    <main class="app-main">
      <section class="short-column" data-role="short-column">
        ${renderShortColumn(hierarchy, state)}
      </section>
      <section class="detail-panel" data-role="detail-panel">
        ${renderDetailPanel(hierarchy, transcript, state)}
      </section>
    </main>`;
}
