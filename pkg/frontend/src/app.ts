// DOM wiring: load artifacts, then re-render the pure views on every
// state transition. One delegated click handler covers all interactions.

import { fetchHierarchy, fetchTranscript, listRecordings } from "./api.js";
import { renderApp } from "./render.js";
import type { DetailLevel, ViewState } from "./state.js";
import { initialState, selectByFraction, selectShort, setLevel, toggleHighlight } from "./state.js";
import type { HierarchyArtifact, TranscriptArtifact } from "./types.js";

interface AppContext {
  root: HTMLElement;
  hierarchy: HierarchyArtifact;
  transcript: TranscriptArtifact;
  state: ViewState;
}

function rerender(ctx: AppContext): void {
  ctx.root.innerHTML = renderApp(ctx.hierarchy, ctx.transcript, ctx.state);
  const selected = ctx.root.querySelector(".short-card.is-selected");
  if (selected) {
    selected.scrollIntoView({ block: "nearest" });
  }
}

function update(ctx: AppContext, next: ViewState): void {
  if (next !== ctx.state) {
    ctx.state = next;
    rerender(ctx);
  }
}

function onClick(ctx: AppContext, event: MouseEvent): void {
  const target = event.target as HTMLElement | null;
  if (!target) return;

  const actionEl = target.closest<HTMLElement>("[data-action]");
  if (actionEl) {
    const action = actionEl.dataset.action;
    if (action === "select-short" && actionEl.dataset.nodeId) {
      update(ctx, selectShort(ctx.state, ctx.hierarchy, actionEl.dataset.nodeId));
      return;
    }
    if (action === "set-level" && actionEl.dataset.level) {
      update(ctx, setLevel(ctx.state, actionEl.dataset.level as DetailLevel));
      return;
    }
    if (action === "toggle-highlight") {
      update(ctx, toggleHighlight(ctx.state));
      return;
    }
  }

  const track = target.closest<HTMLElement>("[data-role='timeline']");
  if (track) {
    const rect = track.getBoundingClientRect();
    const fraction = rect.width > 0 ? (event.clientX - rect.left) / rect.width : 0;
    const nodeId = selectByFraction(ctx.hierarchy.timeline, Math.min(Math.max(fraction, 0), 1));
    if (nodeId) update(ctx, selectShort(ctx.state, ctx.hierarchy, nodeId));
  }
}

async function pickRecordingId(): Promise<string> {
  const fromQuery = new URLSearchParams(window.location.search).get("recording");
  if (fromQuery) return fromQuery;
  const recordings = await listRecordings();
  const ready = recordings.find((r) => r.has_hierarchy);
  if (!ready) throw new Error("no processed recordings in the store");
  return ready.recording_id;
}

export async function start(root: HTMLElement): Promise<void> {
  try {
    const recordingId = await pickRecordingId();
    const [hierarchy, transcript] = await Promise.all([
      fetchHierarchy(recordingId),
      fetchTranscript(recordingId),
    ]);
    const ctx: AppContext = { root, hierarchy, transcript, state: initialState(hierarchy) };
    root.addEventListener("click", (event) => onClick(ctx, event));
    rerender(ctx);
  } catch (error) {
    root.innerHTML = `<div class="empty-state">Failed to load: ${String(error)}</div>`;
  }
}

const rootEl = document.getElementById("app");
if (rootEl) {
  void start(rootEl);
}
