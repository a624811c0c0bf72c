// View state and its transitions. Everything here is pure; the DOM layer
// re-renders from (artifacts, state) after every transition.

import type { HierarchyArtifact, TimelineEntry } from "./types.js";
import { nodeById } from "./types.js";

// drill-down ladder, most summarized to raw audio
export const DETAIL_LEVELS = ["MEDIUM", "LONG", "TRANSCRIPT", "AUDIO"] as const;
export type DetailLevel = (typeof DETAIL_LEVELS)[number];

export interface ViewState {
  selectedShortId: string | null;
  expandedLevel: DetailLevel;
  playbackPosition: number | null;
  highlightOn: boolean;
}

export function initialState(hierarchy: HierarchyArtifact): ViewState {
  const first = hierarchy.nodes.find((n) => n.level === "SHORT");
  return {
    selectedShortId: first ? first.id : null,
    expandedLevel: "MEDIUM",
    playbackPosition: null,
    highlightOn: true,
  };
}

export function selectShort(
  state: ViewState,
  hierarchy: HierarchyArtifact,
  shortId: string
): ViewState {
  const node = nodeById(hierarchy, shortId);
  if (!node || node.level !== "SHORT") return state;
  return { ...state, selectedShortId: shortId, playbackPosition: null };
}

export function setLevel(state: ViewState, level: DetailLevel): ViewState {
  if (!DETAIL_LEVELS.includes(level)) return state;
  return { ...state, expandedLevel: level };
}

export function toggleHighlight(state: ViewState): ViewState {
  return { ...state, highlightOn: !state.highlightOn };
}

// Timeline click: the node whose interval contains the fraction wins;
// clicks in gaps select the nearest interval.
export function selectByFraction(timeline: TimelineEntry[], fraction: number): string | null {
  if (timeline.length === 0) return null;
  for (const entry of timeline) {
    if (fraction >= entry.start_fraction && fraction <= entry.end_fraction) {
      return entry.short_node_id;
    }
  }
  let best = timeline[0];
  let bestDistance = Infinity;
  for (const entry of timeline) {
    const distance =
      fraction < entry.start_fraction
        ? entry.start_fraction - fraction
        : fraction - entry.end_fraction;
    if (distance < bestDistance) {
      bestDistance = distance;
      best = entry;
    }
  }
  return best.short_node_id;
}
