// Shapes of the artifacts the service exposes. The UI consumes these
// documents verbatim; all alignment and highlight offsets are computed
// server-side.

export type Level = "LONG" | "MEDIUM" | "SHORT";

export interface SummaryNode {
  id: string;
  level: Level;
  text: string;
  word_count: number;
  source_ids: string[];
  transcript_span: [number, number]; // inclusive sentence ordinals
  time_range_s: [number, number];
  turn_index: number;
  degraded: boolean;
}

export interface HighlightTarget {
  // level is SHORT | MEDIUM | LONG | TRANSCRIPT; node_id is null for the
  // transcript, where the char range indexes the node's span text
  // (sentences joined with single spaces)
  level: string;
  node_id: string | null;
  start_char: number;
  end_char: number;
}

export interface HighlightLink {
  short_node_id: string;
  phrase: string;
  targets: HighlightTarget[];
}

export interface TimelineEntry {
  short_node_id: string;
  start_fraction: number;
  end_fraction: number;
}

export interface DropRecord {
  level: Level;
  text: string;
  word_count: number;
  source_ids: string[];
  transcript_span: [number, number];
}

export interface HierarchyArtifact {
  schema_version: number;
  recording_id: string;
  config: Record<string, unknown>;
  nodes: SummaryNode[];
  edges: [string, string][]; // [parent, child]
  highlights: HighlightLink[];
  timeline: TimelineEntry[];
  drop_ledger: DropRecord[];
}

export interface TranscriptSentence {
  index: number;
  word_range: [number, number];
  text: string;
}

export interface TranscriptArtifact {
  schema_version: number;
  recording_id: string;
  title: string;
  audio_duration_s: number;
  sentences: TranscriptSentence[];
  turns: { index: number; speaker: string; sentence_range: [number, number] }[];
}

export interface RecordingSummary {
  recording_id: string;
  title: string;
  has_transcript: boolean;
  has_hierarchy: boolean;
  has_audio: boolean;
  evaluations: string[];
}

export function nodesAtLevel(h: HierarchyArtifact, level: Level): SummaryNode[] {
  return h.nodes.filter((n) => n.level === level);
}

export function nodeById(h: HierarchyArtifact, id: string): SummaryNode | undefined {
  return h.nodes.find((n) => n.id === id);
}

export function childrenOf(h: HierarchyArtifact, id: string): SummaryNode[] {
  const ids = h.edges.filter(([parent]) => parent === id).map(([, child]) => child);
  return ids
    .map((cid) => nodeById(h, cid))
    .filter((n): n is SummaryNode => n !== undefined);
}

export function highlightFor(h: HierarchyArtifact, shortId: string): HighlightLink | undefined {
  return h.highlights.find((link) => link.short_node_id === shortId);
}
