// Typed fetch wrappers for the documented service endpoints.

import type { HierarchyArtifact, RecordingSummary, TranscriptArtifact } from "./types.js";

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) {
    const body = await response.text();
    throw new Error(`${url} -> ${response.status}: ${body}`);
  }
  return (await response.json()) as T;
}

export function listRecordings(): Promise<RecordingSummary[]> {
  return getJson("/api/recordings");
}

export function fetchHierarchy(recordingId: string): Promise<HierarchyArtifact> {
  return getJson(`/api/recordings/${encodeURIComponent(recordingId)}/hierarchy`);
}

export function fetchTranscript(recordingId: string): Promise<TranscriptArtifact> {
  return getJson(`/api/recordings/${encodeURIComponent(recordingId)}/transcript`);
}
