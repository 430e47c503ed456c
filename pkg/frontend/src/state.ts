import type { Candidate, PreviewResponse, SchemaResponse } from "./api.js";

/** The session phases the service reports; mirrored verbatim. */
export type Phase = "Querying" | "Selecting" | "Previewing" | "Finalized";

export const SUPPORTED_SCHEMA_VERSION = 1;

/** The placement modes the service accepts (protocol constants). */
export const MODES = ["blind", "masked", "tuned"] as const;
export type Mode = (typeof MODES)[number];

/**
 * Everything the composer knows, held client-side.  The service is the
 * source of truth: phase, candidates, selections and previews are only
 * ever copied out of its responses, never computed here.
 */
export interface ComposerState {
  sessionId: string | null;
  schema: SchemaResponse | null;
  formValues: Record<string, Record<string, string>>;
  candidates: Record<string, Candidate[]> | null;
  selections: Record<string, number>;
  preview: PreviewResponse | null;
  mode: Mode;
  faceId: number | null;
  phase: Phase;
  busy: boolean;
  notice: string | null;
}

export function initialState(): ComposerState {
  return {
    sessionId: null,
    schema: null,
    formValues: {},
    candidates: null,
    selections: {},
    preview: null,
    mode: "tuned",
    faceId: null,
    phase: "Querying",
    busy: false,
    notice: null,
  };
}

/** Default form values: every attribute of every kind set to the wildcard. */
export function wildcardForm(
  schema: SchemaResponse,
): Record<string, Record<string, string>> {
  const form: Record<string, Record<string, string>> = {};
  for (const [kind, specs] of Object.entries(schema.kinds)) {
    form[kind] = {};
    for (const spec of specs) {
      form[kind][spec.name] = schema.wildcard;
    }
  }
  return form;
}
