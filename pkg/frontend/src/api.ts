/** Typed client for the /v1 composition service. */

export interface AttributeSpec {
  name: string;
  values: string[];
}

export interface SchemaResponse {
  version: number;
  wildcard: string;
  kinds: Record<string, AttributeSpec[]>;
}

export interface Candidate {
  id: number;
  kind: string;
  attributes: Record<string, string>;
  image_url: string;
}

export interface SessionStub {
  session_id: string;
  state: string;
}

export interface QueryResponse {
  session_id: string;
  state: string;
  candidates: Record<string, Candidate[]>;
}

export interface SelectResponse {
  session_id: string;
  state: string;
  selections: Record<string, number | null>;
}

export interface PositionView {
  row: number;
  col: number;
}

export interface PreviewResponse {
  session_id: string;
  state: string;
  mode: string;
  layout: Record<string, PositionView>;
  image_url: string;
}

export interface FinalizeResponse {
  session_id: string;
  state: string;
  face_id: number;
  image_url: string;
}

export interface ErrorEnvelope {
  code: string;
  message: string;
  detail: Record<string, unknown>;
}

/** One face description: kind name -> attribute name -> value. */
export type FaceQuery = Record<string, Record<string, string>>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly envelope: ErrorEnvelope,
  ) {
    super(envelope.message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(
    readonly baseUrl: string,
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => globalThis.fetch(input, init));
  }

  getSchema(): Promise<SchemaResponse> {
    return this.json("GET", "/v1/schema");
  }

  createSession(): Promise<SessionStub> {
    return this.json("POST", "/v1/sessions");
  }

  submitQuery(sessionId: string, query: FaceQuery): Promise<QueryResponse> {
    return this.json("POST", `/v1/sessions/${sessionId}/query`, query);
  }

  selectComponent(
    sessionId: string,
    kind: string,
    recordId: number,
  ): Promise<SelectResponse> {
    return this.json("POST", `/v1/sessions/${sessionId}/select`, {
      kind,
      record_id: recordId,
    });
  }

  preview(sessionId: string, mode?: string): Promise<PreviewResponse> {
    return this.json(
      "POST",
      `/v1/sessions/${sessionId}/preview`,
      mode ? { mode } : {},
    );
  }

  adjust(
    sessionId: string,
    slot: string,
    drow: number,
    dcol: number,
  ): Promise<PreviewResponse> {
    return this.json("POST", `/v1/sessions/${sessionId}/adjust`, {
      [slot]: { drow, dcol },
    });
  }

  finalize(sessionId: string): Promise<FinalizeResponse> {
    return this.json("POST", `/v1/sessions/${sessionId}/finalize`);
  }

  /**
   * Browser-renderable URL for an image path returned by the service.
   * PGM stays the canonical byte format; display always asks for PNG.
   */
  imageUrl(path: string, bust?: number): string {
    const sep = path.includes("?") ? "&" : "?";
    const suffix = bust === undefined ? "" : `&t=${bust}`;
    return `${this.baseUrl}${path}${sep}format=png${suffix}`;
  }

  private async json<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let envelope: ErrorEnvelope;
      try {
        envelope = (await response.json()) as ErrorEnvelope;
      } catch {
        envelope = {
          code: "http",
          message: `request failed with status ${response.status}`,
          detail: {},
        };
      }
      throw new ApiError(response.status, envelope);
    }
    return (await response.json()) as T;
  }
}
