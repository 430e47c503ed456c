import { ApiClient, ApiError } from "./api.js";
import type { FaceQuery } from "./api.js";
import {
  SUPPORTED_SCHEMA_VERSION,
  initialState,
  wildcardForm,
  type ComposerState,
  type Mode,
  type Phase,
} from "./state.js";
import { renderQueryForm, renderSchemaError } from "./form.js";
import { renderCandidates } from "./gallery.js";
import { renderPreview } from "./preview.js";

/**
 * Wires the form, gallery and preview panels to one service session.
 * The composer never computes a pixel or a match itself; it replays the
 * service's answers and gates controls on the session phase it reports.
 */
export class Composer {
  private readonly state: ComposerState = initialState();
  private readonly panels: {
    status: HTMLElement;
    form: HTMLElement;
    gallery: HTMLElement;
    preview: HTMLElement;
  };

  constructor(
    root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    root.textContent = "";
    this.panels = {
      status: document.createElement("header"),
      form: document.createElement("div"),
      gallery: document.createElement("div"),
      preview: document.createElement("div"),
    };
    this.panels.status.className = "status";
    this.panels.form.className = "form-panel";
    this.panels.gallery.className = "gallery-panel";
    this.panels.preview.className = "preview-panel";
    for (const panel of Object.values(this.panels)) {
      root.appendChild(panel);
    }
  }

  /** Read-only view for tests and debugging. */
  snapshot(): Readonly<ComposerState> {
    return this.state;
  }

  async init(): Promise<void> {
    try {
      const schema = await this.api.getSchema();
      if (schema.version !== SUPPORTED_SCHEMA_VERSION) {
        this.panels.form.appendChild(
          renderSchemaError(
            `unsupported schema version ${schema.version}; ` +
              `this client speaks version ${SUPPORTED_SCHEMA_VERSION}`,
          ),
        );
        return;
      }
      this.state.schema = schema;
      this.state.formValues = wildcardForm(schema);
      const session = await this.api.createSession();
      this.state.sessionId = session.session_id;
      this.state.phase = session.state as Phase;
    } catch (error) {
      this.panels.form.appendChild(
        renderSchemaError(describe(error)),
      );
      return;
    }
    this.render();
  }

  submitQuery(): void {
    const query: FaceQuery = {};
    for (const [kind, attrs] of Object.entries(this.state.formValues)) {
      query[kind] = { ...attrs };
    }
    void this.mutate(async () => {
      const result = await this.api.submitQuery(this.sessionId(), query);
      this.state.phase = result.state as Phase;
      this.state.candidates = result.candidates;
      this.state.preview = null;
      // the service keeps selections that are still candidates; mirror that
      for (const [kind, records] of Object.entries(result.candidates)) {
        const kept = this.state.selections[kind];
        if (kept !== undefined && !records.some((r) => r.id === kept)) {
          delete this.state.selections[kind];
        }
      }
    });
  }

  select(kind: string, recordId: number): void {
    void this.mutate(async () => {
      const result = await this.api.selectComponent(
        this.sessionId(),
        kind,
        recordId,
      );
      this.state.phase = result.state as Phase;
      this.state.selections = {};
      for (const [k, id] of Object.entries(result.selections)) {
        if (id !== null) {
          this.state.selections[k] = id;
        }
      }
      if (this.state.phase !== "Previewing") {
        this.state.preview = null;
      }
    });
  }

  requestPreview(): void {
    void this.mutate(async () => {
      const preview = await this.api.preview(this.sessionId(), this.state.mode);
      this.state.phase = preview.state as Phase;
      this.state.preview = preview;
    });
  }

  setMode(mode: Mode): void {
    this.state.mode = mode;
    if (this.state.phase === "Previewing") {
      this.requestPreview();
    } else {
      this.render();
    }
  }

  nudge(slot: string, drow: number, dcol: number): void {
    void this.mutate(async () => {
      const preview = await this.api.adjust(this.sessionId(), slot, drow, dcol);
      this.state.phase = preview.state as Phase;
      this.state.preview = preview;
    });
  }

  finalize(): void {
    void this.mutate(async () => {
      const result = await this.api.finalize(this.sessionId());
      this.state.phase = result.state as Phase;
      this.state.faceId = result.face_id;
    });
  }

  setFormValue(kind: string, attribute: string, value: string): void {
    (this.state.formValues[kind] ??= {})[attribute] = value;
  }

  private sessionId(): string {
    if (this.state.sessionId === null) {
      throw new Error("composer used before init()");
    }
    return this.state.sessionId;
  }

  /**
   * Run one mutating call with the controls locked.  A failure keeps all
   * state from before the call (the service applies nothing on error) and
   * surfaces the message inline, so retrying is always safe.
   */
  private async mutate(action: () => Promise<void>): Promise<void> {
    if (this.state.busy || this.state.phase === "Finalized") {
      return;
    }
    this.state.busy = true;
    this.state.notice = null;
    this.render();
    try {
      await action();
    } catch (error) {
      this.state.notice = describe(error);
    } finally {
      this.state.busy = false;
      this.render();
    }
  }

  private render(): void {
    this.renderStatus();
    this.renderForm();
    this.renderGallery();
    this.renderPreviewPanel();
    if (this.state.busy || this.state.phase === "Finalized") {
      this.lockControls();
    }
  }

  private renderStatus(): void {
    const { status } = this.panels;
    status.textContent = "";

    const phase = document.createElement("span");
    phase.className = "phase";
    phase.textContent = this.state.phase;
    status.appendChild(phase);

    if (this.state.notice !== null) {
      const notice = document.createElement("span");
      notice.className = "notice";
      notice.setAttribute("role", "alert");
      notice.textContent = this.state.notice;
      status.appendChild(notice);
    }
    if (this.state.faceId !== null) {
      const face = document.createElement("span");
      face.className = "face-id";
      face.textContent = `saved as face ${this.state.faceId}`;
      status.appendChild(face);
    }
  }

  private renderForm(): void {
    const { form } = this.panels;
    if (this.state.schema === null) {
      return; // init() already placed the banner
    }
    form.textContent = "";
    form.appendChild(
      renderQueryForm(this.state.schema, this.state.formValues, {
        onChange: (kind, attribute, value) =>
          this.setFormValue(kind, attribute, value),
        onSubmit: () => this.submitQuery(),
      }),
    );
  }

  private renderGallery(): void {
    const { gallery } = this.panels;
    gallery.textContent = "";
    if (this.state.candidates === null) {
      return;
    }
    gallery.appendChild(
      renderCandidates(this.state.candidates, this.state.selections, {
        onSelect: (kind, id) => this.select(kind, id),
        imageUrl: (path) => this.api.imageUrl(path),
      }),
    );

    const previewButton = document.createElement("button");
    previewButton.type = "button";
    previewButton.className = "request-preview";
    previewButton.textContent = "Preview";
    previewButton.addEventListener("click", () => this.requestPreview());
    gallery.appendChild(previewButton);
  }

  private renderPreviewPanel(): void {
    const { preview } = this.panels;
    preview.textContent = "";
    if (this.state.preview === null || this.state.phase !== "Previewing") {
      return; // preview shown iff the service is in Previewing
    }
    preview.appendChild(
      renderPreview(this.state.preview, this.state.mode, {
        onNudge: (slot, drow, dcol) => this.nudge(slot, drow, dcol),
        onMode: (mode) => this.setMode(mode),
        onFinalize: () => this.finalize(),
        imageUrl: (path) => this.api.imageUrl(path),
      }),
    );
  }

  private lockControls(): void {
    for (const panel of Object.values(this.panels)) {
      for (const control of panel.querySelectorAll("button, select, input")) {
        (control as HTMLButtonElement).disabled = true;
      }
    }
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) {
    const parts = Object.entries(error.envelope.detail)
      .filter(([, v]) => v)
      .map(([k, v]) => `${k}: ${String(v)}`);
    const where = parts.length > 0 ? ` (${parts.join(", ")})` : "";
    return `${error.envelope.code}: ${error.envelope.message}${where}`;
  }
  return error instanceof Error ? error.message : String(error);
}
