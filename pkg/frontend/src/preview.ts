import type { PreviewResponse } from "./api.js";
import { MODES, type Mode } from "./state.js";

export interface PreviewHandlers {
  onNudge(slot: string, drow: number, dcol: number): void;
  onMode(mode: Mode): void;
  onFinalize(): void;
  imageUrl(path: string): string;
}

const ARROWS: ReadonlyArray<[string, number, number]> = [
  ["up", -1, 0],
  ["down", 1, 0],
  ["left", 0, -1],
  ["right", 0, 1],
];

/**
 * The composite preview: image, per-slot nudge arrows derived from the
 * served layout, a mode toggle and the finalize button.  Every pixel
 * shown comes from the service; arrows only issue adjust calls.
 */
export function renderPreview(
  preview: PreviewResponse,
  mode: Mode,
  handlers: PreviewHandlers,
): HTMLElement {
  const panel = document.createElement("section");
  panel.className = "preview";

  const img = document.createElement("img");
  img.className = "composite";
  // cache-buster: the URL is stable across adjusts but the bytes are not
  img.src = handlers.imageUrl(preview.image_url) + `&rev=${Date.now()}`;
  img.alt = "composite preview";
  panel.appendChild(img);

  const modeBar = document.createElement("div");
  modeBar.className = "mode-toggle";
  for (const candidate of MODES) {
    const label = document.createElement("label");
    const radio = document.createElement("input");
    radio.type = "radio";
    radio.name = "mode";
    radio.value = candidate;
    radio.checked = candidate === mode;
    radio.addEventListener("change", () => handlers.onMode(candidate));
    label.appendChild(radio);
    label.appendChild(document.createTextNode(candidate));
    modeBar.appendChild(label);
  }
  panel.appendChild(modeBar);

  const nudges = document.createElement("div");
  nudges.className = "nudges";
  for (const [slot, pos] of Object.entries(preview.layout)) {
    if (slot === "anchor") {
      continue; // the anchor is derived, not placeable
    }
    const row = document.createElement("div");
    row.className = "nudge-row";
    row.dataset.slot = slot;

    const name = document.createElement("span");
    name.textContent = `${slot} (${pos.row}, ${pos.col})`;
    row.appendChild(name);

    for (const [direction, drow, dcol] of ARROWS) {
      const button = document.createElement("button");
      button.type = "button";
      button.className = `nudge nudge-${direction}`;
      button.dataset.slot = slot;
      button.textContent = direction;
      button.addEventListener("click", () => {
        handlers.onNudge(slot, drow, dcol);
      });
      row.appendChild(button);
    }
    nudges.appendChild(row);
  }
  panel.appendChild(nudges);

  const finalize = document.createElement("button");
  finalize.type = "button";
  finalize.className = "finalize";
  finalize.textContent = "Finalize";
  finalize.addEventListener("click", () => handlers.onFinalize());
  panel.appendChild(finalize);

  return panel;
}
