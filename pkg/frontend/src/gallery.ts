import type { Candidate } from "./api.js";

export interface GalleryHandlers {
  onSelect(kind: string, recordId: number): void;
  imageUrl(path: string): string;
}

/**
 * Candidate galleries, one per kind, in the order the service returned
 * them.  The selected card keeps a marker class across re-renders.
 */
export function renderCandidates(
  candidates: Record<string, Candidate[]>,
  selections: Record<string, number>,
  handlers: GalleryHandlers,
): HTMLElement {
  const container = document.createElement("div");
  container.className = "galleries";

  for (const [kind, records] of Object.entries(candidates)) {
    const section = document.createElement("section");
    section.className = "gallery";
    section.dataset.kind = kind;

    const heading = document.createElement("h3");
    heading.textContent = kind;
    section.appendChild(heading);

    if (records.length === 0) {
      const notice = document.createElement("p");
      notice.className = "empty-notice";
      notice.textContent = "not in database";
      section.appendChild(notice);
      container.appendChild(section);
      continue;
    }

    for (const record of records) {
      const card = document.createElement("button");
      card.type = "button";
      card.className = "candidate";
      card.dataset.recordId = String(record.id);
      if (selections[kind] === record.id) {
        card.classList.add("selected");
      }

      const img = document.createElement("img");
      img.src = handlers.imageUrl(record.image_url);
      img.alt = `${kind} ${record.id}`;
      card.appendChild(img);

      const caption = document.createElement("span");
      caption.textContent = Object.entries(record.attributes)
        .map(([name, value]) => `${name}: ${value}`)
        .join(", ");
      card.appendChild(caption);

      card.addEventListener("click", () => {
        handlers.onSelect(kind, record.id);
      });
      section.appendChild(card);
    }
    container.appendChild(section);
  }
  return container;
}
