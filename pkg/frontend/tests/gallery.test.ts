import { describe, expect, it, vi } from "vitest";

import type { Candidate } from "../src/api.js";
import { renderCandidates } from "../src/gallery.js";

function candidate(kind: string, id: number): Candidate {
  return {
    id,
    kind,
    attributes: { Finish: "Matte" },
    image_url: `/v1/components/${id}/image`,
  };
}

const handlers = () => ({
  onSelect: vi.fn(),
  imageUrl: (path: string) => `http://svc${path}?format=png`,
});

describe("renderCandidates", () => {
  it("renders a gallery per kind in service order", () => {
    const h = handlers();
    const el = renderCandidates(
      { Fin: [candidate("Fin", 1)], Keel: [candidate("Keel", 2)] },
      {},
      h,
    );
    const kinds = Array.from(el.querySelectorAll(".gallery")).map(
      (s) => (s as HTMLElement).dataset.kind,
    );
    expect(kinds).toEqual(["Fin", "Keel"]);
  });

  it("says 'not in database' for an empty kind", () => {
    const el = renderCandidates({ Fin: [] }, {}, handlers());
    const notice = el.querySelector(".empty-notice");
    expect(notice?.textContent).toBe("not in database");
    expect(el.querySelectorAll(".candidate")).toHaveLength(0);
  });

  it("clicking a card selects that record", () => {
    const h = handlers();
    const el = renderCandidates(
      { Fin: [candidate("Fin", 4), candidate("Fin", 9)] },
      {},
      h,
    );
    const cards = el.querySelectorAll<HTMLButtonElement>(".candidate");
    cards[1].click();
    expect(h.onSelect).toHaveBeenCalledWith("Fin", 9);
  });

  it("marks the selected card and keeps it across re-render", () => {
    const picks = { Fin: 9 };
    for (let render = 0; render < 2; render++) {
      const el = renderCandidates(
        { Fin: [candidate("Fin", 4), candidate("Fin", 9)] },
        picks,
        handlers(),
      );
      const selected = el.querySelectorAll(".candidate.selected");
      expect(selected).toHaveLength(1);
      expect((selected[0] as HTMLElement).dataset.recordId).toBe("9");
    }
  });

  it("thumbnails come from the service image endpoint", () => {
    const el = renderCandidates({ Fin: [candidate("Fin", 4)] }, {}, handlers());
    const img = el.querySelector("img")!;
    expect(img.src).toBe("http://svc/v1/components/4/image?format=png");
  });
});
