import { describe, expect, it, vi } from "vitest";

import type { SchemaResponse } from "../src/api.js";
import { renderQueryForm, renderSchemaError } from "../src/form.js";
import { wildcardForm } from "../src/state.js";

// invented names: the form must render whatever the service says,
// so nothing here matches the real schema on purpose
const schema: SchemaResponse = {
  version: 1,
  wildcard: "Unknown",
  kinds: {
    Torso: [
      { name: "Plumage", values: ["Sparse", "Dense"] },
      { name: "Sheen", values: ["Matte", "Glossy", "Unknown"] },
    ],
    Antenna: [{ name: "Curl", values: ["Tight", "Loose"] }],
  },
};

const noHandlers = { onChange: () => {}, onSubmit: () => {} };

describe("renderQueryForm", () => {
  it("renders one section per kind and one selector per attribute", () => {
    const form = renderQueryForm(schema, wildcardForm(schema), noHandlers);
    const sections = form.querySelectorAll("fieldset");
    expect(sections).toHaveLength(2);
    expect(sections[0].dataset.kind).toBe("Torso");
    expect(sections[0].querySelectorAll("select")).toHaveLength(2);
    expect(sections[1].dataset.kind).toBe("Antenna");
    expect(sections[1].querySelectorAll("select")).toHaveLength(1);
  });

  it("offers exactly the served values, wildcard first when absent", () => {
    const form = renderQueryForm(schema, wildcardForm(schema), noHandlers);
    const plumage = form.querySelector<HTMLSelectElement>(
      'select[data-attribute="Plumage"]',
    )!;
    const options = Array.from(plumage.options).map((o) => o.value);
    expect(options).toEqual(["Unknown", "Sparse", "Dense"]);

    const sheen = form.querySelector<HTMLSelectElement>(
      'select[data-attribute="Sheen"]',
    )!;
    expect(Array.from(sheen.options).map((o) => o.value)).toEqual([
      "Matte",
      "Glossy",
      "Unknown",
    ]);
  });

  it("defaults every selector to the wildcard", () => {
    const form = renderQueryForm(schema, wildcardForm(schema), noHandlers);
    for (const select of form.querySelectorAll("select")) {
      expect(select.value).toBe("Unknown");
    }
  });

  it("reports value changes with kind and attribute names", () => {
    const onChange = vi.fn();
    const form = renderQueryForm(schema, wildcardForm(schema), {
      onChange,
      onSubmit: () => {},
    });
    const curl = form.querySelector<HTMLSelectElement>(
      'select[data-attribute="Curl"]',
    )!;
    curl.value = "Loose";
    curl.dispatchEvent(new Event("change"));
    expect(onChange).toHaveBeenCalledWith("Antenna", "Curl", "Loose");
  });

  it("submits without navigating", () => {
    const onSubmit = vi.fn();
    const form = renderQueryForm(schema, wildcardForm(schema), {
      onChange: () => {},
      onSubmit,
    }) as HTMLFormElement;
    const event = new Event("submit", { cancelable: true });
    form.dispatchEvent(event);
    expect(onSubmit).toHaveBeenCalledOnce();
    expect(event.defaultPrevented).toBe(true);
  });

  it("restores previously chosen values on re-render", () => {
    const values = wildcardForm(schema);
    values.Torso.Plumage = "Dense";
    const form = renderQueryForm(schema, values, noHandlers);
    const plumage = form.querySelector<HTMLSelectElement>(
      'select[data-attribute="Plumage"]',
    )!;
    expect(plumage.value).toBe("Dense");
  });
});

describe("renderSchemaError", () => {
  it("is an alert with the message", () => {
    const banner = renderSchemaError("unsupported schema version 9");
    expect(banner.getAttribute("role")).toBe("alert");
    expect(banner.textContent).toContain("unsupported schema version 9");
  });
});
