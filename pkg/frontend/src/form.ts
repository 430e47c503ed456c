import type { SchemaResponse } from "./api.js";

export interface FormHandlers {
  onChange(kind: string, attribute: string, value: string): void;
  onSubmit(): void;
}

/**
 * Build the description form straight from the served schema: one section
 * per kind, one selector per attribute, options exactly the served values.
 * Nothing about attributes is known at compile time.
 */
export function renderQueryForm(
  schema: SchemaResponse,
  values: Record<string, Record<string, string>>,
  handlers: FormHandlers,
): HTMLElement {
  const form = document.createElement("form");
  form.className = "query-form";
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    handlers.onSubmit();
  });

  for (const [kind, specs] of Object.entries(schema.kinds)) {
    const section = document.createElement("fieldset");
    section.dataset.kind = kind;
    const legend = document.createElement("legend");
    legend.textContent = kind;
    section.appendChild(legend);

    for (const spec of specs) {
      const label = document.createElement("label");
      label.textContent = spec.name;

      const select = document.createElement("select");
      select.dataset.kind = kind;
      select.dataset.attribute = spec.name;
      // the wildcard is always a legal query value even where records
      // cannot store it, so it is prepended when the value list lacks it
      const options = spec.values.includes(schema.wildcard)
        ? spec.values
        : [schema.wildcard, ...spec.values];
      for (const value of options) {
        const option = document.createElement("option");
        option.value = value;
        option.textContent = value;
        select.appendChild(option);
      }
      select.value = values[kind]?.[spec.name] ?? schema.wildcard;
      select.addEventListener("change", () => {
        handlers.onChange(kind, spec.name, select.value);
      });

      label.appendChild(select);
      section.appendChild(label);
    }
    form.appendChild(section);
  }

  const submit = document.createElement("button");
  submit.type = "submit";
  submit.className = "submit-query";
  submit.textContent = "Search";
  form.appendChild(submit);
  return form;
}

/** Banner shown instead of the form when the schema cannot be used. */
export function renderSchemaError(message: string): HTMLElement {
  const banner = document.createElement("div");
  banner.className = "error-banner";
  banner.setAttribute("role", "alert");
  banner.textContent = message;
  return banner;
}
