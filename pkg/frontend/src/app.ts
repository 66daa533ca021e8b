/**
 * Calculator page wiring.
 *
 * All estimation happens server-side; this module only validates,
 * submits, and renders the response verbatim (formatted to the CLI's
 * display precision).  At most one request is in flight: a newer
 * submission supersedes any response still pending.
 */

import { postEstimate, type EstimateOutcome, type FetchLike } from "./api.js";
import { formatSignificant } from "./format.js";
import {
  CODE_MESSAGES,
  SCENARIO_FIELDS,
  validateForm,
  type FieldName,
  type RawForm,
  type Scenario,
  type ValidationCode,
} from "./validation.js";

const ALL_FIELDS: FieldName[] = ["min", "q1", "median", "q3", "max"];

export interface AppHandle {
  /** resolves when the in-flight submission (if any) has rendered */
  pending: () => Promise<void>;
}

function inputOf(root: Document, name: string): HTMLInputElement {
  const el = root.querySelector<HTMLInputElement>(`#field-${name}`);
  if (!el) {
    throw new Error(`missing input #field-${name}`);
  }
  return el;
}

function readForm(root: Document): RawForm {
  return {
    n: inputOf(root, "n").value,
    min: inputOf(root, "min").value,
    q1: inputOf(root, "q1").value,
    median: inputOf(root, "median").value,
    q3: inputOf(root, "q3").value,
    max: inputOf(root, "max").value,
  };
}

function currentScenario(root: Document): Scenario {
  const checked = root.querySelector<HTMLInputElement>(
    "input[name=scenario]:checked",
  );
  return (checked?.value ?? "S3") as Scenario;
}

function setFieldError(
  root: Document,
  field: string,
  message: string | null,
): void {
  const slot = root.querySelector(`#error-${field}`);
  if (slot) {
    slot.textContent = message ?? "";
  }
}

function clearErrors(root: Document): void {
  for (const field of [...ALL_FIELDS, "n"]) {
    setFieldError(root, field, null);
  }
}

export function messageForCode(code: string): string {
  return (
    CODE_MESSAGES[code as ValidationCode] ??
    "The service rejected this request."
  );
}

function renderResult(root: Document, outcome: EstimateOutcome): void {
  const panel = root.querySelector("#result") as HTMLElement;
  const banner = root.querySelector("#banner") as HTMLElement;
  banner.hidden = true;
  if (outcome.kind === "network") {
    banner.hidden = false;
    banner.textContent =
      "Could not reach the estimation service; check the connection " +
      "and press Calculate to retry.";
    panel.hidden = true;
    return;
  }
  if (outcome.kind === "rejected") {
    const field = outcome.error.field ?? "n";
    setFieldError(root, field, messageForCode(outcome.error.code));
    panel.hidden = true;
    return;
  }
  const data = outcome.data;
  panel.hidden = false;
  (panel.querySelector("#out-mean") as HTMLElement).textContent =
    formatSignificant(data.mean);
  (panel.querySelector("#out-sd") as HTMLElement).textContent =
    formatSignificant(data.sd);
  (panel.querySelector("#out-scenario") as HTMLElement).textContent =
    data.scenario;
  (panel.querySelector("#out-mean-method") as HTMLElement).textContent =
    data.mean_method;
  (panel.querySelector("#out-sd-method") as HTMLElement).textContent =
    data.sd_method;
  const weights = panel.querySelector("#out-weights") as HTMLElement;
  weights.innerHTML = "";
  for (const entry of data.weights) {
    const li = root.createElement("li");
    li.textContent = `${entry.label} = ${formatSignificant(entry.value)}`;
    weights.appendChild(li);
  }
  const warnings = panel.querySelector("#out-warnings") as HTMLElement;
  warnings.innerHTML = "";
  warnings.hidden = data.warnings.length === 0;
  for (const text of data.warnings) {
    const li = root.createElement("li");
    li.textContent = text;
    warnings.appendChild(li);
  }
}

function applyScenario(root: Document, scenario: Scenario): void {
  const visible = new Set<string>(SCENARIO_FIELDS[scenario]);
  for (const field of ALL_FIELDS) {
    const row = root.querySelector(`#row-${field}`) as HTMLElement;
    const input = inputOf(root, field);
    const show = visible.has(field);
    row.hidden = !show;
    if (!show) {
      input.value = "";
      setFieldError(root, field, null);
    }
  }
}

function refreshSubmitState(root: Document): void {
  const button = root.querySelector("#calculate") as HTMLButtonElement;
  const result = validateForm(currentScenario(root), readForm(root));
  button.disabled = !result.ok;
}

export function initApp(
  root: Document,
  fetchImpl: FetchLike = fetch,
): AppHandle {
  let requestSeq = 0;
  let inFlight: Promise<void> = Promise.resolve();

  applyScenario(root, currentScenario(root));
  refreshSubmitState(root);

  for (const radio of root.querySelectorAll<HTMLInputElement>(
    "input[name=scenario]",
  )) {
    radio.addEventListener("change", () => {
      applyScenario(root, currentScenario(root));
      clearErrors(root);
      refreshSubmitState(root);
    });
  }

  for (const field of [...ALL_FIELDS, "n"]) {
    inputOf(root, field).addEventListener("input", () => {
      setFieldError(root, field, null);
      refreshSubmitState(root);
    });
  }

  const form = root.querySelector("#calculator-form") as HTMLFormElement;
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    clearErrors(root);
    const validation = validateForm(currentScenario(root), readForm(root));
    if (!validation.ok) {
      // belt and braces: the button is disabled in this state
      for (const fieldError of validation.errors) {
        setFieldError(root, fieldError.field, fieldError.message);
      }
      return;
    }
    requestSeq += 1;
    const seq = requestSeq;
    inFlight = postEstimate(validation.payload, fetchImpl).then((outcome) => {
      if (seq === requestSeq) {
        renderResult(root, outcome);
      }
    });
  });

  return { pending: () => inFlight };
}

function boot(): void {
  if (document.querySelector("#calculator-form")) {
    initApp(document);
  }
}

if (typeof document !== "undefined") {
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", boot);
  } else {
    boot();
  }
}
