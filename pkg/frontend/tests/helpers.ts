import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { initApp, type AppHandle } from "../src/app.js";
import type { FetchLike } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));

export function loadPage(): Document {
  const html = readFileSync(join(here, "..", "public", "index.html"),
                            "utf-8");
  document.open();
  document.write(html);
  document.close();
  return document;
}

export interface Harness {
  doc: Document;
  app: AppHandle;
  calls: Array<{ url: string; body: unknown }>;
}

/** Mount the app against a mocked estimate service. */
export function mount(
  responder?: (body: unknown) => Promise<Response> | Response,
): Harness {
  const doc = loadPage();
  const calls: Harness["calls"] = [];
  const fetchImpl: FetchLike = async (url, init) => {
    const body = init?.body ? JSON.parse(String(init.body)) : null;
    calls.push({ url, body });
    if (!responder) {
      throw new Error("network disabled in this test");
    }
    return responder(body);
  };
  const app = initApp(doc, fetchImpl);
  return { doc, app, calls };
}

export function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export function setInput(doc: Document, field: string, value: string): void {
  const input = doc.querySelector(`#field-${field}`) as HTMLInputElement;
  input.value = value;
  input.dispatchEvent(new Event("input", { bubbles: true }));
}

export function pickScenario(doc: Document, scenario: string): void {
  const radio = doc.querySelector(
    `input[name=scenario][value=${scenario}]`,
  ) as HTMLInputElement;
  radio.checked = true;
  radio.dispatchEvent(new Event("change", { bubbles: true }));
}

export function submit(doc: Document): void {
  const form = doc.querySelector("#calculator-form") as HTMLFormElement;
  form.dispatchEvent(new Event("submit", { bubbles: true,
                                           cancelable: true }));
}

export function text(doc: Document, selector: string): string {
  return (doc.querySelector(selector) as HTMLElement).textContent ?? "";
}
