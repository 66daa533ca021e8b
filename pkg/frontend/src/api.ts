/** Thin client for the estimate service. */

import type { EstimateRequest } from "./validation.js";

export interface WeightEntry {
  label: string;
  value: number;
}

export interface EstimateResponse {
  scenario: string;
  mean: number;
  sd: number;
  mean_method: string;
  sd_method: string;
  weights: WeightEntry[];
  warnings: string[];
}

export interface ServiceError {
  code: string;
  message: string;
  field?: string;
}

export type EstimateOutcome =
  | { kind: "ok"; data: EstimateResponse }
  | { kind: "rejected"; error: ServiceError }
  | { kind: "network"; message: string };

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export async function postEstimate(
  payload: EstimateRequest,
  fetchImpl: FetchLike = fetch,
): Promise<EstimateOutcome> {
  let response: Response;
  try {
    response = await fetchImpl("/api/estimate", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  } catch (exc) {
    return { kind: "network", message: String(exc) };
  }
  let body: unknown;
  try {
    body = await response.json();
  } catch {
    return { kind: "network", message: "malformed response" };
  }
  if (!response.ok) {
    const error = (body as { error?: ServiceError }).error ?? {
      code: "UNKNOWN",
      message: "the service rejected the request",
    };
    return { kind: "rejected", error };
  }
  return { kind: "ok", data: body as EstimateResponse };
}
