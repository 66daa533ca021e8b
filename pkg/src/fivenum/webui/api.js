/** Thin client for the estimate service. */
export async function postEstimate(payload, fetchImpl = fetch) {
    let response;
    try {
        response = await fetchImpl("/api/estimate", {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(payload),
        });
    }
    catch (exc) {
        return { kind: "network", message: String(exc) };
    }
    let body;
    try {
        body = await response.json();
    }
    catch {
        return { kind: "network", message: "malformed response" };
    }
    if (!response.ok) {
        const error = body.error ?? {
            code: "UNKNOWN",
            message: "the service rejected the request",
        };
        return { kind: "rejected", error };
    }
    return { kind: "ok", data: body };
}
