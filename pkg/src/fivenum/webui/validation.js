/**
 * Client-side validation of the calculator form.
 *
 * The codes mirror the server's validation codes exactly, so a study
 * that fails here would fail server-side with the same code; ordering
 * violations and missing fields never reach the network.
 */
/** Fields each scenario requires, in ascending order. */
export const SCENARIO_FIELDS = {
    S1: ["min", "median", "max"],
    S2: ["q1", "median", "q3"],
    S3: ["min", "q1", "median", "q3", "max"],
};
/** Minimum sample size per scenario (five ranks need n >= 5). */
export const SCENARIO_MIN_N = {
    S1: 5,
    S2: 4,
    S3: 5,
};
/** Mirror of the server's machine-readable validation codes. */
export const VALIDATION_CODES = [
    "MISSING_N",
    "N_INVALID",
    "N_TOO_SMALL",
    "MISSING_MEDIAN",
    "INSUFFICIENT_SUMMARY",
    "ORDER_VIOLATION",
    "NON_FINITE_VALUE",
    "NOT_A_NUMBER",
];
/** User-facing message for every server code. */
export const CODE_MESSAGES = {
    MISSING_N: "Enter the sample size n.",
    N_INVALID: "The sample size must be a whole number of at least 1.",
    N_TOO_SMALL: "The sample size is too small for this scenario (need 5; 4 for " +
        "quartiles-only).",
    MISSING_MEDIAN: "Enter the median; it is required in every scenario.",
    INSUFFICIENT_SUMMARY: "Fill in every field of the selected scenario before calculating.",
    ORDER_VIOLATION: "Values must be ordered: min ≤ q1 ≤ median ≤ q3 ≤ max.",
    NON_FINITE_VALUE: "Values must be finite numbers.",
    NOT_A_NUMBER: "This entry is not a number.",
};
/** Lenient numeric parse: empty -> null, junk -> NaN. */
export function parseNumber(text) {
    const trimmed = text.trim();
    if (trimmed === "") {
        return null;
    }
    const value = Number(trimmed);
    return Number.isNaN(value) ? NaN : value;
}
function err(code, field) {
    return { code, field, message: CODE_MESSAGES[code] };
}
/**
 * Validate the raw form for a scenario.  All violated constraints are
 * reported at once so every offending field can be highlighted.
 */
export function validateForm(scenario, raw) {
    const errors = [];
    const fields = SCENARIO_FIELDS[scenario];
    const nText = raw.n.trim();
    let n = null;
    if (nText === "") {
        errors.push(err("MISSING_N", "n"));
    }
    else {
        const parsed = Number(nText);
        if (!Number.isInteger(parsed) || parsed < 1) {
            errors.push(err("N_INVALID", "n"));
        }
        else if (parsed < SCENARIO_MIN_N[scenario]) {
            errors.push(err("N_TOO_SMALL", "n"));
        }
        else {
            n = parsed;
        }
    }
    const values = {};
    for (const field of fields) {
        const parsed = parseNumber(raw[field]);
        if (parsed === null) {
            errors.push(field === "median"
                ? err("MISSING_MEDIAN", field)
                : err("INSUFFICIENT_SUMMARY", field));
        }
        else if (Number.isNaN(parsed)) {
            errors.push(err("NOT_A_NUMBER", field));
        }
        else if (!Number.isFinite(parsed)) {
            errors.push(err("NON_FINITE_VALUE", field));
        }
        else {
            values[field] = parsed;
        }
    }
    const chain = fields.filter((f) => values[f] !== undefined);
    for (let k = 0; k + 1 < chain.length; k += 1) {
        const lo = chain[k];
        const hi = chain[k + 1];
        if (values[lo] > values[hi]) {
            errors.push(err("ORDER_VIOLATION", hi));
        }
    }
    if (errors.length > 0 || n === null) {
        return { ok: false, errors };
    }
    const payload = {
        n,
        median: values.median,
    };
    if (values.min !== undefined)
        payload.min = values.min;
    if (values.q1 !== undefined)
        payload.q1 = values.q1;
    if (values.q3 !== undefined)
        payload.q3 = values.q3;
    if (values.max !== undefined)
        payload.max = values.max;
    return { ok: true, payload };
}
