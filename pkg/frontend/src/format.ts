/**
 * Number formatting that matches the CLI's default output
 * (printf-style "%.6g"): 6 significant digits, fixed notation while
 * the decimal exponent is in [-4, 6), exponential otherwise, trailing
 * zeros stripped, two-digit exponents.
 */

export function formatSignificant(value: number, digits = 6): string {
  if (!Number.isFinite(value)) {
    return String(value);
  }
  if (value === 0) {
    return "0";
  }
  // round to `digits` significant digits first; the notation choice
  // depends on the exponent *after* rounding (9.9999995 -> 10.0000)
  const sci = value.toExponential(digits - 1);
  const [mantissaText, expText] = sci.split("e");
  const exponent = Number(expText);

  if (exponent >= -4 && exponent < digits) {
    return rebuildFixed(mantissaText, exponent);
  }
  let mantissa = mantissaText;
  if (mantissa.includes(".")) {
    mantissa = mantissa.replace(/0+$/, "").replace(/\.$/, "");
  }
  const sign = exponent < 0 ? "-" : "+";
  const absExp = Math.abs(exponent);
  const expDigits = absExp < 10 ? `0${absExp}` : String(absExp);
  return `${mantissa}e${sign}${expDigits}`;
}

/** Fixed-notation string from a rounded mantissa and exponent. */
function rebuildFixed(mantissaText: string, exponent: number): string {
  const negative = mantissaText.startsWith("-");
  const digits = mantissaText.replace("-", "").replace(".", "");
  let out: string;
  if (exponent >= 0) {
    if (exponent + 1 >= digits.length) {
      out = digits.padEnd(exponent + 1, "0");
    } else {
      out = `${digits.slice(0, exponent + 1)}.${digits.slice(exponent + 1)}`;
    }
  } else {
    out = `0.${"0".repeat(-exponent - 1)}${digits}`;
  }
  if (out.includes(".")) {
    out = out.replace(/0+$/, "").replace(/\.$/, "");
  }
  return negative ? `-${out}` : out;
}
