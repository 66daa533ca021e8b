"""CSV ingestion of study rows and batch conversion.

The input schema is fixed: header ``study_id,n,min,q1,median,q3,max``
with blank cells for unreported fields, one study per row.  Scenario
detection is driven purely by which cells are present; rows that fail
validation become error records carrying a machine-readable code, they
never abort the batch.  The output CSV echoes the input cells verbatim
and appends ``est_mean,est_sd,mean_method,sd_method,warnings``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ValidationError
from .estimators import (EstimateResult, FiveNumberSummary, Scenario,
                         estimate)

__all__ = [
    "CSV_HEADER",
    "StudyRow",
    "ConversionRecord",
    "detect_scenario",
    "row_to_summary",
    "convert_row",
    "convert_file",
    "records_to_csv",
]

CSV_HEADER = ("study_id", "n", "min", "q1", "median", "q3", "max")
_NUMERIC_FIELDS = ("min", "q1", "median", "q3", "max")


@dataclass(frozen=True)
class StudyRow:
    """One parsed study: identifiers plus the reported quantiles."""

    study_id: str
    n: int | None
    min: float | None = None
    q1: float | None = None
    median: float | None = None
    q3: float | None = None
    max: float | None = None
    raw: dict[str, str] = field(default_factory=dict, compare=False)


@dataclass
class ConversionRecord:
    """A study row with its estimate, or the validation error instead."""

    row: StudyRow
    result: EstimateResult | None = None
    error: dict | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.error is None


def detect_scenario(row: StudyRow) -> Scenario:
    """S1/S2/S3 from the reported field pattern; rejects anything else."""
    if row.median is None:
        raise ValidationError("MISSING_MEDIAN",
                              "the median must be reported", field="median")
    present = frozenset(f for f in _NUMERIC_FIELDS
                        if getattr(row, f) is not None)
    if present == {"min", "q1", "median", "q3", "max"}:
        return Scenario.S3
    if present == {"min", "median", "max"}:
        return Scenario.S1
    if present == {"q1", "median", "q3"}:
        return Scenario.S2
    missing_hint = sorted({"min", "q1", "q3", "max"} - present)
    raise ValidationError(
        "INSUFFICIENT_SUMMARY",
        f"reported fields {sorted(present)} match no scenario "
        f"(unreported: {missing_hint})")


def row_to_summary(row: StudyRow) -> FiveNumberSummary:
    """Validate a study row into a summary, enforcing scenario minima."""
    scen = detect_scenario(row)
    if row.n is None:
        raise ValidationError("MISSING_N", "the sample size n is required",
                              field="n")
    summary = FiveNumberSummary(n=row.n, median=row.median, minimum=row.min,
                                q1=row.q1, q3=row.q3, maximum=row.max)
    if row.n < scen.min_n:
        raise ValidationError(
            "N_TOO_SMALL",
            f"scenario {scen.value} needs n >= {scen.min_n}, got {row.n}",
            field="n")
    return summary


def convert_row(row: StudyRow) -> ConversionRecord:
    """Estimate one study; validation failures become error records."""
    try:
        summary = row_to_summary(row)
        result = estimate(summary)
    except ValidationError as exc:
        return ConversionRecord(row=row, error=exc.to_dict())
    return ConversionRecord(row=row, result=result,
                            warnings=list(result.warnings))


def _parse_cell(name: str, text: str, line: int):
    text = text.strip()
    if text == "":
        return None
    try:
        value = float(text)
    except ValueError:
        raise ValidationError("NOT_A_NUMBER",
                              f"line {line}: {name}={text!r} is not a number",
                              field=name) from None
    if not math.isfinite(value):
        raise ValidationError("NON_FINITE_VALUE",
                              f"line {line}: {name}={text!r} is not finite",
                              field=name)
    return value


def _parse_n(text: str, line: int) -> int | None:
    text = text.strip()
    if text == "":
        return None
    try:
        as_float = float(text)
        n = int(as_float)
        if n != as_float:
            raise ValueError
    except ValueError:
        raise ValidationError("N_INVALID",
                              f"line {line}: n={text!r} is not an integer",
                              field="n") from None
    return n


def parse_rows(fh) -> list[StudyRow | ConversionRecord]:
    """Parse CSV into study rows; per-row parse errors become records."""
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        return []
    header = [h.strip().lower() for h in header]
    if tuple(header) != CSV_HEADER:
        raise ValueError(
            f"line 1: expected header {','.join(CSV_HEADER)!r}, "
            f"got {','.join(header)!r}")
    out: list[StudyRow | ConversionRecord] = []
    for line, cells in enumerate(reader, start=2):
        if not cells or all(c.strip() == "" for c in cells):
            continue
        if len(cells) != len(CSV_HEADER):
            raise ValueError(
                f"line {line}: expected {len(CSV_HEADER)} cells, "
                f"got {len(cells)}")
        raw = dict(zip(CSV_HEADER, (c.strip() for c in cells)))
        try:
            row = StudyRow(
                study_id=raw["study_id"],
                n=_parse_n(raw["n"], line),
                min=_parse_cell("min", raw["min"], line),
                q1=_parse_cell("q1", raw["q1"], line),
                median=_parse_cell("median", raw["median"], line),
                q3=_parse_cell("q3", raw["q3"], line),
                max=_parse_cell("max", raw["max"], line),
                raw=raw,
            )
            out.append(row)
        except ValidationError as exc:
            stub = StudyRow(study_id=raw["study_id"], n=None, raw=raw)
            out.append(ConversionRecord(row=stub, error=exc.to_dict()))
    return out


def convert_file(path: str | Path) -> list[ConversionRecord]:
    """Convert every row of a study CSV; order preserved, no aborts."""
    with open(path, newline="") as fh:
        parsed = parse_rows(fh)
    records = []
    for item in parsed:
        if isinstance(item, ConversionRecord):
            records.append(item)
        else:
            records.append(convert_row(item))
    return records


def records_to_csv(records: list[ConversionRecord],
                   precision: int = 6) -> str:
    """Output CSV: input cells verbatim + est_mean,est_sd,methods,warnings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(CSV_HEADER)
                    + ["est_mean", "est_sd", "mean_method", "sd_method",
                       "warnings"])
    for rec in records:
        raw = rec.row.raw or {
            "study_id": rec.row.study_id,
            "n": "" if rec.row.n is None else str(rec.row.n),
            **{f: ("" if getattr(rec.row, f) is None
                   else repr(getattr(rec.row, f)))
               for f in _NUMERIC_FIELDS},
        }
        base = [raw.get(c, "") for c in CSV_HEADER]
        if rec.ok:
            res = rec.result
            notes = "; ".join(rec.warnings)
            writer.writerow(base + [f"{res.mean:.{precision}g}",
                                    f"{res.sd:.{precision}g}",
                                    res.mean_method.label,
                                    res.sd_method.label,
                                    notes])
        else:
            msg = f"{rec.error['code']}: {rec.error['message']}"
            writer.writerow(base + ["", "", "", "", msg])
    return buf.getvalue()
