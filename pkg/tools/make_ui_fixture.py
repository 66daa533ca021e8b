"""Regenerate the calculator-parity fixture for the frontend tests.

Runs the estimation pipeline over 20 cases spanning all scenarios (14
valid, 6 ordering violations), recording the full-precision service
payload plus the display strings at the CLI's 6-significant-digit
precision.  The frontend test suite replays these cases against the UI
logic: displayed values must equal the CLI strings exactly, and every
violation case must be blocked client-side before any request.

Usage: python tools/make_ui_fixture.py
"""

import json
from pathlib import Path

from fivenum.errors import ValidationError
from fivenum.service import result_payload
from fivenum.studies import StudyRow, row_to_summary

OUT = Path(__file__).resolve().parent.parent / "frontend" / "tests" / \
    "fixtures" / "estimates.json"

VALID_CASES = [
    {"n": 5, "min": 0, "q1": 1, "median": 2, "q3": 3, "max": 4},
    {"n": 85, "min": 11.2, "q1": 13.9, "median": 15.75, "q3": 18.1,
     "max": 24.6},
    {"n": 401, "min": -3.1, "q1": -0.8, "median": 0.05, "q3": 0.9,
     "max": 3.4},
    {"n": 5, "min": 2.0, "q1": 2.0, "median": 2.0, "q3": 2.0, "max": 2.0},
    {"n": 1000, "min": 0.001, "q1": 0.025, "median": 0.4, "q3": 1.75,
     "max": 92.5},
    {"n": 12, "min": -120, "q1": -60, "median": -55, "q3": -20, "max": -1},
    {"n": 37, "min": 0.0, "q1": 0.0, "median": 1.5, "q3": 4.5, "max": 4.5},
    {"n": 5, "min": 0, "median": 2, "max": 4},
    {"n": 70, "min": 12, "median": 44, "max": 97},
    {"n": 9, "min": -2.25, "median": 0.125, "max": 2.625},
    {"n": 4, "q1": 1, "median": 2, "q3": 3},
    {"n": 85, "q1": 13.9, "median": 15.75, "q3": 18.1},
    {"n": 643, "q1": -11.5, "median": -3.25, "q3": 8.75},
    {"n": 21, "q1": 100000.5, "median": 100001.25, "q3": 100002.125},
]

INVALID_CASES = [
    {"fields": {"n": 5, "min": 3, "q1": 1, "median": 2, "q3": 3, "max": 4},
     "code": "ORDER_VIOLATION"},
    {"fields": {"n": 5, "min": 0, "q1": 2.5, "median": 2, "q3": 3, "max": 4},
     "code": "ORDER_VIOLATION"},
    {"fields": {"n": 5, "min": 0, "q1": 1, "median": 3.5, "q3": 3, "max": 4},
     "code": "ORDER_VIOLATION"},
    {"fields": {"n": 5, "min": 0, "q1": 1, "median": 2, "q3": 5, "max": 4},
     "code": "ORDER_VIOLATION"},
    {"fields": {"n": 9, "min": 4.5, "median": 2, "max": 4},
     "code": "ORDER_VIOLATION"},
    {"fields": {"n": 8, "q1": 3.75, "median": 2, "q3": 3},
     "code": "ORDER_VIOLATION"},
]


def fmt6(x: float) -> str:
    return f"{x:.6g}"


def main() -> None:
    cases = []
    for fields in VALID_CASES:
        row = StudyRow(study_id="fixture",
                       n=fields.get("n"),
                       min=fields.get("min"), q1=fields.get("q1"),
                       median=fields.get("median"), q3=fields.get("q3"),
                       max=fields.get("max"))
        payload = result_payload(row_to_summary(row))
        cases.append({
            "kind": "valid",
            "request": fields,
            "response": payload,
            "display": {
                "mean": fmt6(payload["mean"]),
                "sd": fmt6(payload["sd"]),
                "scenario": payload["scenario"],
                "mean_method": payload["mean_method"],
                "sd_method": payload["sd_method"],
                "weights": [
                    {"label": w["label"], "value": fmt6(w["value"])}
                    for w in payload["weights"]
                ],
            },
        })
    for case in INVALID_CASES:
        row = StudyRow(study_id="fixture", n=case["fields"].get("n"),
                       min=case["fields"].get("min"),
                       q1=case["fields"].get("q1"),
                       median=case["fields"].get("median"),
                       q3=case["fields"].get("q3"),
                       max=case["fields"].get("max"))
        try:
            row_to_summary(row)
            raise SystemExit(f"fixture case unexpectedly valid: {case}")
        except ValidationError as exc:
            assert exc.code == case["code"], (exc.code, case)
        cases.append({
            "kind": "invalid",
            "request": case["fields"],
            "expected_code": case["code"],
        })
    assert len(cases) == 20
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(cases, indent=2) + "\n")
    print(f"wrote {OUT} ({len(cases)} cases)")


if __name__ == "__main__":
    main()
