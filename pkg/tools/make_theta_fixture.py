"""Regenerate tests/data/theta_table_reference.csv.

Computes the 100-row shortcut-coefficient table with mpmath at 40
significant digits, entirely independent of the package's quantile
implementation, and rounds half-away-from-zero to the table's 3-decimal
presentation.  The frozen CSV is the oracle for table reproduction.

Usage: python tools/make_theta_fixture.py
"""

from pathlib import Path

import mpmath as mp

mp.mp.dps = 40

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / \
    "theta_table_reference.csv"


def ppf(p: mp.mpf) -> mp.mpf:
    """High-precision standard normal quantile via a solved tail equation."""
    # initial double-precision guess, then Newton in mpmath
    import scipy.special as sc

    x = mp.mpf(float(sc.ndtri(float(p))))
    for _ in range(60):
        f = mp.ncdf(x) - p
        step = f / mp.npdf(x)
        x -= step
        if abs(step) < mp.mpf(10) ** (-35):
            break
    return x


def main() -> None:
    lines = ["Q,n,theta1,theta2"]
    for q in range(1, 101):
        n = 4 * q + 1
        nn = mp.mpf(n)
        j = mp.mpf("0.07") * nn ** mp.mpf("0.6")
        t1 = (2 + 2 * j) * ppf((nn - mp.mpf("0.375")) / (nn + mp.mpf("0.25")))
        t2 = (2 + 2 / j) * ppf((mp.mpf("0.75") * nn - mp.mpf("0.125"))
                               / (nn + mp.mpf("0.25")))

        def fmt(v: mp.mpf) -> str:
            scaled = v * 1000 + mp.mpf("0.5")  # v > 0 always
            return f"{int(mp.floor(scaled)) / 1000:.3f}"

        lines.append(f"{q},{n},{fmt(t1)},{fmt(t2)}")
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
