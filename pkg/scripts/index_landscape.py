"""Tabulate the index over canonical triangles with d(x,y) = 1.

Rows sweep rho(x), columns sweep rho(y) <= rho(x); entries mark the regime
(R = metric ratio wins, C = optimal contribution wins).

    python3 scripts/index_landscape.py --steps 10 --csv landscape.csv
"""
import argparse
import csv
from fractions import Fraction
from pathlib import Path

from freeindex.index import numerical_index
from freeindex.metric import validate


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=10)
    ap.add_argument("--csv", type=Path)
    args = ap.parse_args()

    n = args.steps
    rows = []
    print("rho(x) \\ rho(y)  " + " ".join(f"{Fraction(j, n)!s:>8}" for j in range(1, n + 1)))
    for i in range(n // 2, n + 1):
        rx = Fraction(i, n)
        cells = []
        for j in range(1, n + 1):
            ry = Fraction(j, n)
            if ry > rx or rx + ry <= 1:
                cells.append(" " * 8)
                continue
            r = numerical_index(validate(1, rx, ry))
            tag = {"ratio_case": "R", "contop_case": "C"}.get(r.regime.value, "A")
            cells.append(f"{float(r.index):.4f}{tag:>2}")
            rows.append((1, str(rx), str(ry), str(r.index), r.regime.value))
        print(f"{str(rx):>15}  " + " ".join(cells))
    if args.csv:
        with args.csv.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["d_xy", "rho_x", "rho_y", "index", "regime"])
            w.writerows(rows)
        print(f"wrote {args.csv}")


if __name__ == "__main__":
    main()
