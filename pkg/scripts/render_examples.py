"""Write ball drawings (with witness overlays) for a few named metrics."""
import argparse
from pathlib import Path

from freeindex.index import numerical_index
from freeindex.metric import validate
from freeindex.render import ball_svg

EXAMPLES = {
    "equilateral": (1, 1, 1),
    "aligned": (2, 1, 1),
    "long_isosceles": (2, 2, 1),
    "fat_isosceles": ("3/2", 1, 1),
    "scalene": (4, 3, 2),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Path("renders"))
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for name, sides in EXAMPLES.items():
        r = numerical_index(validate(*sides))
        path = args.out_dir / f"{name}.svg"
        path.write_text(ball_svg(r.canonical, r.witness), encoding="utf-8")
        print(f"{name:<15} index {r.index!s:<6} -> {path}")


if __name__ == "__main__":
    main()
