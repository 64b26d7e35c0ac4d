"""Write SVG drawings of F_0..F_m for the default gap sequence."""
import argparse
from pathlib import Path

from crosscert.geometry import DeltaSequence
from crosscert.render import render_Fm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=2)
    ap.add_argument("--out", default="figures")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    seq = DeltaSequence.default()
    for m in range(args.depth + 1):
        path = out / f"F_{m}.svg"
        path.write_text(render_Fm(seq, m))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
