"""Tabulate grid coverings of the complement of F_m against the series partial sums."""
import argparse

from crosscert.content import best_covering, lemma2_partial
from crosscert.geometry import DeltaSequence, complement_region


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=3)
    args = ap.parse_args()
    seq = DeltaSequence.default()
    print(f"{'m':>2} {'holes':>6} {'side':>8} {'covering':>10} {'partial sum':>12}")
    for m in range(args.depth + 1):
        region = complement_region(seq, m)
        best = best_covering(region, [seq.delta(n) for n in range(m + 1)])
        partial = lemma2_partial(seq, m)
        print(f"{m:>2} {len(region):>6} {str(best.side):>8} {float(best.exact_sum):>10.5f}"
              f" {float(partial.hi):>12.5f}")


if __name__ == "__main__":
    main()
