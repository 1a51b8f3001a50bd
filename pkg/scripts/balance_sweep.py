"""Build balanced Gray codes over a range of widths and seeds; report spread and timing."""

import argparse
import csv
import sys
import time

from cubewalk.graycode import balance_class, build_balanced_code, is_cyclic_gray, transition_counts


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--out", type=argparse.FileType("w"), default=sys.stdout)
    args = p.parse_args(argv)

    w = csv.writer(args.out, lineterminator="\n")
    w.writerow(["n", "seed", "cyclic_gray", "min_count", "max_count", "class", "seconds"])
    for n in range(args.n_min, args.n_max + 1):
        for seed in range(args.seeds):
            start = time.perf_counter()
            s = build_balanced_code(n, seed)
            elapsed = time.perf_counter() - start
            counts = transition_counts(s).counts
            w.writerow([n, seed, is_cyclic_gray(s), min(counts), max(counts), balance_class(s).value, f"{elapsed:.4f}"])


if __name__ == "__main__":
    main()
