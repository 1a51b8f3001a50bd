"""Mean stopping time against the theoretical bound and the fitted curve."""

import argparse
import sys

from cubewalk.graycode import build_balanced_code
from cubewalk.ncube import function_from_cycle
from cubewalk.stoptime import estimate_expected_stop, summary_csv


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, nargs="+", default=[3, 4, 6, 8, 10, 12, 14, 16])
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", type=argparse.FileType("w"), default=sys.stdout)
    args = p.parse_args(argv)

    rows = []
    for n in args.n:
        f = function_from_cycle(build_balanced_code(n, args.seed))
        rows.append(estimate_expected_stop(f, args.trials, args.seed, jobs=args.jobs))
        print(f"n={n} mean={rows[-1].mean:.2f} curve={rows[-1].curve:.2f}", file=sys.stderr)
    args.out.write(summary_csv(rows))


if __name__ == "__main__":
    main()
