"""Mixing times of the bundled reference maps as CSV.

Columns: map, bits, practical walk length at 1e-6, then total-variation
mixing times at each requested eps.
"""

import argparse
import csv
import sys

from cubewalk import FIXTURES, load_fixture
from cubewalk.markov import markov_lazy, mixing_time, practical_mixing_time


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--eps", type=float, nargs="+", default=[0.25, 1e-2, 1e-4, 1e-6])
    p.add_argument("--out", type=argparse.FileType("w"), default=sys.stdout)
    args = p.parse_args(argv)

    w = csv.writer(args.out, lineterminator="\n")
    w.writerow(["map", "n_bits", "practical_b"] + [f"t_mix_{e:g}" for e in args.eps])
    for name in FIXTURES:
        f = load_fixture(name)
        m = markov_lazy(f)
        w.writerow([name, f.n_bits, practical_mixing_time(m)] + [mixing_time(m, e) for e in args.eps])


if __name__ == "__main__":
    main()
