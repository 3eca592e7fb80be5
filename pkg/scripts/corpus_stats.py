"""Run the randomized self-check suites and print per-suite timing.

Usage: python3 scripts/corpus_stats.py [suite ...]
Suites: deltaw noether lattice quasihom (default: all).
"""
import sys
import time

from qres.checks import SUITE_NAMES, run_suite


def main(argv):
    names = argv or list(SUITE_NAMES)
    bad = 0
    for name in names:
        t0 = time.perf_counter()
        results = run_suite(name)
        dt = time.perf_counter() - t0
        for res in results:
            print("%s  [%.2fs]" % (res.summary(), dt))
            bad += res.failed
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
