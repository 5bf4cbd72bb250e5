"""Counts of small (p-)shelves and (p-)racks, batched search next to the plain counter."""

import argparse
import time

from paramybe.search import SearchStats, count_shelves_plain, enumerate_p_shelves


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    print("n m  shelves  racks  shelves/≅  racks/≅  plain  secs")
    cases = [(n, 1) for n in range(1, args.max_n + 1)] + [(2, 2)]
    for n, m in cases:
        t0 = time.perf_counter()
        stats = SearchStats()
        counts = [sum(1 for _ in enumerate_p_shelves(n, m, rack_only=r, up_to_relabeling=d,
                                                     threads=args.threads, stats=stats))
                  for d in (False, True) for r in (False, True)]
        plain = count_shelves_plain(n) if m == 1 else "-"
        dt = time.perf_counter() - t0
        print(f"{n} {m}  {counts[0]:7d}  {counts[1]:5d}  {counts[2]:9d}  {counts[3]:7d}  {plain!s:>5}  {dt:4.1f}")
        if stats.discrepancies:
            raise SystemExit(f"{stats.discrepancies} discrepancies at n={n}, m={m}")


if __name__ == "__main__":
    main()
