"""Sampled exact checks of the four birational families at chosen parameters."""

import argparse

from paramybe.rational import full_report


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--z", nargs=3, default=["2", "3", "5"])
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    ok = True
    for item in (1, 2, 3, 4):
        for rep in full_report(item, *args.z, samples=args.samples, seed=args.seed):
            print(rep.format())
            ok &= rep.passed
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
