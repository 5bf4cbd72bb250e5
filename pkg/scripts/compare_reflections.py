"""Reflections of the mod-8 conjugate p-rack solution against its brace twist.

Prints set sizes and which ζ multiples of brace_reflection land in each set.
"""

import argparse

from paramybe.algebra import modular_brace, param_set
from paramybe.reflections import brace_reflection, cond0_elements
from paramybe.search import compare_reflection_sets
from paramybe.shelves import conjugate_p_rack
from paramybe.twists import brace_sigma


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=3, help="2^k modulus for the unit brace")
    args = ap.parse_args()

    B = modular_brace(args.k)
    Y = param_set(B, range(B.n), "inverse")
    cmp = compare_reflection_sets(conjugate_p_rack(B, Y), brace_sigma(B, Y))
    print(f"rack solution reflections   : {len(cmp.rack)}")
    print(f"twisted solution reflections: {len(cmp.twisted)}")
    print(f"common                      : {len(cmp.common)}")
    print(f"satisfying transport        : {len(cmp.basic0)}")
    print(f"cond0 elements              : {[B.carrier.labels[w] for w in cond0_elements(B, Y)]}")
    rack, twisted = set(cmp.rack), set(cmp.twisted)
    for zeta in range(B.n):
        K = brace_reflection(B, Y, zeta, 1)
        key = tuple(K.kappa.ravel().tolist())
        where = [name for name, s in (("rack", rack), ("twisted", twisted)) if key in s]
        print(f"  ζ={B.carrier.labels[zeta]}: {', '.join(where) or 'none'}")


if __name__ == "__main__":
    main()
