"""Cross-check the closed-form counts against independent routes.

Three passes:

1. box counts against the graph engine at desk scale, then the pure
   permutation symmetry of the closed form at larger scale;
2. the central counts of holed hexagons against rotation quotients of
   the actual regions at desk scale;
3. the square relations tying central counts to free-boundary counts,
   at a scale the graph engine cannot reach (formula vs formula).

Exits 0 only if every comparison is an exact match.
"""

import argparse
import itertools
import sys
import time

from lozlab import (
    count_symmetric_tilings,
    count_tilings,
    d_count,
    hexagon,
    hole_lists,
    holed_count_even,
    holed_count_odd,
    holed_hexagon,
    macmahon_box,
)


def legal_ks(a):
    pool = list(range(1, a + 1))
    for r in range(len(pool) + 1):
        yield from itertools.combinations(pool, r)


def pass_boxes() -> int:
    bad = 0
    for a, b, c in itertools.product((1, 2, 3), repeat=3):
        if count_tilings(hexagon(a, b, c)) != macmahon_box(a, b, c):
            print(f"  MISMATCH box {a},{b},{c}")
            bad += 1
    for a, b, c in itertools.product(range(1, 11), repeat=3):
        want = macmahon_box(a, b, c)
        for perm in itertools.permutations((a, b, c)):
            if macmahon_box(*perm) != want:
                print(f"  MISMATCH permuted box {perm}")
                bad += 1
    return bad


def pass_holed_vs_engine() -> int:
    bad = 0
    for a, b in itertools.product((1, 2), (1, 2)):
        for ks in legal_ks(a):
            pairs = (
                (holed_count_even(a, b, ks), holed_hexagon(2 * a, b, ks)),
                (holed_count_odd(a, b, ks), holed_hexagon(2 * a + 1, b, ks)),
            )
            for want, region in pairs:
                got = count_symmetric_tilings(region, ("Rot180",))
                if got != want:
                    print(f"  MISMATCH {region.family} {region.params}: "
                          f"formula {want} engine {got}")
                    bad += 1
    return bad


def pass_squares(limit: int) -> int:
    bad = 0
    for a in range(1, limit + 1):
        for b in (1, 2, 3):
            for ks in legal_ks(a):
                q = hole_lists(a, ks).q
                if holed_count_even(a, b, ks) != d_count(a, b, -1, q) ** 2:
                    print(f"  MISMATCH even square a={a} b={b} ks={ks}")
                    bad += 1
                if holed_count_odd(a, b, ks) != d_count(a, b, 0, q) ** 2:
                    print(f"  MISMATCH odd square a={a} b={b} ks={ks}")
                    bad += 1
    return bad


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="cross-check closed forms")
    parser.add_argument("--max-a", type=int, default=8,
                        help="largest half-side for the square relations")
    args = parser.parse_args(argv)
    bad = 0
    for label, job in (("box counts", pass_boxes),
                       ("holed central counts", pass_holed_vs_engine),
                       ("square relations",
                        lambda: pass_squares(args.max_a))):
        t0 = time.monotonic()
        misses = job()
        took = time.monotonic() - t0
        state = "ok" if misses == 0 else f"{misses} mismatches"
        print(f"{label:22s} {state}  ({took:.1f}s)")
        bad += misses
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
