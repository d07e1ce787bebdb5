"""Print inside/outside probe tables at a rational point.

Shows both the quotient excess (which tends to 0) and the plain product
distance to the limit word (which in general does not).

    python scripts/probe_tables.py 1/2 --count 8
"""

import argparse

from cfmap import continuity_probe, format_seq, parse_rational, preimage


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("x", nargs="?", default="1/2")
    ap.add_argument("--count", type=int, default=8)
    args = ap.parse_args()
    x = parse_rational(args.x)
    pair = preimage(x)
    print(f"x = {x}: canonical {format_seq(pair.canonical)}, alternate {format_seq(pair.alternate)}")
    for side in ("inside", "outside"):
        report = continuity_probe(x, side, args.count)
        print(f"\n{side} (limit {format_seq(report.limit_word)})")
        print(f"{'t':>24}  {'word':<28} {'excess':>12} {'rho^N':>12}")
        for s in report.samples:
            print(
                f"{str(s.t):>24}  {format_seq(s.word):<28} "
                f"{float(s.distance):12.3e} {float(s.product_distance):12.3e}"
            )


if __name__ == "__main__":
    main()
