"""How tight is |phi(s) - phi(t)| <= rho^N(s, t)?

Samples random finitely supported pairs and reports the largest observed
ratio, overall and by the length of the shared prefix.

    python scripts/lipschitz_margin.py --pairs 20000 --seed 1
"""

import argparse
import random
from collections import defaultdict

from cfmap import dist, evaluate
from cfmap.checks import random_general_word


def shared_prefix(s, t):
    k = 1
    while k <= max(len(s), len(t)) and s.digit(k) == t.digit(k):
        k += 1
    return k - 1


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pairs", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-digit", type=int, default=50)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    worst = defaultdict(float)
    for _ in range(args.pairs):
        s = random_general_word(rng, max_digit=args.max_digit)
        t = random_general_word(rng, max_digit=args.max_digit)
        d = dist(s, t).exact
        if d == 0:
            continue
        ratio = float(abs(evaluate(s) - evaluate(t)) / d)
        n = shared_prefix(s, t)
        worst[n] = max(worst[n], ratio)
    print("shared prefix  max |dphi|/rho^N")
    for n in sorted(worst):
        print(f"{n:13d}  {worst[n]:.6f}")
    print(f"overall max ratio {max(worst.values()):.6f} (bound is 1)")


if __name__ == "__main__":
    main()
