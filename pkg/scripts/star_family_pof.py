"""Utilitarian price of EFX on the star family, with the d^2 / (2d - 1) trend."""

import argparse
from fractions import Fraction

from graphfair.generators import gen_star
from graphfair.oracle import max_welfare


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-d", type=int, default=6)
    args = parser.parse_args()
    print(f"{'d':>3} {'optimum':>8} {'efx':>5} {'pof':>7} {'float':>7}")
    for d in range(1, args.max_d + 1):
        star = gen_star(d)
        opt = max_welfare(star, "util").value
        fair = max_welfare(star, "util", "efx").value
        pof = Fraction(opt, fair)
        print(f"{d:>3} {opt:>8} {fair:>5} {str(pof):>7} {float(pof):>7.3f}")


if __name__ == "__main__":
    main()
