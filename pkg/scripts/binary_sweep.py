"""Run both binary solvers over the exhaustive small-graph corpus and random draws.

Prints how many instances admit an EF allocation and checks every EFX output
against the exhaustive welfare optima.
"""

import argparse
import time

from graphfair.binary import solve_ef_binary, solve_efx_binary
from graphfair.core import agent_utilities, is_efx, is_non_wasteful
from graphfair.corpus import exhaustive_binary_corpus, random_corpus
from graphfair.oracle import exists_fair, max_welfare


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-vertices", type=int, default=5)
    parser.add_argument("--max-edges", type=int, default=5)
    parser.add_argument("--random", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    corpus = list(exhaustive_binary_corpus(args.max_vertices, args.max_edges))
    corpus += random_corpus(args.random, args.seed, 2, 7, [(0, 1)], max_items=12)
    start = time.perf_counter()
    with_ef = mismatches = 0
    for inst in corpus:
        alloc = solve_ef_binary(inst)
        with_ef += alloc is not None
        mismatches += (alloc is not None) != (exists_fair(inst, "ef", "orientations") is not None)
        x = solve_efx_binary(inst)
        util = agent_utilities(inst, x)
        if not (is_efx(inst, x) and is_non_wasteful(inst, x) and min(util) == max_welfare(inst, "egal").value):
            mismatches += 1
    print(f"instances: {len(corpus)}")
    print(f"with EF allocation: {with_ef}")
    print(f"mismatches: {mismatches}")
    print(f"seconds: {time.perf_counter() - start:.1f}")


if __name__ == "__main__":
    main()
