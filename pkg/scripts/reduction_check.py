"""Compare every MCIS gadget's answer with brute-force MCIS on small instances."""

import argparse

from graphfair.corpus import c4_mcis, k22_mcis, random_mcis_corpus
from graphfair.oracle import decide_em_efx_threshold, decide_um_plus_efx, exists_fair
from graphfair.reductions import (
    reduce_mcis_to_ef,
    reduce_mcis_to_em_efx,
    reduce_mcis_to_um_efx,
    solve_mcis_bruteforce,
)


def yn(x):
    return "yes" if x else "no"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=20)
    parser.add_argument("--seed", type=int, default=31)
    args = parser.parse_args()
    cases = [("C4", c4_mcis()), ("K22", k22_mcis())]
    cases += [(f"r{i}", m) for i, m in enumerate(random_mcis_corpus(args.count, args.seed))]
    print(f"{'name':<6} {'n':>2} {'d':>2} {'k':>2} {'mcis':>5} {'ef':>4} {'em':>4} {'um':>4} {'um*':>4}")
    for name, m in cases:
        em_inst, d = reduce_mcis_to_em_efx(m)
        row = [
            solve_mcis_bruteforce(m) is not None,
            exists_fair(reduce_mcis_to_ef(m), "ef", "orientations") is not None,
            decide_em_efx_threshold(em_inst, d),
            decide_um_plus_efx(reduce_mcis_to_um_efx(m)),
            decide_um_plus_efx(reduce_mcis_to_um_efx(m, repaired=True)),
        ]
        print(f"{name:<6} {m.n_vertices:>2} {d:>2} {m.k:>2} " + " ".join(f"{yn(x):>4}" for x in row))
    print("um* = middle path edge valued (d, d+1)")


if __name__ == "__main__":
    main()
