"""Effect of a Dehn twist on the triple, on w_delta and on a random Alexander form.

For each triple we twist once, renormalize the transformed series and print
the change of the degree-two data pulled back to the old variables.
"""

import argparse
import random

from genusone.alexform import (
    build_alexander_series,
    dehn_twist_transform,
    normalize_alexander_series,
    pull_back,
    random_alexform_data,
)
from genusone.invariants import (
    CurveLambdas,
    delta2,
    delta_Delta,
    dehn_twist_triple,
    odd_triples,
    w_del_triple,
)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--range", type=int, default=3)
    args = p.parse_args()
    rng = random.Random(args.seed)
    d = random_alexform_data(rng)
    A = build_alexander_series(d)
    print(f"h1={d.h1} lA={d.lA} lB={d.lB} lC={d.lC} lE={d.lE}")
    print(f"{'triple':>14} {'twisted':>14} {'dw_delta':>9} {'d delta_Delta':>24} {'d delta2':>22} {'lE after':>10}")
    for t in odd_triples(args.range):
        if t.a != 1 or t.c != 1:
            continue
        A2, t2 = dehn_twist_transform(A, t)
        _, _, ex = normalize_alexander_series(A2.series, A2.h1, A2.ell)
        dd = pull_back(delta_Delta(t2, CurveLambdas(*ex))) - delta_Delta(t, d.lambdas)
        d2 = pull_back(delta2(t2)) - delta2(t)
        dw = w_del_triple(dehn_twist_triple(t)) - w_del_triple(t)
        print(f"{str(t):>14} {str(t2):>14} {str(dw):>9} {str(dd):>24} {str(d2):>22} {str(ex[3]):>10}")


if __name__ == "__main__":
    main()
