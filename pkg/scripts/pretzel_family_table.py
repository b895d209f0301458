"""Table of lambda', w_delta and Alexander polynomials over the pretzel family K(2n+1, 2k+1, -2k-1).

The members of one k share lambda' (hence the Alexander polynomial) while
w_delta grows linearly in n.
"""

import argparse

from genusone.invariants import (
    CurveLambdas,
    SurfaceTriple,
    alexander_from_seifert,
    lambda_prime_triple,
    seifert_from_triple,
    w_del_triple,
    w_sl,
)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--kmax", type=int, default=4)
    args = p.parse_args()
    print(f"{'n':>3} {'k':>3} {'triple':>16} {'lambda':>7} {'w_delta':>8} {'w_SL':>8}  Delta(t)")
    for k in range(1, args.kmax + 1):
        for n in range(args.nmax + 1):
            t = SurfaceTriple.of(2 * n + 1, 2 * k + 1, -2 * k - 1, strict_odd=True)
            delta = alexander_from_seifert(seifert_from_triple(t))
            print(f"{n:>3} {k:>3} {str(t):>16} {str(lambda_prime_triple(t)):>7} "
                  f"{str(w_del_triple(t)):>8} {str(w_sl(t, CurveLambdas())):>8}  {delta}")


if __name__ == "__main__":
    main()
