"""Rank-variety verdicts of Kac modules and their simple quotients at n = 2.

    python3 scripts/support_survey.py --bound 2 --random 12 --seed 3
"""
import argparse
import itertools

from wncohom.modules import atypicality, kac_module, rank_variety_report, simple_supermodule


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=2)
    ap.add_argument("--random", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    b = args.bound
    for lam in itertools.product(range(-b, b + 1), repeat=2):
        if lam[0] < lam[1]:
            continue
        K = kac_module(lam)
        L = simple_supermodule(lam)
        vk = rank_variety_report(K, 2, args.random, args.seed).verdict
        vl = rank_variety_report(L, 2, args.random, args.seed).verdict
        print(f"{str(lam):>9} {atypicality(lam).value:>9}  dim K {K.dim:>3} {vk:<26} dim L {L.dim:>3} {vl}")


if __name__ == "__main__":
    main()
