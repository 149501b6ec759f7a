"""Compare the image of H(g, g0; C) in H(f, f0; C) with the symmetric-group invariants.

The two dimensions are computed independently; the script reports both and
never assumes they agree.
"""
import argparse

from wncohom.cli import parse_n_range
from wncohom.cohomology import RelativeComplex, restriction_map


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", default="2..3")
    ap.add_argument("--max-degree", type=int, default=8)
    args = ap.parse_args()
    print(f"{'n':>2} {'p':>2} {'H(g,g0)':>8} {'H(f,f0)':>8} {'image':>6} {'invariants':>10}  equal")
    for n in parse_n_range(args.n):
        G = RelativeComplex.from_pair(n, "g:g0")
        F = RelativeComplex.from_pair(n, "f:f0")
        for p in range(args.max_degree + 1):
            r = restriction_map(n, p, complexes=(G, F))
            print(f"{n:>2} {p:>2} {r.source_dim:>8} {r.target_dim:>8} {r.image_dim:>6} {r.invariant_dim:>10}  "
                  f"{r.image_is_invariants}")


if __name__ == "__main__":
    main()
