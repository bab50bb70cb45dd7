"""Tabulate the quadratic relation satisfied by the two D_n deltas.

For each n the product Delta+ Delta- is written as p1(s) + s_n p0(s) in the
B-plus generators, so Delta- = (Delta+ p0 + p1) / (Delta+ - p0).
"""

import argparse

from noncomm.laurent import lex_leading
from noncomm.torus import dn_relation


def main():
    ap = argparse.ArgumentParser(description="D_n delta relation table")
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()
    for n in range(2, args.max_n + 1):
        rel = dn_relation(n)
        lead, _ = lex_leading(rel.P)
        print(f"n={n}")
        print(f"  p0 = {rel.p0}")
        print(f"  p1 = {rel.p1}")
        print(f"  P = Delta+ - p0 has {len(rel.P)} terms, leading exponent {lead}")


if __name__ == "__main__":
    main()
