"""Optimal restart length j for single-target search across database sizes."""
import argparse

from multisearch.stopping import StoppingProblem, solve


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--exponents", type=int, nargs="+", default=list(range(2, 10)),
                    help="database sizes N = 10**k")
    ap.add_argument("--ell", type=int, default=1)
    args = ap.parse_args()

    header = f"{'N':>12} {'j_first_order':>14} {'j_real':>14} {'j_int':>8} {'E(j_int)':>14} {'E/sqrt(N/l)':>12}"
    print(header)
    print("-" * len(header))
    for k in args.exponents:
        n = 10**k
        sol = solve(StoppingProblem.from_search(n, args.ell))
        j1 = "n/a" if sol.j_first_order is None else f"{sol.j_first_order:.6f}"
        jr = "n/a" if sol.j_real is None else f"{sol.j_real:.6f}"
        scaled = sol.e_at_j_int / (n / args.ell) ** 0.5
        print(f"{n:>12} {j1:>14} {jr:>14} {sol.j_int:>8} {sol.e_at_j_int:>14.6f} {scaled:>12.6f}")


if __name__ == "__main__":
    main()
