"""Classical expected draws against the optimal Grover count over a range of N/ell."""
import argparse
import csv
import math
import sys

from multisearch.classical import UrnModel, expectation
from multisearch.core import SearchInstance
from multisearch.discrete import optimal_iterations


def sweep(ell: int, ratios: list[int]) -> list[dict]:
    rows = []
    for r in ratios:
        inst = SearchInstance.first(r * ell, ell)
        m_star, p_star = optimal_iterations(inst)
        e_classical = float(expectation(UrnModel(inst.n, ell)))
        rows.append({
            "n": inst.n,
            "ell": ell,
            "ratio": r,
            "classical_mean": e_classical,
            "m_star": m_star,
            "p_at_m_star": p_star,
            "speedup": e_classical / m_star,
            "speedup_over_sqrt_ratio": e_classical / m_star / math.sqrt(r),
        })
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ell", type=int, default=1)
    ap.add_argument("--ratios", type=int, nargs="+", default=[4, 16, 64, 256, 1024, 4096, 16384])
    args = ap.parse_args()
    rows = sweep(args.ell, args.ratios)
    writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: format(v, ".10g") if isinstance(v, float) else v for k, v in row.items()})


if __name__ == "__main__":
    main()
