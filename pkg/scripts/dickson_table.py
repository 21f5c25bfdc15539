"""Print the Dickson invariants c_{r,i} for small r with their degrees and sizes."""
from __future__ import annotations

import argparse
import time

from swcengine.cohomology import dickson_invariants, dickson_product, dickson_product_bruteforce


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-rank", type=int, default=5)
    ap.add_argument("--show", type=int, default=3, help="render invariants in full up to this rank")
    args = ap.parse_args()
    for r in range(1, args.max_rank + 1):
        t0 = time.perf_counter()
        D = dickson_product(r)
        dt = time.perf_counter() - t0
        check = "" if r > 4 else f", brute force {'agrees' if D == dickson_product_bruteforce(r) else 'DISAGREES'}"
        print(f"r={r}: {len(D)} monomials in {dt:.3f}s{check}")
        for i, c in sorted(dickson_invariants(r).items(), reverse=True):
            body = c.render() if r <= args.show else f"{len(c)} monomials"
            print(f"  c_{r},{i} (degree {(1 << r) - (1 << i)}): {body}")


if __name__ == "__main__":
    main()
