"""Build every table in the corpus and run the invariant, oracle and Whitney suites.

    python scripts/run_corpus.py --trials 100 --out corpus.json
"""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from swcengine.chartab import dixon_table
from swcengine.groupcore import GroupSpec, build_group
from swcengine.verify import cyclic_suite, restriction_suite, table_self_checks, whitney_sum_suite

DEFAULT_CORPUS = [("sl2", q) for q in (2, 3, 4, 5, 7, 8, 9, 11, 13)] + [("sl3", 3), ("sp4", 3)]


@dataclass
class CorpusConfig:
    groups: list[tuple[str, int]] = field(default_factory=lambda: list(DEFAULT_CORPUS))
    cyclic: list[int] = field(default_factory=lambda: [4, 6, 8, 12])
    trials: int = 100
    seed: int = 0


def run(cfg: CorpusConfig) -> list[dict]:
    rows = []
    specs = [GroupSpec(f, q=q) for f, q in cfg.groups] + [GroupSpec.cyclic(n) for n in cfg.cyclic]
    for spec in specs:
        t0 = time.perf_counter()
        T = dixon_table(build_group(spec))
        t_table = time.perf_counter() - t0
        suites = [table_self_checks(T), whitney_sum_suite(T, trials=cfg.trials, seed=cfg.seed)]
        if spec.family == "cyclic":
            suites.append(cyclic_suite(T))
        else:
            suites.append(restriction_suite(T, extra=cfg.trials, seed=cfg.seed))
        row = {
            "group": spec.label,
            "order": T.order,
            "classes": T.class_count,
            "fs": T.fs_census(),
            "table_seconds": round(t_table, 2),
            "suites": {s.name: f"{len(s.cases) - len(s.failures)}/{len(s.cases)}" for s in suites},
            "passed": all(s.passed for s in suites),
        }
        rows.append(row)
        print(f"{row['group']:>10}  |G|={row['order']:<7} classes={row['classes']:<3} "
              f"table {row['table_seconds']:>6}s  {'PASS' if row['passed'] else 'FAIL'}", flush=True)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, help="write the results as JSON")
    args = ap.parse_args()
    cfg = CorpusConfig(trials=args.trials, seed=args.seed)
    rows = run(cfg)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"config": asdict(cfg), "results": rows}, fh, indent=1)
    raise SystemExit(0 if all(r["passed"] for r in rows) else 2)


if __name__ == "__main__":
    main()
