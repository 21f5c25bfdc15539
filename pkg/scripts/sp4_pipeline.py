"""Exponents and total classes for every orthogonal atom of Sp(4,q)."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from swcengine.chartab import dixon_table
from swcengine.groupcore import GroupSpec, build_group
from swcengine.swc import double_symplectic
from swcengine.verify import evaluate_and_compare


@dataclass
class PipelineConfig:
    q: int = 3
    seed: int = 0


def run(cfg: PipelineConfig) -> bool:
    T = dixon_table(build_group(GroupSpec("sp4", q=cfg.q)), seed=cfg.seed)
    print(f"{T.spec.label}: order {T.order}, {T.class_count} classes, fs census {T.fs_census()}")
    ok = True
    for i in range(len(T)):
        if T.fs[i] == 0:
            continue
        f = T.row(i) if T.fs[i] == 1 else double_symplectic(T.row(i))
        res, orc = evaluate_and_compare(f)
        ex = res.report.exponents
        short = res.report.shortcut.get("s") if T.fs[i] == 1 else None
        label = f"row {i}" if T.fs[i] == 1 else f"2*row {i}"
        print(f"{label:>9} deg {f.degree:>4}  r={ex['r']} s={ex['s']}"
              f"{'' if short is None else f' (shortcut {short})'}  oracle {orc.verdict}")
        ok &= orc.equal
    return ok


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    raise SystemExit(0 if run(PipelineConfig(args.q, args.seed)) else 2)


if __name__ == "__main__":
    main()
