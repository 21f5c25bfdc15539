"""Shared, memoized group and table construction for the test modules."""
from __future__ import annotations

import functools

from swcengine.chartab import dixon_table
from swcengine.groupcore import GroupSpec, build_group


def spec_of(family: str, q: int) -> GroupSpec:
    return GroupSpec.cyclic(q) if family == "cyclic" else GroupSpec(family, q=q)


@functools.lru_cache(maxsize=None)
def group(family: str, q: int):
    return build_group(spec_of(family, q))


@functools.lru_cache(maxsize=None)
def table(family: str, q: int):
    return dixon_table(group(family, q))


SL2_ODD = (3, 5, 7, 9, 11, 13)
SL2_EVEN = (2, 4, 8)
CORPUS = [("sl2", q) for q in sorted(SL2_ODD + SL2_EVEN)] + [("sl3", 3), ("sp4", 3)]
