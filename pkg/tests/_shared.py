"""Cached expensive computations shared by several test modules."""

from functools import lru_cache

from equihopf.odeverify import verify_row


@lru_cache(maxsize=None)
def row_report(index: str) -> dict:
    return verify_row(index, seed=0)
