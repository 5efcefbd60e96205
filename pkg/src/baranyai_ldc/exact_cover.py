"""Backtracking oracle for Baranyai partitions on small instances.

The whole partition is posed as one exact-cover problem and solved with
Algorithm X (dict-of-sets form). Items are every u-subset S (must be used
once) and every pair (class c, vertex v) (c must cover v once); the option
(c, S) covers S and (c, v) for v in S. Classes are interchangeable, so the
k subsets containing vertex 1 are pinned to classes 0..k-1 up front.

This module deliberately shares no construction code with the flow method
so that the two can cross-check each other.
"""
from __future__ import annotations

import math
import time
from itertools import combinations
from typing import Optional

from .baranyai import BaranyaiPartition
from .errors import DivisibilityError, ValidationError

DEFAULT_NODE_BUDGET = 5_000_000


class OracleGaveUp(Exception):
    """Search exhausted its node or time budget without an answer."""


def _select(X, Y, row):
    cols = []
    for j in Y[row]:
        for i in X[j]:
            for k in Y[i]:
                if k != j:
                    X[k].remove(i)
        cols.append(X.pop(j))
    return cols


def _deselect(X, Y, row, cols):
    for j in reversed(Y[row]):
        X[j] = cols.pop()
        for i in X[j]:
            for k in Y[i]:
                if k != j:
                    X[k].add(i)


def _solve(X, Y, chosen, budget):
    if not X:
        return True
    budget[0] -= 1
    if budget[0] < 0 or (budget[1] is not None and time.monotonic() > budget[1]):
        raise OracleGaveUp("search budget exhausted")
    col = min(X, key=lambda c: len(X[c]))
    for row in sorted(X[col]):
        chosen.append(row)
        cols = _select(X, Y, row)
        if _solve(X, Y, chosen, budget):
            return True
        _deselect(X, Y, row, cols)
        chosen.pop()
    return False


def exact_cover_factorization(
    m: int, u: int, node_budget: Optional[int] = None, time_limit: Optional[float] = None
) -> BaranyaiPartition:
    """Find a Baranyai partition of K_m^u by exhaustive search.

    Raises OracleGaveUp when the budget runs out; never returns an invalid
    partition (the exact-cover formulation admits only valid ones).
    """
    if not 1 <= u <= m:
        raise ValidationError(f"need 1 <= u <= m, got m={m}, u={u}")
    if m % u:
        raise DivisibilityError(f"u={u} does not divide m={m}")
    k = math.comb(m - 1, u - 1)
    subsets = list(combinations(range(1, m + 1), u))

    Y = {}
    for S in subsets:
        for c in range(k):
            Y[(c, S)] = [("S", S)] + [("V", c, v) for v in S]
    X = {("S", S): set() for S in subsets}
    X.update({("V", c, v): set() for c in range(k) for v in range(1, m + 1)})
    for row, items in Y.items():
        for item in items:
            X[item].add(row)

    chosen = []
    pinned = [S for S in subsets if S[0] == 1]
    for c, S in enumerate(pinned):
        chosen.append((c, S))
        _select(X, Y, (c, S))

    if node_budget is None:
        node_budget = DEFAULT_NODE_BUDGET
    deadline = None if time_limit is None else time.monotonic() + time_limit
    if not _solve(X, Y, chosen, [node_budget, deadline]):
        raise OracleGaveUp(f"no partition found for K_{m}^{u}")

    classes = [[] for _ in range(k)]
    for c, S in chosen:
        classes[c].append(S)
    return BaranyaiPartition(m, u, tuple(tuple(sorted(cls)) for cls in classes))
