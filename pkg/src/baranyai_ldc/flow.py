"""Integral max flow for source -> left (cap 1) -> right (cap 1) -> sink (cap r).

This is the only network shape the Baranyai construction needs: each left
node (a parallel class) sends at most one unit, each right node (a part
value) absorbs at most its capacity. Greedy seeding followed by BFS
augmenting paths in the residual graph gives a maximum flow.
"""
from __future__ import annotations

from collections import deque
from typing import Hashable, Mapping, Sequence


def bipartite_b_matching(
    adjacency: Sequence[Sequence[Hashable]], capacity: Mapping[Hashable, int]
) -> list:
    """Assign each left node at most one neighbour, respecting ``capacity``.

    Returns ``match`` with ``match[c]`` the right node chosen for left node
    ``c`` or None; the number of non-None entries is the max flow value.
    """
    remaining = dict(capacity)
    holders: dict = {a: [] for a in remaining}
    match: list = [None] * len(adjacency)

    for c, nbrs in enumerate(adjacency):
        for a in nbrs:
            if remaining.get(a, 0) > 0:
                remaining[a] -= 1
                holders[a].append(c)
                match[c] = a
                break

    for start, a0 in enumerate(match):
        if a0 is None:
            _augment(start, adjacency, remaining, holders, match)
    return match


def _augment(start, adjacency, remaining, holders, match) -> bool:
    # BFS over left nodes; parent[a] = left node that reached right node a
    parent: dict = {}
    via: dict = {start: None}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for a in adjacency[c]:
            if a in parent or a == match[c] or a not in remaining:
                continue
            parent[a] = c
            if remaining[a] > 0:
                _flip(a, parent, via, remaining, holders, match)
                return True
            for c2 in holders[a]:
                if c2 not in via:
                    via[c2] = a
                    queue.append(c2)
    return False


def _flip(a, parent, via, remaining, holders, match) -> None:
    remaining[a] -= 1
    while a is not None:
        c = parent[a]
        prev = via[c]
        if prev is not None:
            holders[prev].remove(c)
        holders[a].append(c)
        match[c] = a
        a = prev
