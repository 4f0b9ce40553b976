"""Canonical labeling by colour refinement plus individualization search.

Graphs are passed as adjacency bitmasks. The key is the lexicographically
smallest upper-triangle bit string over all leaves of the search tree, so two
graphs get equal keys iff they are isomorphic. There is no automorphism
pruning beyond twin vertices; highly symmetric graphs can blow the leaf budget, in which case
``None`` is returned and callers fall back to the labeled edge set.
"""

from __future__ import annotations

from typing import Sequence

DEFAULT_LEAF_BUDGET = 2000


class _BudgetExceeded(Exception):
    pass


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        sig = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                sig[v] = (ci, tuple(bin(adj[v] & m).count("1") for m in masks))
        new = []
        for cell in cells:
            groups: dict = {}
            for v in cell:
                groups.setdefault(sig[v], []).append(v)
            new.extend(groups[k] for k in sorted(groups))
        if len(new) == len(cells):
            return new
        cells = new


def _certificate(adj: Sequence[int], order: list[int]) -> int:
    cert = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            cert = (cert << 1) | ((row >> order[i]) & 1)
    return cert


def _twin_representatives(adj: Sequence[int], cell: list[int]) -> list[int]:
    # swapping two twins in the same cell is an automorphism fixing the
    # partition, so individualizing either gives the same subtree
    reps: list[int] = []
    for v in cell:
        if not any(adj[v] & ~(1 << w) == adj[w] & ~(1 << v) for w in reps):
            reps.append(v)
    return reps


def canonical_key(adj: Sequence[int], leaf_budget: int = DEFAULT_LEAF_BUDGET):
    n = len(adj)
    if n <= 1:
        return (n, 0)
    leaves = [0]

    def search(cells: list[list[int]]) -> int:
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            leaves[0] += 1
            if leaves[0] > leaf_budget:
                raise _BudgetExceeded
            return _certificate(adj, [c[0] for c in cells])
        best = None
        cell = cells[target]
        for v in _twin_representatives(adj, cell):
            split = cells[:target] + [[v], [w for w in cell if w != v]] + cells[target + 1 :]
            cert = search(_refine(adj, split))
            if best is None or cert < best:
                best = cert
        return best

    try:
        return (n, search(_refine(adj, [list(range(n))])))
    except _BudgetExceeded:
        return None
