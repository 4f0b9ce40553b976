"""Exact chromatic polynomials and Whitney's broken-cycle coefficients.

Three independent routes to P(G, x):

* ``chromatic_polynomial``: memoized deletion-contraction (addition-contraction
  on dense graphs),
* ``subset_expansion``: the inclusion-exclusion sum over spanning edge subsets,
* ``count_colorings``: brute-force proper-colouring counts at integer x.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from chromagraph import polyarith as pa
from chromagraph.canon import canonical_key
from chromagraph.graph import EdgeOrdering, Graph

SUBSET_EDGE_LIMIT = 24
COLORING_LIMIT = 10**8
CANONICAL_MEMO_MAX_N = 12


class ChromaticError(ValueError):
    pass


@dataclass(frozen=True)
class ChromPoly:
    """Integer coefficients of P(G, x); ``coeffs[i]`` multiplies ``x**i``."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = tuple(int(v) for v in self.coeffs)
        if not c or c[-1] != 1:
            raise ChromaticError("chromatic polynomial must be monic")
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return pa.evaluate(self.coeffs, x)

    def derivative(self) -> tuple[int, ...]:
        return pa.derivative(self.coeffs)

    def zero_multiplicity(self) -> int:
        return next(i for i, c in enumerate(self.coeffs) if c != 0)

    def to_json(self) -> str:
        return json.dumps(pa.to_json(self.coeffs))

    @classmethod
    def from_json(cls, text: str) -> ChromPoly:
        return cls(pa.from_json(json.loads(text)))

    def __str__(self) -> str:
        return pa.format_poly(self.coeffs)


@dataclass(frozen=True)
class WhitneyCoeffs:
    """``a[i-1]`` is a_i(G): broken-cycle-free spanning subgraphs with n-i edges."""

    a: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.a)

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= len(self.a):
            raise IndexError(f"a_i defined for 1 <= i <= {len(self.a)}")
        return self.a[i - 1]


# -- deletion-contraction --------------------------------------------------

_memo: dict = {}


def clear_cache() -> None:
    _memo.clear()


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _drop_vertex(adj: Sequence[int], v: int) -> tuple[int, ...]:
    low = (1 << v) - 1
    return tuple((r & low) | ((r >> (v + 1)) << v) for i, r in enumerate(adj) if i != v)


def _merge(adj: Sequence[int], u: int, v: int) -> tuple[int, ...]:
    """Identify ``v`` with ``u`` (edge contraction, or identification of a non-edge)."""
    rows = list(adj)
    bu, bv = 1 << u, 1 << v
    rows[u] = (rows[u] | rows[v]) & ~bu & ~bv
    for w in range(len(rows)):
        if w != u and w != v and rows[w] & bv:
            rows[w] = (rows[w] & ~bv) | bu
    return _drop_vertex(rows, v)


def _toggle(adj: Sequence[int], u: int, v: int) -> tuple[int, ...]:
    rows = list(adj)
    rows[u] ^= 1 << v
    rows[v] ^= 1 << u
    return tuple(rows)


def _components(adj: Sequence[int]) -> list[list[int]]:
    n = len(adj)
    left = (1 << n) - 1
    comps = []
    while left:
        seen = frontier = left & -left
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            seen |= nxt
        comps.append([i for i in range(n) if seen >> i & 1])
        left &= ~seen
    return comps


def _induced(adj: Sequence[int], verts: list[int]) -> tuple[int, ...]:
    index = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        r = 0
        for w in verts:
            if adj[v] >> w & 1:
                r |= 1 << index[w]
        rows.append(r)
    return tuple(rows)


def _pivot_edge(adj: Sequence[int]) -> tuple[int, int]:
    degs = [_popcount(r) for r in adj]
    order = sorted(range(len(adj)), key=lambda v: -degs[v])
    for u in order:
        row = adj[u]
        for w in order:
            if row >> w & 1 and adj[u] & adj[w]:
                return u, w
    u = order[0]
    w = max((w for w in range(len(adj)) if adj[u] >> w & 1), key=lambda w: degs[w])
    return u, w


def _pivot_non_edge(adj: Sequence[int]) -> tuple[int, int]:
    n = len(adj)
    degs = [_popcount(r) for r in adj]
    for u in sorted(range(n), key=lambda v: -degs[v]):
        missing = [w for w in range(n) if w != u and not adj[u] >> w & 1]
        if missing:
            return u, max(missing, key=lambda w: degs[w])
    raise AssertionError("complete graph has no non-edge")


def _chrom(adj: tuple[int, ...]) -> tuple[int, ...]:
    n = len(adj)
    m = sum(_popcount(r) for r in adj) // 2
    if m == 0:
        return pa.monomial(n)
    if m == n * (n - 1) // 2:
        return pa.falling_factorial(n)
    comps = _components(adj)
    if len(comps) > 1:
        out: tuple = (1,)
        for comp in comps:
            out = pa.mul(out, _chrom(_induced(adj, comp)))
        return out
    if m == n - 1:
        return pa.tree_poly(n)

    key = canonical_key(adj) if n <= CANONICAL_MEMO_MAX_N else None
    if key is None:
        key = ("labeled", adj)
    hit = _memo.get(key)
    if hit is not None:
        return hit

    leaf = next((v for v in range(n) if _popcount(adj[v]) == 1), None)
    if leaf is not None:
        result = pa.mul((-1, 1), _chrom(_drop_vertex(adj, leaf)))
    elif 4 * m > n * (n - 1):
        # dense: P(G) = P(G + uv) + P(G / uv) for a non-edge uv
        u, v = _pivot_non_edge(adj)
        result = pa.add(_chrom(_toggle(adj, u, v)), _chrom(_merge(adj, u, v)))
    else:
        u, v = _pivot_edge(adj)
        result = pa.sub(_chrom(_toggle(adj, u, v)), _chrom(_merge(adj, u, v)))
    _memo[key] = result
    return result


def chromatic_polynomial(g: Graph) -> ChromPoly:
    return ChromPoly(_chrom(g.bitmasks()))


# -- inclusion-exclusion ---------------------------------------------------

_VECTOR_BITS = 16


def subset_expansion(g: Graph) -> ChromPoly:
    """Sum of ``(-1)**|E'| x**kappa(E')`` over all spanning edge subsets ``E'``.

    Component labels for the first ``_VECTOR_BITS`` edges are built for every
    subset at once by doubling; remaining edges are branched on depth-first.
    """
    if g.m > SUBSET_EDGE_LIMIT:
        raise ChromaticError(f"subset expansion limited to {SUBSET_EDGE_LIMIT} edges, got {g.m}")
    edges = g.edge_list
    n = g.n
    dtype = np.int8 if n < 127 else np.int32
    labels = np.arange(n, dtype=dtype)[None, :]
    kappa = np.array([n], dtype=np.int64)
    sign = np.array([1], dtype=np.int64)

    def add_edge(labels, kappa, u, v):
        lu = labels[:, u : u + 1]
        lv = labels[:, v : v + 1]
        merged = np.where(labels == lv, lu, labels)
        return merged, kappa - (lu[:, 0] != lv[:, 0])

    head = edges[:_VECTOR_BITS]
    for u, v in head:
        merged, k2 = add_edge(labels, kappa, u, v)
        labels = np.concatenate([labels, merged])
        kappa = np.concatenate([kappa, k2])
        sign = np.concatenate([sign, -sign])

    totals = np.zeros(n + 1, dtype=np.int64)

    def branch(labels, kappa, sign, rest):
        if not rest:
            totals[:] += _signed_counts(kappa, sign, n)
            return
        (u, v), tail = rest[0], rest[1:]
        branch(labels, kappa, sign, tail)
        merged, k2 = add_edge(labels, kappa, u, v)
        branch(merged, k2, -sign, tail)

    branch(labels, kappa, sign, edges[_VECTOR_BITS:])
    return ChromPoly(tuple(int(c) for c in totals))


def _signed_counts(kappa: np.ndarray, sign: np.ndarray, n: int) -> np.ndarray:
    pos = np.bincount(kappa[sign > 0], minlength=n + 1)
    neg = np.bincount(kappa[sign < 0], minlength=n + 1)
    return pos - neg


# -- brute-force colourings -----------------------------------------------


def count_colorings(g: Graph, x: int) -> int:
    """Number of proper colourings with colours ``0..x-1``, by enumeration."""
    if x < 0:
        raise ChromaticError("number of colours must be nonnegative")
    if x == 0:
        return 0
    if x**g.n > COLORING_LIMIT:
        raise ChromaticError(f"{x}**{g.n} colourings exceeds the brute-force guard {COLORING_LIMIT}")
    dtype = np.int8 if x < 127 else np.int32
    partial = np.zeros((1, 0), dtype=dtype)
    palette = np.arange(x, dtype=dtype)
    for v in range(g.n):
        rows = np.repeat(partial, x, axis=0)
        col = np.tile(palette, len(partial))
        keep = np.ones(len(rows), dtype=bool)
        for w in g.adjacency[v]:
            if w < v:
                keep &= rows[:, w] != col
        partial = np.concatenate([rows, col[:, None]], axis=1)[keep]
        if not len(partial):
            return 0
    return len(partial)


# -- Whitney coefficients ---------------------------------------------------


def broken_cycle_coeffs(g: Graph, ordering: EdgeOrdering | None = None, method: str = "incremental") -> WhitneyCoeffs:
    """Count broken-cycle-free spanning subgraphs by number of edges.

    ``method="incremental"`` adds edges in decreasing rank and accepts an
    edge only if it joins two components with no lower-ranked edge between
    them. ``method="cycles"`` enumerates every cycle, forms its broken cycle,
    and rejects subsets containing one. Both walk only the hereditary family
    of accepted subsets.
    """
    if g.m > SUBSET_EDGE_LIMIT:
        raise ChromaticError(f"broken-cycle enumeration limited to {SUBSET_EDGE_LIMIT} edges, got {g.m}")
    if ordering is None:
        ordering = EdgeOrdering.canonical(g)
    elif set(ordering) != set(g.edges):
        raise ChromaticError("edge ordering is not a bijection on the graph's edges")
    if method == "incremental":
        sizes = _nbc_incremental(g, ordering)
    elif method == "cycles":
        sizes = _nbc_cycles(g, ordering)
    else:
        raise ValueError(f"unknown method {method!r}")
    n = g.n
    # a_i counts subsets with n - i edges
    return WhitneyCoeffs(tuple(sizes[n - i] if n - i < len(sizes) else 0 for i in range(1, n + 1)))


def _nbc_incremental(g: Graph, ordering: EdgeOrdering) -> list[int]:
    desc = ordering.by_rank()[::-1]
    n = g.n
    counts = [0] * n
    ends = [(1 << u, 1 << v) for u, v in desc]

    def comp_of(comp_masks, bit):
        for c in comp_masks:
            if c & bit:
                return c
        raise AssertionError

    def dfs(start: int, comps: list[int], size: int) -> None:
        counts[size] += 1
        for idx in range(start, len(desc)):
            bu, bv = ends[idx]
            cu = comp_of(comps, bu)
            if cu & bv:
                continue
            cv = comp_of(comps, bv)
            blocked = False
            for lo in range(idx + 1, len(desc)):
                a, b = ends[lo]
                if (a & cu and b & cv) or (a & cv and b & cu):
                    blocked = True
                    break
            if blocked:
                continue
            merged = [c for c in comps if c is not cu and c is not cv]
            merged.append(cu | cv)
            dfs(idx + 1, merged, size + 1)

    dfs(0, [1 << v for v in range(n)], 0)
    return counts


def simple_cycles(g: Graph) -> list[int]:
    """Edge-index bitmasks (canonical edge order) of every cycle of ``g``."""
    index = {e: i for i, e in enumerate(g.edge_list)}
    found = set()
    for s in range(g.n):
        stack = [(s, (s,), 0)]
        while stack:
            v, path, mask = stack.pop()
            for w in g.adjacency[v]:
                if w == s and len(path) >= 3:
                    found.add(mask | 1 << index[(min(v, s), max(v, s))])
                elif w > s and w not in path:
                    stack.append((w, path + (w,), mask | 1 << index[(min(v, w), max(v, w))]))
    return sorted(found)


def _nbc_cycles(g: Graph, ordering: EdgeOrdering) -> list[int]:
    edges = g.edge_list
    rank = [ordering[e] for e in edges]
    broken = []
    for cyc in simple_cycles(g):
        members = [i for i in range(len(edges)) if cyc >> i & 1]
        low = min(members, key=rank.__getitem__)
        broken.append(cyc & ~(1 << low))
    counts = [0] * (len(edges) + 1)

    def dfs(start: int, mask: int, size: int) -> None:
        counts[size] += 1
        for i in range(start, len(edges)):
            cand = mask | 1 << i
            if any(b & cand == b for b in broken):
                continue
            dfs(i + 1, cand, size + 1)

    dfs(0, 0, 0)
    return counts


def whitney_from_poly(p: ChromPoly | Sequence[int]) -> WhitneyCoeffs:
    coeffs = p.coeffs if isinstance(p, ChromPoly) else tuple(p)
    n = len(coeffs) - 1
    a = []
    for i in range(1, n + 1):
        v = (-1) ** (n - i) * coeffs[i]
        if v < 0:
            raise ChromaticError(f"coefficient of x^{i} has the wrong sign ({coeffs[i]})")
        a.append(v)
    return WhitneyCoeffs(tuple(a))


def chromatic_number(g: Graph, poly: ChromPoly | None = None) -> int:
    p = poly if poly is not None else chromatic_polynomial(g)
    x = 1
    while p(x) == 0:
        x += 1
    return x


def evaluations_agree(g: Graph, poly: ChromPoly) -> bool:
    """``poly(x) == count_colorings(g, x)`` for ``x = 0..n``."""
    return all(poly(x) == count_colorings(g, x) for x in range(g.n + 1))


def negative_axis_sign_ok(poly: ChromPoly, x: Fraction) -> bool:
    """P has no negative real roots: sign P(x) = (-1)**n for x < 0."""
    return pa.sign_at(poly.coeffs, Fraction(x)) == (-1) ** poly.n
