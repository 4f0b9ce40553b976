"""Simple undirected graphs, graph6 / edge-list I/O, families and corpora."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from chromagraph.canon import canonical_key

Edge = tuple[int, int]

MAX_EXHAUSTIVE_N = 6
FAMILIES = ("complete", "path", "cycle", "star", "random_tree", "random_connected")


class GraphError(ValueError):
    pass


class Graph6Error(GraphError):
    """Malformed graph6 input; ``offset`` is the offending byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"graph6 byte {offset}: {message}")
        self.offset = offset


class EdgeListError(GraphError):
    def __init__(self, message: str, line: int):
        super().__init__(f"edge list line {line}: {message}")
        self.line = line


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[Edge]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError(f"vertex count must be positive, got {self.n}")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add(_norm(u, v))
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in norm:
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in nbrs))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> Graph:
        return cls(n, frozenset(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def edge_list(self) -> list[Edge]:
        """Edges sorted lexicographically; this is the canonical edge order."""
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max(len(a) for a in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def bitmasks(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in a) for a in self.adjacency)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def induced(self, vertices: list[int]) -> Graph:
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((index[u], index[v]) for u, v in self.edges if u in index and v in index),
        )

    def disjoint_union(self, other: Graph) -> Graph:
        shifted = ((u + self.n, v + self.n) for u, v in other.edges)
        return Graph.from_edges(self.n + other.n, [*self.edges, *shifted])

    def canonical_key(self):
        """Isomorphism-invariant key, or ``None`` if the search budget ran out."""
        return canonical_key(self.bitmasks())

    def to_graph6(self) -> str:
        return encode_graph6(self)

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_list})"


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    max_degree: int
    triangles: int
    connected: bool


def stats(g: Graph) -> GraphStats:
    masks = g.bitmasks()
    # each triangle is seen once from each of its three edges
    tri = sum(bin(masks[u] & masks[v]).count("1") for u, v in g.edges) // 3
    return GraphStats(g.n, g.m, g.max_degree(), tri, g.is_connected())


# -- edge orderings -------------------------------------------------------


class EdgeOrdering(Mapping[Edge, int]):
    """Bijection from the edges of a graph onto ranks ``1..|E|``."""

    def __init__(self, ranks: Mapping[Edge, int], graph: Graph | None = None):
        self._ranks = {_norm(*e): r for e, r in ranks.items()}
        if sorted(self._ranks.values()) != list(range(1, len(self._ranks) + 1)):
            raise GraphError("edge ranks are not a permutation of 1..|E|")
        if graph is not None and set(self._ranks) != set(graph.edges):
            raise GraphError("ordering does not cover exactly the graph's edges")

    def __getitem__(self, e: Edge) -> int:
        return self._ranks[_norm(*e)]

    def __iter__(self):
        return iter(self._ranks)

    def __len__(self) -> int:
        return len(self._ranks)

    def by_rank(self) -> list[Edge]:
        return sorted(self._ranks, key=self._ranks.__getitem__)

    @classmethod
    def canonical(cls, g: Graph) -> EdgeOrdering:
        return cls({e: i + 1 for i, e in enumerate(g.edge_list)}, g)

    @classmethod
    def random(cls, g: Graph, rng: random.Random) -> EdgeOrdering:
        edges = g.edge_list
        rng.shuffle(edges)
        return cls({e: i + 1 for i, e in enumerate(edges)}, g)


# -- graph6 ---------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    raise GraphError(f"graph6 cannot encode n={n}")


def encode_graph6(g: Graph) -> str:
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[p : p + 6])), 2)) for p in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise Graph6Error("empty input", 0)
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside 63..126", pos)
    if s[0] != "~":
        n, pos = ord(s[0]) - 63, 1
    else:
        if len(s) < 4:
            raise Graph6Error("truncated long-form header", len(s))
        if s[1] == "~":
            raise Graph6Error("8-byte header (n > 258047) not supported", 1)
        n = 0
        for i in (1, 2, 3):
            n = (n << 6) | (ord(s[i]) - 63)
        pos = 4
    if n == 0:
        raise Graph6Error("graph with zero vertices", 0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[pos:]
    if len(body) < need:
        raise Graph6Error(f"bit field truncated: need {need} bytes, got {len(body)}", len(s))
    if len(body) > need:
        raise Graph6Error("trailing bytes after bit field", pos + need)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


# -- edge list ------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` on the first line then one ``u v`` pair per line.

    Blank lines and ``#`` comments are ignored; duplicate edges collapse.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise EdgeListError("missing vertex count", 1)
    lineno, head = rows[0]
    if len(head) != 1 or not _is_int(head[0]) or int(head[0]) < 1:
        raise EdgeListError(f"expected a positive vertex count, got {' '.join(head)!r}", lineno)
    n = int(head[0])
    edges = set()
    for lineno, toks in rows[1:]:
        if len(toks) != 2 or not all(_is_int(t) for t in toks):
            raise EdgeListError(f"expected two integers, got {' '.join(toks)!r}", lineno)
        u, v = int(toks[0]), int(toks[1])
        if u == v:
            raise EdgeListError(f"loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(f"index out of range for n={n}", lineno)
        edges.add(_norm(u, v))
    return Graph.from_edges(n, edges)


def _is_int(tok: str) -> bool:
    try:
        int(tok)
    except ValueError:
        return False
    return True


def format_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n), *(f"{u} {v}" for u, v in g.edge_list)]) + "\n"


# -- families and corpora -------------------------------------------------


def _random_tree_edges(n: int, rng: random.Random) -> list[Edge]:
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    prufer = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in prufer:
        degree[v] += 1
    edges = []
    for v in prufer:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append(_norm(leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = (x for x in range(n) if degree[x] == 1)
    edges.append((u, w))
    return edges


def generate_family(kind: str, n: int, seed: int | None = None, p: float = 0.5) -> Graph:
    """Build a named graph; random kinds are deterministic given ``seed``.

    ``random_connected`` is a uniform random labeled tree plus every other
    pair independently with probability ``p``.
    """
    if n < 1:
        raise GraphError(f"n must be positive, got {n}")
    if kind == "complete":
        return Graph.from_edges(n, combinations(range(n), 2))
    if kind == "path":
        return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))
    if kind == "cycle":
        if n < 3:
            raise GraphError("cycle needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "star":
        return Graph.from_edges(n, ((0, i) for i in range(1, n)))
    if kind in ("random_tree", "random_connected"):
        if seed is None:
            raise GraphError(f"{kind} requires a seed")
        rng = random.Random(seed)
        edges = set(_random_tree_edges(n, rng))
        if kind == "random_connected":
            for e in combinations(range(n), 2):
                if e not in edges and rng.random() < p:
                    edges.add(e)
        return Graph.from_edges(n, edges)
    raise GraphError(f"unknown family {kind!r}; expected one of {', '.join(FAMILIES)}")


def _mask_connected(n: int, adj: list[int]) -> bool:
    full = (1 << n) - 1
    seen = frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == full


def enumerate_labeled_connected(n: int) -> Iterator[Graph]:
    """Every labeled connected simple graph on ``n`` vertices, once each."""
    if not 1 <= n <= MAX_EXHAUSTIVE_N:
        raise GraphError(f"exhaustive enumeration supports 1 <= n <= {MAX_EXHAUSTIVE_N}, got {n}")
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        adj = [0] * n
        chosen = []
        for b, (u, v) in enumerate(pairs):
            if mask >> b & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
                chosen.append((u, v))
        if _mask_connected(n, adj):
            yield Graph.from_edges(n, chosen)


def enumerate_trees(n: int) -> list[Graph]:
    """All trees on ``n`` vertices up to isomorphism, grown leaf by leaf."""
    if n < 1:
        raise GraphError(f"n must be positive, got {n}")
    level = {None: Graph(1, frozenset())}
    for size in range(2, n + 1):
        nxt: dict = {}
        for t in level.values():
            for v in range(size - 1):
                g = Graph.from_edges(size, [*t.edges, (v, size - 1)])
                key = g.canonical_key()
                if key is None:
                    raise GraphError(f"canonical labeling budget exhausted on a tree of order {size}")
                nxt.setdefault(key, g)
        level = nxt
    return list(level.values())


def random_connected_corpus(count: int, n_lo: int, n_hi: int, seed: int, p: float = 0.5) -> list[Graph]:
    rng = random.Random(seed)
    return [
        generate_family("random_connected", rng.randint(n_lo, n_hi), seed=rng.randrange(2**32), p=p)
        for _ in range(count)
    ]
