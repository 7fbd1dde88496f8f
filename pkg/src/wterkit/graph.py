"""Undirected simple graphs and the edge-list text format."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, TextIO

import numpy as np

from .errors import DuplicateEdge, InvalidEdge, MissingEdge, ParseError


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Adjacency is a list of neighbor sets; the edge count is maintained
    incrementally so ``m`` is O(1).
    """

    __slots__ = ("adj", "m")

    def __init__(self, n: int = 0, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.m = 0
        for u, v in edges:
            self.insert_edge(u, v)

    @property
    def n(self) -> int:
        return len(self.adj)

    def add_vertices(self, count: int) -> range:
        """Append ``count`` isolated vertices and return their ids."""
        start = len(self.adj)
        self.adj.extend(set() for _ in range(count))
        return range(start, start + count)

    def _check(self, u: int, v: int) -> None:
        n = len(self.adj)
        if u == v:
            raise InvalidEdge(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge ({u}, {v}) out of range for n={n}")

    def insert_edge(self, u: int, v: int) -> None:
        self._check(u, v)
        if v in self.adj[u]:
            raise DuplicateEdge(f"edge ({u}, {v}) already present")
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.m += 1

    def delete_edge(self, u: int, v: int) -> None:
        if not (0 <= u < len(self.adj)) or v not in self.adj[u]:
            raise MissingEdge(f"edge ({u}, {v}) not present")
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.m -= 1

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < len(self.adj) and v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self.adj), dtype=np.int64, count=len(self.adj))

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def neighbors(self, v: int) -> set[int]:
        return self.adj[v]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u, nb in enumerate(self.adj):
            for v in sorted(nb):
                if u < v:
                    yield (u, v)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(u, v) for u, nb in enumerate(self.adj) for v in nb if u < v}

    def volume(self, vertices: Iterable[int]) -> int:
        return sum(len(self.adj[v]) for v in vertices)

    def boundary(self, side: Iterable[int]) -> int:
        """Number of edges with exactly one endpoint in ``side``."""
        s = set(side)
        return sum(1 for u in s for w in self.adj[u] if w not in s)

    def copy(self) -> Graph:
        g = Graph.__new__(Graph)
        g.adj = [set(a) for a in self.adj]
        g.m = self.m
        return g

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled to ``0..k-1`` in the given order."""
        order = list(vertices)
        index = {v: i for i, v in enumerate(order)}
        h = Graph(len(order))
        for v in order:
            for w in self.adj[v]:
                if w in index and index[v] < index[w]:
                    h.insert_edge(index[v], index[w])
        return h

    def to_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` with neighbor lists sorted."""
        indptr = np.zeros(len(self.adj) + 1, dtype=np.int64)
        for v, nb in enumerate(self.adj):
            indptr[v + 1] = indptr[v] + len(nb)
        indices = np.empty(indptr[-1], dtype=np.int64)
        for v, nb in enumerate(self.adj):
            indices[indptr[v]:indptr[v + 1]] = sorted(nb)
        return indptr, indices

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def bfs_distances(self, source: int) -> list[float]:
        dist = [float("inf")] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if dist[w] == float("inf"):
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def two_coloring(self) -> list[int] | None:
        """A proper 2-coloring (0/1 per vertex), or None if an odd cycle exists."""
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return None
        return color

    def is_bipartite(self) -> bool:
        return self.two_coloring() is not None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj == other.adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- constructors used by tests and docs ----------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    g = Graph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.insert_edge(u, v)
    return g


def random_graph_m(n: int, m: int, rng: np.random.Generator) -> Graph:
    """Uniform simple graph with exactly ``m`` edges."""
    total = n * (n - 1) // 2
    if m > total:
        raise ValueError("too many edges")
    picks = rng.choice(total, size=m, replace=False)
    iu, iv = np.triu_indices(n, k=1)
    return Graph(n, zip(iu[picks].tolist(), iv[picks].tolist()))


# -- edge-list text format ------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``.

    Lines starting with ``#`` are comments. Errors carry 1-based line numbers.
    """
    header = None
    g = None
    seen = 0
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno) from None
        if len(nums) != 2:
            raise ParseError(f"expected two integers, got {len(nums)}", lineno)
        if header is None:
            header = nums
            if nums[0] < 0 or nums[1] < 0:
                raise ParseError("negative header value", lineno)
            g = Graph(nums[0])
            continue
        if seen >= header[1]:
            raise ParseError(f"more than the declared {header[1]} edges", lineno)
        try:
            g.insert_edge(*nums)
        except (DuplicateEdge, InvalidEdge) as exc:
            raise ParseError(str(exc), lineno) from None
        seen += 1
    if header is None:
        raise ParseError("missing 'n m' header", 1)
    if seen != header[1]:
        raise ParseError(f"declared {header[1]} edges, found {seen}")
    return g


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, out: TextIO | str, comment: str | None = None) -> None:
    text = format_edge_list(g, comment)
    if isinstance(out, str):
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
