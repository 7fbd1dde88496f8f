"""Exact reference solvers.

These are verification tools: correct first, fast enough for desk-scale
instances second. Every oracle refuses inputs beyond ``BUDGETS`` instead of
falling back to an approximation.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import combinations

import numba
import numpy as np
import scipy.sparse
from scipy.sparse.csgraph import maximum_flow

from .errors import BudgetExceeded
from .graph import Graph

BUDGETS = {
    "max_cut_enumerated": 26,      # vertices outside the independent set
    "max_cut_vertices": 200,
    "densest_vertices": 2000,
    "densest_brute": 20,
    "matching_vertices": 2000,
    "matching_exhaustive": 16,
    "clique_vertices": 400,
    "max_clique_vertices": 120,
    "vertex_cover_vertices": 200,
    "vertex_cover_brute": 20,
    "dominating_set_vertices": 120,
    "dominating_set_brute": 20,
    "subgraph_pattern": 8,
}


def _budget(kind: str, size: int) -> None:
    if size > BUDGETS[kind]:
        raise BudgetExceeded(f"{kind}: size {size} exceeds budget {BUDGETS[kind]}")


# -- Max-Cut --------------------------------------------------------------

def greedy_independent_set(g: Graph) -> list[int]:
    """Vertices taken in (degree, id) order whenever no neighbor is taken."""
    chosen: list[int] = []
    blocked = set()
    for v in sorted(range(g.n), key=lambda v: (g.degree(v), v)):
        if v not in blocked:
            chosen.append(v)
            blocked.add(v)
            blocked |= g.adj[v]
    return chosen


@numba.njit(cache=True)
def _max_cut_kernel(c, cc_ptr, cc_idx, ci_ptr, ci_idx, ideg):
    in_s = np.zeros(c, dtype=np.bool_)
    a = np.zeros(ideg.shape[0], dtype=np.int64)
    cut_c = 0
    free = 0
    for w in range(ideg.shape[0]):
        free += ideg[w]
    best = cut_c + free
    best_code = 0
    limit = np.int64(1) << (c - 1) if c > 0 else np.int64(1)
    for i in range(1, limit):
        v = 0
        j = i
        while (j & 1) == 0:
            j >>= 1
            v += 1
        t = 0
        for k in range(cc_ptr[v], cc_ptr[v + 1]):
            if in_s[cc_idx[k]]:
                t += 1
        dc = (cc_ptr[v + 1] - cc_ptr[v]) - 2 * t
        adding = not in_s[v]
        in_s[v] = adding
        if adding:
            cut_c += dc
        else:
            cut_c -= dc
        for k in range(ci_ptr[v], ci_ptr[v + 1]):
            w = ci_idx[k]
            old = max(a[w], ideg[w] - a[w])
            if adding:
                a[w] += 1
            else:
                a[w] -= 1
            free += max(a[w], ideg[w] - a[w]) - old
        if cut_c + free > best:
            best = cut_c + free
            best_code = i ^ (i >> 1)
    return best, best_code


def _csr(lists):
    ptr = np.zeros(len(lists) + 1, dtype=np.int64)
    for i, lst in enumerate(lists):
        ptr[i + 1] = ptr[i] + len(lst)
    idx = np.array([x for lst in lists for x in lst], dtype=np.int64)
    return ptr, idx


def oracle_max_cut(g: Graph, return_side: bool = False):
    """Exact maximum cut.

    Enumerates every 2-coloring of the complement ``C`` of a greedy
    independent set ``I``; each vertex of ``I`` then independently takes the
    side opposite the majority of its (all-colored) neighbors. With ``I``
    empty this is plain enumeration over ``2^(n-1)`` cuts.
    """
    _budget("max_cut_vertices", g.n)
    if g.n <= 1 or g.m == 0:
        return (0, []) if return_side else 0
    indep = greedy_independent_set(g)
    iset = set(indep)
    cover = [v for v in range(g.n) if v not in iset]
    if not cover:
        return (0, []) if return_side else 0
    _budget("max_cut_enumerated", len(cover))
    cpos = {v: i for i, v in enumerate(cover)}
    ipos = {v: i for i, v in enumerate(indep)}
    cc = [[cpos[w] for w in sorted(g.adj[v]) if w in cpos] for v in cover]
    ci = [[ipos[w] for w in sorted(g.adj[v]) if w in ipos] for v in cover]
    cc_ptr, cc_idx = _csr(cc)
    ci_ptr, ci_idx = _csr(ci)
    ideg = np.array([g.degree(w) for w in indep], dtype=np.int64)
    best, code = _max_cut_kernel(len(cover), cc_ptr, cc_idx, ci_ptr, ci_idx, ideg)
    best = int(best)
    if not return_side:
        return best
    side = {cover[i] for i in range(len(cover)) if (code >> i) & 1}
    for w in indep:
        a = sum(1 for u in g.adj[w] if u in side)
        if g.degree(w) - a > a:
            side.add(w)
    assert g.boundary(side) == best
    return best, sorted(side)


def max_cut_brute(g: Graph) -> int:
    """Plain enumeration of all cuts; cross-check for :func:`oracle_max_cut`."""
    _budget("max_cut_enumerated", g.n)
    if g.n <= 1:
        return 0
    ptr, idx = g.to_csr()
    empty = np.zeros(0, dtype=np.int64)
    ci_ptr = np.zeros(g.n + 1, dtype=np.int64)
    best, _ = _max_cut_kernel(g.n, ptr, idx, ci_ptr, empty, empty)
    return int(best)


# -- Densest subgraph -----------------------------------------------------

def _min_cut_source_side(g: Graph, p: int, q: int) -> list[int]:
    """Source side of a minimum cut in Goldberg's network at density ``p/q``.

    The cut value equals ``q*m*n - 2*max_S(q*m_S - p*|S|)``.
    """
    n, m = g.n, g.m
    s, t = n, n + 1
    rows, cols, caps = [], [], []
    for v in range(n):
        rows += [s, v]
        cols += [v, t]
        caps += [q * m, q * m + 2 * p - q * g.degree(v)]
    for u, v in g.edges():
        rows += [u, v]
        cols += [v, u]
        caps += [q, q]
    if max(caps) >= 2**31:
        raise BudgetExceeded("flow capacities overflow int32")
    cap = scipy.sparse.csr_matrix((np.array(caps, dtype=np.int32), (rows, cols)), shape=(n + 2, n + 2))
    res = maximum_flow(cap, s, t)
    residual = (cap - res.flow).tocsr()
    residual.eliminate_zeros()
    seen = np.zeros(n + 2, dtype=bool)
    seen[s] = True
    queue = deque([s])
    while queue:
        u = queue.popleft()
        lo, hi = residual.indptr[u], residual.indptr[u + 1]
        for w, r in zip(residual.indices[lo:hi], residual.data[lo:hi]):
            if r > 0 and not seen[w]:
                seen[w] = True
                queue.append(w)
    return [v for v in range(n) if seen[v]]


def induced_edge_count(g: Graph, vertices) -> int:
    s = set(vertices)
    return sum(1 for u in s for w in g.adj[u] if w in s) // 2


def oracle_densest(g: Graph, return_set: bool = False):
    """Exact maximum density ``max_S m_S/|S|`` via parametric min cuts.

    Dinkelbach iteration: starting from ``S = V``, repeatedly replace ``S``
    by a maximizer of ``m_S - ρ(S)|S|``; the density strictly increases until
    the maximum is 0, at which point ``ρ(S)`` is optimal. All densities are
    exact fractions and every cut is computed with integer capacities.
    """
    _budget("densest_vertices", g.n)
    if g.m == 0:
        return (Fraction(0), []) if return_set else Fraction(0)
    best = list(range(g.n))
    rho = Fraction(g.m, g.n)
    while True:
        side = _min_cut_source_side(g, rho.numerator, rho.denominator)
        if not side:
            break
        ms = induced_edge_count(g, side)
        if ms * rho.denominator - rho.numerator * len(side) <= 0:
            break
        best, rho = side, Fraction(ms, len(side))
    return (rho, sorted(best)) if return_set else rho


def densest_brute(g: Graph) -> Fraction:
    """Subset enumeration; cross-check for :func:`oracle_densest`."""
    n = g.n
    _budget("densest_brute", n)
    if g.m == 0:
        return Fraction(0)
    masks = np.arange(1, 1 << n, dtype=np.int64)
    edges = np.zeros(masks.shape, dtype=np.int64)
    for u, v in g.edges():
        edges += ((masks >> u) & 1) & ((masks >> v) & 1)
    sizes = np.zeros(masks.shape, dtype=np.int64)
    for v in range(n):
        sizes += (masks >> v) & 1
    best = Fraction(0)
    # exact comparison on the float-argmax neighbourhood
    ratio = edges / sizes
    top = ratio.max()
    for i in np.nonzero(ratio >= top - 1e-9)[0]:
        best = max(best, Fraction(int(edges[i]), int(sizes[i])))
    return best


# -- Matching -------------------------------------------------------------

def max_matching_edges(g: Graph) -> list[tuple[int, int]]:
    """Maximum-cardinality matching by Edmonds' blossom algorithm."""
    _budget("matching_vertices", g.n)
    n = g.n
    adj = [sorted(a) for a in g.adj]
    match = [-1] * n

    def augment_from(root: int) -> bool:
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        u = to
                        while u != -1:
                            pv = parent[u]
                            ppv = match[pv]
                            match[u] = pv
                            match[pv] = u
                            u = ppv
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    # greedy warm start keeps the number of blossom searches small
    for u, v in g.edges():
        if match[u] == -1 and match[v] == -1:
            match[u], match[v] = v, u
    for v in range(n):
        if match[v] == -1 and adj[v]:
            augment_from(v)
    return [(v, match[v]) for v in range(n) if match[v] > v]


def oracle_max_matching(g: Graph) -> int:
    return len(max_matching_edges(g))


def max_matching_exhaustive(g: Graph) -> int:
    _budget("matching_exhaustive", g.n)
    edges = list(g.edges())

    def best(i: int, used: int) -> int:
        if i == len(edges):
            return 0
        u, v = edges[i]
        skip = best(i + 1, used)
        if not (used >> u) & 1 and not (used >> v) & 1:
            return max(skip, 1 + best(i + 1, used | (1 << u) | (1 << v)))
        return skip

    return best(0, 0)


def hopcroft_karp(g: Graph, left, right) -> int:
    """Size of a maximum matching between ``left`` and ``right``."""
    left = list(left)
    rset = set(right)
    INF = float("inf")
    match_l = {u: None for u in left}
    match_r = {v: None for v in right}
    dist = {}

    def bfs() -> bool:
        queue = deque()
        for u in left:
            if match_l[u] is None:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if v not in rset:
                    continue
                w = match_r[v]
                if w is None:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u) -> bool:
        for v in sorted(g.adj[u]):
            if v not in rset:
                continue
            w = match_r[v]
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = INF
        return False

    size = 0
    while bfs():
        for u in left:
            if match_l[u] is None and dfs(u):
                size += 1
    return size


def oracle_bipartite_pm(g: Graph, parts) -> bool:
    left, right = list(parts[0]), list(parts[1])
    if len(left) != len(right) or not left:
        return False
    return hopcroft_karp(g, left, right) == len(left)


# -- Cliques --------------------------------------------------------------

def oracle_count_k_cliques(g: Graph, k: int) -> int:
    """Number of k-cliques, by backtracking over increasing vertex ids."""
    _budget("clique_vertices", g.n)
    if k <= 0:
        return 1
    higher = [{w for w in g.adj[v] if w > v} for v in range(g.n)]

    def extend(cands: set[int], depth: int) -> int:
        if depth == k:
            return 1
        if len(cands) < k - depth:
            return 0
        return sum(extend(cands & higher[v], depth + 1) for v in cands)

    return extend(set(range(g.n)), 0)


def oracle_max_clique(g: Graph) -> int:
    """Maximum clique size by branch and bound with greedy-coloring bounds."""
    _budget("max_clique_vertices", g.n)
    if g.n == 0:
        return 0
    adj = g.adj
    best = 1

    def color_order(cands: list[int]) -> tuple[list[int], list[int]]:
        colors: list[list[int]] = []
        for v in cands:
            for cls in colors:
                if not (adj[v] & set(cls)):
                    cls.append(v)
                    break
            else:
                colors.append([v])
        order, bounds = [], []
        for c, cls in enumerate(colors, start=1):
            for v in cls:
                order.append(v)
                bounds.append(c)
        return order, bounds

    def expand(size: int, cands: list[int]) -> None:
        nonlocal best
        order, bounds = color_order(cands)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            new = [w for w in order[:i] if w in adj[v]]
            if new:
                expand(size + 1, new)
            elif size + 1 > best:
                best = size + 1

    expand(0, sorted(range(g.n), key=lambda v: -g.degree(v)))
    return best


# -- Vertex cover / dominating set ----------------------------------------

def oracle_min_vertex_cover(g: Graph) -> int:
    """Exact minimum vertex cover by branch and reduce.

    Reductions: drop isolated vertices, take the neighbor of a degree-1
    vertex, solve max-degree-2 components (paths and cycles) directly.
    Branching: a max-degree vertex goes in, or all its neighbors do.
    """
    _budget("vertex_cover_vertices", g.n)
    adj = {v: set(g.adj[v]) for v in range(g.n) if g.adj[v]}
    best = [sum(1 for _ in g.edges())]

    def remove(a: dict, vs) -> dict:
        out = {u: nb - set(vs) for u, nb in a.items() if u not in vs}
        return {u: nb for u, nb in out.items() if nb}

    def low_degree_cover(a: dict) -> int:
        total = 0
        seen = set()
        for s in a:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in a[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            edges = sum(len(a[u]) for u in comp) // 2
            if edges == len(comp):
                total += (len(comp) + 1) // 2
            else:
                total += len(comp) // 2
        return total

    def solve(a: dict, taken: int) -> None:
        while True:
            if not a:
                best[0] = min(best[0], taken)
                return
            pendant = next((u for u, nb in a.items() if len(nb) == 1), None)
            if pendant is None:
                break
            (w,) = a[pendant]
            a = remove(a, {w})
            taken += 1
        m = sum(len(nb) for nb in a.values()) // 2
        dmax = max(len(nb) for nb in a.values())
        if taken + -(-m // dmax) >= best[0]:
            return
        if dmax <= 2:
            best[0] = min(best[0], taken + low_degree_cover(a))
            return
        v = max(a, key=lambda u: (len(a[u]), -u))
        nbrs = set(a[v])
        solve(remove(a, {v}), taken + 1)
        solve(remove(a, nbrs), taken + len(nbrs))

    solve(adj, 0)
    return best[0]


def min_vertex_cover_brute(g: Graph) -> int:
    _budget("vertex_cover_brute", g.n)
    edges = list(g.edges())
    for size in range(g.n + 1):
        for sub in combinations(range(g.n), size):
            s = set(sub)
            if all(u in s or v in s for u, v in edges):
                return size
    return g.n


def oracle_min_dominating_set(g: Graph) -> int:
    """Exact minimum dominating set by branch and bound.

    Branch on an undominated vertex with the fewest useful dominators; a
    dominator whose newly-dominated set is contained in another candidate's
    is skipped (exchange argument). Lower bound: undominated count divided
    by the largest possible gain.
    """
    _budget("dominating_set_vertices", g.n)
    n = g.n
    closed = [frozenset(g.adj[v] | {v}) for v in range(n)]
    best = [n]

    def solve(undominated: frozenset, taken: int) -> None:
        if not undominated:
            best[0] = min(best[0], taken)
            return
        gain = max(len(closed[v] & undominated) for v in range(n))
        if taken + -(-len(undominated) // gain) >= best[0]:
            return
        u = min(undominated, key=lambda x: (len(closed[x]), x))
        cands = sorted(closed[u], key=lambda c: (-len(closed[c] & undominated), c))
        gains = {c: closed[c] & undominated for c in cands}
        kept = []
        for c in cands:
            if any(gains[c] <= gains[k] for k in kept):
                continue
            kept.append(c)
        for c in kept:
            solve(undominated - gains[c], taken + 1)

    solve(frozenset(range(n)), 0)
    return best[0]


def min_dominating_set_brute(g: Graph) -> int:
    _budget("dominating_set_brute", g.n)
    closed = [g.adj[v] | {v} for v in range(g.n)]
    everyone = set(range(g.n))
    for size in range(g.n + 1):
        for sub in combinations(range(g.n), size):
            if set().union(*(closed[v] for v in sub)) >= everyone:
                return size
    return g.n


# -- Distances and patterns -----------------------------------------------

def oracle_distance(g: Graph, s: int, t: int) -> float:
    return g.bfs_distances(s)[t]


def oracle_subgraph_iso(g: Graph, h: Graph) -> bool:
    """Whether ``h`` occurs as a (not necessarily induced) subgraph of ``g``."""
    _budget("subgraph_pattern", h.n)
    if h.n == 0:
        return True
    if h.n > g.n:
        return False
    # pattern order: BFS from a max-degree vertex so each new vertex has a mapped neighbor
    order: list[int] = []
    for root in sorted(range(h.n), key=lambda v: -h.degree(v)):
        if root in order:
            continue
        order.append(root)
        i = len(order) - 1
        while i < len(order):
            for w in sorted(h.adj[order[i]], key=lambda v: -h.degree(v)):
                if w not in order:
                    order.append(w)
            i += 1
    pos = {v: i for i, v in enumerate(order)}
    back = [[pos[w] for w in h.adj[v] if pos[w] < pos[v]] for v in order]
    need = [h.degree(v) for v in order]
    image = [-1] * h.n
    used = set()

    def place(i: int) -> bool:
        if i == h.n:
            return True
        if back[i]:
            cands = g.adj[image[back[i][0]]]
        else:
            cands = range(g.n)
        for c in cands:
            if c in used or g.degree(c) < need[i]:
                continue
            if all(c in g.adj[image[j]] for j in back[i]):
                image[i] = c
                used.add(c)
                if place(i + 1):
                    return True
                used.discard(c)
        image[i] = -1
        return False

    return place(0)
