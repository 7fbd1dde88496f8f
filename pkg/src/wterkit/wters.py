"""Worst-case to expander-case reductions.

Each ``wter_*`` builder returns the expanded instance together with a
:class:`SolutionMap` that recovers the answer on the input from the answer on
the output. Vertex ids of the input are preserved; gadget vertices follow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil, comb

import numpy as np

from .errors import (
    AllocationInfeasible,
    DensityTooHigh,
    DensityTooLow,
    HittingSetFailed,
    InvalidInput,
    IsolatedVertex,
    UnequalParts,
    UnsupportedPattern,
)
from .expander import BipartiteExpander
from .gadget import (
    MIN_EXPANDER_DEGREE,
    MIN_SIDE,
    ExpanderizedGraph,
    _tradeoff_with_side,
    bipartition,
    build_bipartite_core_gadget,
    build_core_gadget,
    certified_expander,
    measured_alpha,
    quota,
    round_robin,
)
from .graph import Graph

DENSEST_EPS_STATIC = Fraction(1, 17)
DENSEST_EPS_DYNAMIC = Fraction(1, 44)
DENSEST_MIN_RATIO = 42


@dataclass(frozen=True)
class SolutionMap:
    """``solution(G)`` as a function of ``solution(G_exp)``.

    kinds: ``identity``; ``additive_offset`` (subtract ``value``);
    ``multiplicative_factor`` (divide by ``value``); ``affine`` with
    ``value = {"offset": c, "factor": k}`` meaning ``(x - c) * k``.
    """

    problem: str
    kind: str
    value: object = None
    extra: dict = field(default_factory=dict)

    def recover(self, x):
        if self.kind == "identity":
            return x
        if self.kind == "additive_offset":
            return x - self.value
        if self.kind == "multiplicative_factor":
            return Fraction(x) / self.value
        if self.kind == "affine":
            return (x - self.value["offset"]) * self.value["factor"]
        raise InvalidInput(f"unknown map kind {self.kind!r}")

    def forward(self, x):
        """Expected output-side answer for input-side answer ``x``."""
        if self.kind == "identity":
            return x
        if self.kind == "additive_offset":
            return x + self.value
        if self.kind == "multiplicative_factor":
            return x * self.value
        if self.kind == "affine":
            return Fraction(x) / self.value["factor"] + self.value["offset"]
        raise InvalidInput(f"unknown map kind {self.kind!r}")

    def to_json(self) -> dict:
        out = {"problem": self.problem, "kind": self.kind, "value": _json_value(self.value)}
        for k, v in self.extra.items():
            out[k] = v
        return out


def _json_value(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    return v


# -- shared construction ---------------------------------------------------

def _attach_core(out: Graph, hosts: list[int], host_deg: list[int], eps: Fraction, n_side: int,
                 labels: list[str], d_total: int | None = None):
    """Append L and R to ``out`` and join ``hosts`` to L by Round-Robin.

    Returns ``(expander, l_start, slots)``.
    """
    quotas = [quota(dg, eps) for dg in host_deg]
    slots, _ = round_robin(quotas, n_side)
    total = sum(quotas) if d_total is None else d_total
    x = certified_expander(n_side, ceil(total / n_side) if total else MIN_EXPANDER_DEGREE)
    l_start = out.n
    out.add_vertices(2 * n_side)
    labels += ["L"] * n_side + ["R"] * n_side
    for h, ss in zip(hosts, slots):
        for s in ss:
            out.insert_edge(h, l_start + s)
    for a, b in x.edges():
        out.insert_edge(l_start + a, l_start + n_side + b)
    return x, l_start, slots


def gadget_checks(out: Graph, hosts, host_deg, l_vertices, r_vertices, x: BipartiteExpander,
                  eps: Fraction, alpha: Fraction) -> dict[str, bool]:
    """Robust-lemma hypotheses for a gadget attached to ``hosts``."""
    lset = set(l_vertices)
    l0, r0 = min(l_vertices), min(r_vertices)
    nbr = all(len(out.adj[h] & lset) >= eps * dg + 1 for h, dg in zip(hosts, host_deg))
    degs = [out.degree(w) for w in l_vertices]
    rng = min(degs) >= x.degree and max(degs) <= alpha * x.degree
    present = x.certificate.meets and all(out.has_edge(l0 + a, r0 + b) for a, b in x.edges())
    return {"neighbor_fraction": nbr, "l_degree_range": rng, "certified_expander": present}


def _result(out: Graph, labels, n: int, n_side: int, x, eps, l_start: int, slots, mode: str,
            claim_eps: Fraction | None = None, extra=None) -> ExpanderizedGraph:
    alpha = measured_alpha(out, range(l_start, l_start + n_side), x.degree)
    claim = x.phi * (claim_eps if claim_eps is not None else eps) / (5 * alpha)
    alloc = [[l_start + s for s in ss] for ss in slots]
    return ExpanderizedGraph(out, labels, n, n_side, x, eps, alpha, claim, alloc, mode,
                             extra=extra or {}, l_start=l_start)


def _add_pendants(out: Graph, labels: list[str], hosts) -> list[int]:
    hosts = list(hosts)
    first = out.n
    out.add_vertices(len(hosts))
    labels += ["aux"] * len(hosts)
    for i, w in enumerate(hosts):
        out.insert_edge(w, first + i)
    return list(range(first, first + len(hosts)))


def _check_no_isolated(g: Graph) -> None:
    iso = [v for v in range(g.n) if g.degree(v) == 0]
    if iso:
        raise IsolatedVertex(f"vertex {iso[0]} is isolated")


# -- Max-Cut ----------------------------------------------------------------

def max_cut_side_size(g: Graph, eps: Fraction) -> int:
    """Smallest feasible N at or above ``ceil(eps*n/2)``.

    Every vertex needs its quota of distinct slots, and the expander degree
    ``ceil(e(V,L)/N)`` must fit in ``N``.
    """
    quotas = [quota(g.degree(v), eps * eps) for v in range(g.n)]
    n_side = max(ceil(eps * g.n / 2), max(quotas, default=0), MIN_SIDE)
    while ceil(sum(quotas) / n_side) > n_side:
        n_side += 1
    return n_side


def wter_max_cut(g: Graph, eps: Fraction = Fraction(1)) -> tuple[ExpanderizedGraph, SolutionMap]:
    eps = Fraction(eps)
    if not (0 < eps <= 1):
        raise InvalidInput("need 0 < eps <= 1")
    n = g.n
    n_side = max_cut_side_size(g, eps)
    out = g.copy()
    labels = ["V"] * n
    hosts = list(range(n))
    degs = [g.degree(v) for v in hosts]
    x, l_start, slots = _attach_core(out, hosts, degs, eps * eps, n_side, labels)
    r_start = l_start + n_side
    for v, ss in zip(hosts, slots):
        for s in ss:
            out.insert_edge(v, r_start + s)
    e_vl = sum(len(ss) for ss in slots)
    d = x.degree
    f_size = 3 * d
    f_l = out.n
    out.add_vertices(2 * f_size)
    labels += ["F_L"] * f_size + ["F_R"] * f_size
    f_r = f_l + f_size
    for i in range(f_size):
        for s in range(n_side):
            out.insert_edge(f_l + i, l_start + s)
            out.insert_edge(f_r + i, r_start + s)
    offset = 7 * d * n_side + e_vl
    # L ∪ R acts as the balancing layer with both V-sides attached
    side = range(l_start, l_start + 2 * n_side)
    alpha = Fraction(max(out.degree(w) for w in side), d)
    claim = x.phi * eps * eps / (5 * alpha)
    eg = ExpanderizedGraph(out, labels, n, n_side, x, eps, alpha, claim,
                           [[l_start + s for s in ss] for ss in slots], "max-cut",
                           extra={"d": d, "e_VL": e_vl, "F_L": list(range(f_l, f_r)),
                                  "F_R": list(range(f_r, f_r + f_size)),
                                  "N_formula": ceil(eps * n / 2)},
                           l_start=l_start)
    smap = SolutionMap("max-cut", "additive_offset", offset,
                       extra={"seven_dN": 7 * d * n_side, "e_VL": e_vl})
    return eg, smap


def max_cut_structure_ok(eg: ExpanderizedGraph, side) -> dict[str, bool]:
    """Coloring pattern of an optimal cut: F_L, F_R, L, R monochromatic, L ≠ F_L, L ≠ R."""
    s = set(side)
    col = lambda vs: {v in s for v in vs}
    fl, fr = col(eg.extra["F_L"]), col(eg.extra["F_R"])
    lc, rc = col(eg.l_vertices), col(eg.r_vertices)
    mono = all(len(c) == 1 for c in (fl, fr, lc, rc))
    return {
        "monochromatic": mono,
        "L_opposite_F_L": mono and lc != fl,
        "R_opposite_F_R": mono and rc != fr,
        "L_opposite_R": mono and lc != rc,
    }


# -- Densest subgraph ---------------------------------------------------------

def _densest_guard(g: Graph) -> None:
    if g.m <= DENSEST_MIN_RATIO * g.n:
        raise DensityTooLow(f"need m > {DENSEST_MIN_RATIO}n, got m={g.m}, n={g.n}")


def densest_margin(out: Graph, l_vertices, r_vertices) -> tuple[int, Fraction]:
    """``(μ, m_exp/n_exp)`` with μ the maximum degree over L ∪ R."""
    mu = max(out.degree(w) for w in list(l_vertices) + list(r_vertices))
    return mu, Fraction(out.m, out.n)


def wter_densest(g: Graph, dynamic: bool = False):
    _densest_guard(g)
    smap = SolutionMap("densest", "identity")
    if dynamic:
        from .dynamic import dyn_init

        st = dyn_init(g, eps=DENSEST_EPS_DYNAMIC)
        check = dynamic_densest_check(st)
        if not check["mu_below_average"]:
            raise DensityTooLow("max gadget degree is not below the average degree")
        return st, smap
    eg = _tradeoff_with_side(g, DENSEST_EPS_STATIC, max(MIN_SIDE, g.n + 2), mode="tradeoff")
    mu, avg = densest_margin(eg.graph, eg.l_vertices, eg.r_vertices)
    eg.extra.update({"mu": mu, "average_degree_ratio": str(avg)})
    if not mu < avg:
        raise DensityTooLow(f"max gadget degree {mu} is not below m_exp/n_exp = {float(avg):.3f}")
    return eg, smap


def dynamic_densest_check(st) -> dict[str, bool]:
    """Runtime invariants of the dynamic densest reduction."""
    n, m, eps = st.n, st.g.m, st.eps
    e_vl = sum(st.deg_l)
    l_ids = range(st.n, st.n + st.n_side)
    r_ids = range(st.n + st.n_side, st.n + 2 * st.n_side)
    mu, avg = densest_margin(st.gexp, l_ids, r_ids)
    return {
        "e_VL_lower": eps * m + 3 * n <= e_vl,
        "e_VL_upper": e_vl <= 4 * eps * m + 4 * n,
        "mu_below_average": mu < avg,
    }


def wter_densify_clique_attach(g: Graph, c: int, rho: Fraction | None = None) -> tuple[Graph, SolutionMap]:
    """Attach a (2c+1)-clique to every vertex.

    ``rho`` may be supplied by the caller; otherwise the exact oracle checks
    the precondition ``ρ(G) < c + 1/2``.
    """
    if c < 1:
        raise InvalidInput("c must be a positive integer")
    if rho is None:
        from .oracles import oracle_densest

        rho = oracle_densest(g)
    if not Fraction(rho) < c + Fraction(1, 2):
        raise DensityTooHigh(f"ρ(G) = {rho} is not below {c} + 1/2")
    n = g.n
    out = g.copy()
    out.add_vertices(2 * c * n)
    for v in range(n):
        clique = [v] + [n + 2 * c * v + j for j in range(2 * c)]
        for a, b in combinations(clique, 2):
            out.insert_edge(a, b)
    smap = SolutionMap("densest", "affine", {"offset": c, "factor": 2 * c + 1})
    return out, smap


# -- Matching, vertex cover, perfect matching --------------------------------

def wter_matching(g: Graph) -> tuple[ExpanderizedGraph, SolutionMap]:
    eg = build_core_gadget(g)
    out = eg.graph
    pend = _add_pendants(out, eg.labels, list(eg.l_vertices) + list(eg.r_vertices))
    eg.extra["pendants"] = pend
    eg.alpha = measured_alpha(out, eg.l_vertices, eg.expander_degree)
    off = 2 * eg.n_side
    smap = SolutionMap("matching", "additive_offset", off,
                       extra={"companion": {"problem": "min-vertex-cover",
                                            "kind": "additive_offset", "value": off}})
    return eg, smap


def vertex_cover_map(eg: ExpanderizedGraph) -> SolutionMap:
    return SolutionMap("min-vertex-cover", "additive_offset", 2 * eg.n_side)


def wter_bipartite_perfect_matching(g: Graph, parts=None) -> tuple[ExpanderizedGraph, SolutionMap]:
    a, b = bipartition(g, parts)
    if len(a) != len(b):
        raise UnequalParts(f"parts have sizes {len(a)} and {len(b)}")
    eg = build_bipartite_core_gadget(g, (a, b))
    pend = _add_pendants(eg.graph, eg.labels, list(eg.l_vertices) + list(eg.r_vertices))
    eg.extra["pendants"] = pend
    eg.alpha = measured_alpha(eg.graph, list(eg.l_vertices) + list(eg.r_vertices), eg.expander_degree)
    return eg, SolutionMap("bipartite-perfect-matching", "identity")


def bpm_output_parts(eg: ExpanderizedGraph) -> tuple[list[int], list[int]]:
    """Sides of the output: ``A ∪ R ∪ pend(L)`` and ``B ∪ L ∪ pend(R)``."""
    a, b = eg.parts
    pend = eg.extra["pendants"]
    n_side = eg.n_side
    pend_l, pend_r = pend[:n_side], pend[n_side:]
    return (sorted(a) + list(eg.r_vertices) + pend_l,
            sorted(b) + list(eg.l_vertices) + pend_r)


# -- k-clique ---------------------------------------------------------------------

def wter_k_clique(g: Graph, k: int = 3) -> tuple[ExpanderizedGraph, SolutionMap]:
    if k < 3:
        raise InvalidInput("k must be at least 3")
    _check_no_isolated(g)
    n = g.n
    out = g.copy()
    out.add_vertices(n)
    labels = ["V"] * n + ["V_ind"] * n
    for u, v in g.edges():
        out.insert_edge(u, n + v)
        out.insert_edge(v, n + u)
    hosts = list(range(n, 2 * n))
    degs = [g.degree(v) for v in range(n)]
    n_side = max(MIN_SIDE, n + 2)
    x, l_start, slots = _attach_core(out, hosts, degs, Fraction(1), n_side, labels)
    eg = _result(out, labels, n, n_side, x, Fraction(1), l_start, slots, "k-clique",
                 extra={"k": k, "hosts": hosts})
    smap = SolutionMap("k-clique-count", "multiplicative_factor", k + 1,
                       extra={"detection": "identity"})
    return eg, smap


# -- H-subgraph -------------------------------------------------------------------

def wter_h_subgraph(g: Graph, h: Graph) -> tuple[ExpanderizedGraph, SolutionMap]:
    bad = [v for v in range(h.n) if h.degree(v) < 2]
    if bad:
        raise UnsupportedPattern(f"pattern vertex {bad[0]} has degree {h.degree(bad[0])} < 2")
    eg = build_core_gadget(g)
    base = eg.graph
    length = max(1, ceil(h.n / 2))
    out = g.copy()
    out.add_vertices(2 * eg.n_side)
    labels = list(eg.labels)
    n = g.n
    for u, v in base.edges():
        if u < n and v < n:
            continue
        prev = u
        for _ in range(length - 1):
            w = out.n
            out.add_vertices(1)
            labels.append("aux")
            out.insert_edge(prev, w)
            prev = w
        out.insert_edge(prev, v)
    res = ExpanderizedGraph(out, labels, n, eg.n_side, eg.expander, eg.eps, eg.alpha,
                            eg.conductance_claim, eg.allocation, "h-subgraph",
                            extra={"path_length": length})
    return res, SolutionMap("h-subgraph", "identity")


# -- Hitting set, Max-Clique, Dominating Set ----------------------------------------

def hitting_threshold(eps: Fraction) -> float:
    return math.log(1 / eps) / eps


def f_eps(eps: Fraction) -> float:
    e = float(eps)
    return e * e / (10 * math.log(1 / e))


def hitting_requirements(g: Graph, eps: Fraction, strict: bool = True) -> dict[int, int]:
    """Qualifying vertex -> number of neighbors Q must contain.

    Strict asks for ``ceil(eps*deg)``; the relaxed form asks for
    ``floor(eps*deg)``, which is what dense inputs such as cliques allow.
    """
    thr = hitting_threshold(eps)
    rnd = math.ceil if strict else math.floor
    return {v: rnd(eps * g.degree(v)) for v in range(g.n) if g.degree(v) > thr}


def hitting_fraction_ok(g: Graph, q, eps: Fraction, strict: bool = True) -> bool:
    qs = set(q)
    return all(len(g.adj[v] & qs) >= need
               for v, need in hitting_requirements(g, eps, strict).items())


def _components_hit(g: Graph, q) -> bool:
    qs = set(q)
    for comp in g.components():
        if len(comp) > 1 and not any(v in qs for v in comp):
            return False
    return True


def _greedy_hitting(g: Graph, size: int, req: dict[int, int]) -> list[int]:
    comp_of = {}
    for i, comp in enumerate(g.components()):
        for v in comp:
            comp_of[v] = i
    have = dict.fromkeys(req, 0)
    q: list[int] = []
    taken = set()
    hit_comps = set()
    while len(q) < size:
        best = None
        for u in range(g.n):
            if u in taken:
                continue
            gain = sum(1 for v in g.adj[u] if v in have and have[v] < req[v])
            fresh = 1 if (g.degree(u) > 0 and comp_of[u] not in hit_comps) else 0
            key = (gain, fresh, -u)
            if best is None or key > best[0]:
                best = (key, u)
        u = best[1]
        q.append(u)
        taken.add(u)
        hit_comps.add(comp_of[u])
        for v in g.adj[u]:
            if v in have:
                have[v] += 1
    return sorted(q)


def build_hitting_set(g: Graph, eps: Fraction, exhaustive_limit: int = 20) -> list[int]:
    """Deterministic Q of size ``ceil(eps*n)`` hitting every high-degree neighborhood.

    Greedy picks the vertex adjacent to the most still-deficient qualifying
    vertices; ties go to a vertex in a component with no pick yet, then the
    lowest id. Falls back to lexicographic exhaustive search for small n.
    The strict requirement is tried first, then the relaxed one.
    """
    eps = Fraction(eps)
    if not (0 < eps < 1):
        raise InvalidInput("need 0 < eps < 1")
    n = g.n
    size = ceil(eps * n)
    for strict in (True, False):
        q = _greedy_hitting(g, size, hitting_requirements(g, eps, strict))
        if hitting_fraction_ok(g, q, eps, strict) and _components_hit(g, q):
            return q
        if n <= exhaustive_limit:
            for cand in combinations(range(n), size):
                if hitting_fraction_ok(g, cand, eps, strict) and _components_hit(g, cand):
                    return list(cand)
    raise HittingSetFailed(f"no hitting set of size {size} for eps={eps}")


def strict_hitting_feasible(g: Graph, eps: Fraction) -> bool:
    """Whether any Q of size ``ceil(eps*n)`` meets the strict requirement (exhaustive)."""
    eps = Fraction(eps)
    size = ceil(eps * g.n)
    return any(hitting_fraction_ok(g, cand, eps, True) and _components_hit(g, cand)
               for cand in combinations(range(g.n), size))


def hitting_cut_violations(g: Graph, q, eps: Fraction, limit: int = 1) -> list[list[int]]:
    """Cuts S with ``vol(S∩Q) < f·vol(S)`` and ``e(S, V∖S) <= f·vol(S)``.

    Exhaustive over all nonempty S; intended for n <= 20.
    """
    n = g.n
    if n > 22:
        raise InvalidInput("exhaustive cut check is limited to n <= 22")
    f = f_eps(Fraction(eps))
    deg = g.degrees().astype(np.int64)
    qmask = np.zeros(n, dtype=np.int64)
    qmask[list(q)] = 1
    edges = np.array(list(g.edges()), dtype=np.int64).reshape(-1, 2)
    out: list[list[int]] = []
    chunk = 1 << 16
    total = 1 << n
    for start in range(1, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        bits = (masks[:, None] >> np.arange(n)) & 1
        vol = bits @ deg
        volq = bits @ (deg * qmask)
        if len(edges):
            cut = (bits[:, edges[:, 0]] != bits[:, edges[:, 1]]).sum(axis=1)
        else:
            cut = np.zeros(len(masks), dtype=np.int64)
        bad = (volq < f * vol) & (cut <= f * vol)
        for i in np.nonzero(bad)[0][: max(0, limit - len(out))]:
            out.append([v for v in range(n) if bits[i, v]])
        if len(out) >= limit:
            break
    return out


def _q_ind_graph(g: Graph, eps: Fraction):
    _check_no_isolated(g)
    q = build_hitting_set(g, eps)
    n = g.n
    out = g.copy()
    out.add_vertices(len(q))
    labels = ["V"] * n + ["Q_ind"] * len(q)
    hosts = list(range(n, n + len(q)))
    for i, u in enumerate(q):
        for v in g.adj[u]:
            out.insert_edge(v, n + i)
    degs = [g.degree(u) for u in q]
    n_side = max(ceil(eps * n) + 2, max((quota(dg, eps) for dg in degs), default=0), MIN_SIDE)
    x, l_start, slots = _attach_core(out, hosts, degs, eps, n_side, labels)
    eg = _result(out, labels, n, n_side, x, eps, l_start, slots, "q-ind",
                 extra={"Q": q, "hosts": hosts})
    return eg


def wter_max_clique(g: Graph, eps: Fraction = Fraction(1, 2)) -> tuple[ExpanderizedGraph, SolutionMap]:
    eps = Fraction(eps)
    eg = _q_ind_graph(g, eps)
    eg.mode = "max-clique"
    return eg, SolutionMap("max-clique", "identity")


def wter_dominating_set(g: Graph, eps: Fraction = Fraction(1, 2)) -> tuple[ExpanderizedGraph, SolutionMap]:
    eps = Fraction(eps)
    eg = _q_ind_graph(g, eps)
    eg.mode = "dominating-set"
    eg.extra["pendants"] = _add_pendants(eg.graph, eg.labels, eg.l_vertices)
    # pendants lift every L degree by one; re-measure so the claim stays sound
    eg.alpha = measured_alpha(eg.graph, eg.l_vertices, eg.expander_degree)
    eg.conductance_claim = eg.cert_phi * eps / (5 * eg.alpha)
    return eg, SolutionMap("min-dominating-set", "additive_offset", eg.n_side)


# -- Graphical OMv / st-SP (3 vs 5) ------------------------------------------------

@dataclass
class OmvInstance:
    matrix: np.ndarray
    graph: Graph
    labels: list[str]
    gadget: ExpanderizedGraph
    s: int
    t: int
    anchor: tuple[int, int]
    u: list[int]
    v: list[int]
    events: list = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.matrix.shape[0]

    def a(self, i: int) -> int:
        return i

    def b(self, j: int) -> int:
        return self.k + j


def _omv_gadget(gm: Graph, k: int) -> tuple[ExpanderizedGraph, int, int]:
    """Bipartite gadget with one L slot and one R slot kept free of V-edges.

    The spare R vertex (for s) and spare L vertex (for t) form a non-edge of
    X, so s and t sit on opposite sides and every s-t path has odd length.
    """
    n_side = max(MIN_SIDE, k + 4)
    a, b = list(range(k)), list(range(k, 2 * k))
    qa = [quota(gm.degree(v), Fraction(1)) for v in a]
    qb = [quota(gm.degree(v), Fraction(1)) for v in b]
    usable = n_side - 1
    d = ceil(max(sum(qa), sum(qb)) / usable)
    x = certified_expander(n_side, d)
    spare_l = n_side - 1
    taken = {x.neighbor(spare_l, i) for i in range(x.degree)}
    free_r = [r for r in range(n_side) if r not in taken]
    if not free_r:
        from .errors import AnchorUnavailable

        raise AnchorUnavailable("expander X has no non-edge at the spare L slot")
    spare_r = free_r[0]
    l_order = [s for s in range(n_side) if s != spare_l]
    r_order = [s for s in range(n_side) if s != spare_r]
    sa, _ = round_robin(qa, usable)
    sb, _ = round_robin(qb, usable)
    n = 2 * k
    out = gm.copy()
    out.add_vertices(2 * n_side)
    labels = ["A"] * k + ["B"] * k + ["L"] * n_side + ["R"] * n_side
    alloc = []
    for v, ss in zip(a, sa):
        for s in ss:
            out.insert_edge(v, n + l_order[s])
        alloc.append([n + l_order[s] for s in ss])
    for v, ss in zip(b, sb):
        for s in ss:
            out.insert_edge(v, n + n_side + r_order[s])
        alloc.append([n + n_side + r_order[s] for s in ss])
    for p, r in x.edges():
        out.insert_edge(n + p, n + n_side + r)
    side = range(n, n + 2 * n_side)
    alpha = measured_alpha(out, side, x.degree)
    claim = min(x.phi / 10, Fraction(1, 5))
    eg = ExpanderizedGraph(out, labels, n, n_side, x, Fraction(1), alpha, claim, alloc,
                           "bipartite", parts=(a, b))
    return eg, n + n_side + spare_r, n + spare_l


def omv_build(matrix) -> OmvInstance:
    mat = np.asarray(matrix, dtype=np.int64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 2:
        raise InvalidInput("matrix must be k x k with k >= 2")
    if not np.isin(mat, (0, 1)).all():
        raise InvalidInput("matrix entries must be 0 or 1")
    k = mat.shape[0]
    gm = Graph(2 * k, [(i, k + j) for i in range(k) for j in range(k) if mat[i, j]])
    eg, x_r, y_l = _omv_gadget(gm, k)
    out = eg.graph.copy()
    labels = list(eg.labels) + ["s", "t"]
    s = out.n
    t = s + 1
    out.add_vertices(2)
    out.insert_edge(s, x_r)
    out.insert_edge(t, y_l)
    return OmvInstance(mat, out, labels, eg, s, t, (x_r, y_l), [0] * k, [0] * k)


def omv_query(inst: OmvInstance, u, v) -> tuple[str, list]:
    """Swap in query vectors ``u``, ``v`` and classify dist(s, t)."""
    from .dynamic import UpdateEvent
    from .oracles import oracle_distance

    k = inst.k
    u, v = [int(x) for x in u], [int(x) for x in v]
    if len(u) != k or len(v) != k or any(x not in (0, 1) for x in u + v):
        raise InvalidInput(f"query vectors must be 0/1 of length {k}")
    g = inst.graph
    events = []
    for i in range(k):
        if u[i] and not inst.u[i]:
            g.insert_edge(inst.s, inst.a(i))
            events.append(UpdateEvent("+", inst.s, inst.a(i), "gadget"))
    for j in range(k):
        if v[j] and not inst.v[j]:
            g.insert_edge(inst.t, inst.b(j))
            events.append(UpdateEvent("+", inst.t, inst.b(j), "gadget"))
    for i in range(k):
        if inst.u[i] and not u[i]:
            g.delete_edge(inst.s, inst.a(i))
            events.append(UpdateEvent("-", inst.s, inst.a(i), "gadget"))
    for j in range(k):
        if inst.v[j] and not v[j]:
            g.delete_edge(inst.t, inst.b(j))
            events.append(UpdateEvent("-", inst.t, inst.b(j), "gadget"))
    inst.u, inst.v = u, v
    inst.events.extend(events)
    dist = oracle_distance(g, inst.s, inst.t)
    if dist == 3:
        return "dist3", events
    if dist < 5:
        raise AssertionError(f"dist(s,t) = {dist} breaks the 3-vs-5 gap")
    return "dist_ge_5", events


def boolean_product(mat, u, v) -> int:
    return int(np.asarray(u) @ np.asarray(mat) @ np.asarray(v) > 0)


def k_cliques_in_v(eg: ExpanderizedGraph, k: int) -> bool:
    """Every k-clique of the output has at least k-1 vertices in V."""
    g = eg.graph
    n = eg.n_orig

    def extend(clique, cands):
        if len(clique) == k:
            return sum(1 for w in clique if w < n) >= k - 1
        for w in sorted(cands):
            if clique and w < clique[-1]:
                continue
            if not extend(clique + [w], cands & g.adj[w]):
                return False
        return True

    return all(extend([v], set(w for w in g.adj[v] if w > v)) for v in range(g.n))


__all__ = [name for name in dir() if name.startswith(("wter_", "omv_", "build_", "hitting_"))] + [
    "SolutionMap", "OmvInstance", "gadget_checks", "max_cut_structure_ok", "dynamic_densest_check",
    "bpm_output_parts", "vertex_cover_map", "f_eps", "boolean_product", "k_cliques_in_v",
    "densest_margin", "max_cut_side_size",
]
