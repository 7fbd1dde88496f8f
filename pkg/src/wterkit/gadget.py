"""Static core gadget: plain, blowup/conductance tradeoff, and bipartite.

Vertex layout of every output: the input vertices keep ids ``0..n-1``,
``L`` occupies ``n..n+N-1`` and ``R`` occupies ``n+N..n+2N-1``. Reductions
that add further vertices append them after ``R`` and label them ``aux``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .errors import AllocationInfeasible, CertificationFailed, InvalidInput, NotBipartite
from .expander import BipartiteExpander, build_bipartite_expander
from .graph import Graph

MIN_EXPANDER_DEGREE = 3
MIN_SIDE = 4


@dataclass(frozen=True)
class GadgetParams:
    eps: Fraction = Fraction(1)
    delta: Fraction = Fraction(1)
    mode: str = "plain"

    def __post_init__(self):
        if self.mode not in ("plain", "tradeoff", "bipartite"):
            raise InvalidInput(f"unknown gadget mode {self.mode!r}")
        if self.mode in ("plain", "bipartite") and (self.eps != 1 or self.delta != 1):
            raise InvalidInput(f"{self.mode} mode requires eps = delta = 1")
        if not (0 < self.eps <= self.delta <= 1):
            raise InvalidInput("need 0 < eps <= delta <= 1")


@dataclass
class ExpanderizedGraph:
    graph: Graph
    labels: list[str]
    n_orig: int
    n_side: int
    expander: BipartiteExpander
    eps: Fraction
    alpha: Fraction
    conductance_claim: Fraction
    allocation: list[list[int]]
    mode: str = "plain"
    parts: tuple[list[int], list[int]] | None = None
    extra: dict = field(default_factory=dict)
    # first L id when extra vertices sit between V and L
    l_start: int | None = None

    @property
    def l_base(self) -> int:
        return self.n_orig if self.l_start is None else self.l_start

    @property
    def expander_degree(self) -> int:
        return self.expander.degree

    @property
    def cert_phi(self) -> Fraction:
        return self.expander.phi

    @property
    def l_vertices(self) -> range:
        return range(self.l_base, self.l_base + self.n_side)

    @property
    def r_vertices(self) -> range:
        return range(self.l_base + self.n_side, self.l_base + 2 * self.n_side)

    def l_id(self, slot: int) -> int:
        return self.l_base + slot

    def r_id(self, slot: int) -> int:
        return self.l_base + self.n_side + slot

    @property
    def blowup_vertices(self) -> int:
        return self.graph.n - self.n_orig

    def report(self) -> dict:
        g = self.graph
        m_orig = sum(1 for u, v in g.edges() if u < self.n_orig and v < self.n_orig)
        return {
            "mode": self.mode,
            "N": self.n_side,
            "d_X": self.expander_degree,
            "phi_X": _frac_json(self.cert_phi),
            "alpha": _frac_json(self.alpha),
            "eps": _frac_json(self.eps),
            "conductance_claim": _frac_json(self.conductance_claim),
            "blowup_vertices": self.blowup_vertices,
            "blowup_edges": g.m - m_orig,
            "labels": list(self.labels),
            "certificate": self.expander.certificate.to_json(),
        }


def _frac_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator, "float": float(x)}


def quota(deg: int, eps: Fraction) -> int:
    """Number of L-neighbors allocated to a vertex of degree ``deg``."""
    return ceil(eps * deg) + 3


def round_robin(quotas: list[int], n_side: int, start: int = 0) -> tuple[list[list[int]], int]:
    """Hand out consecutive slots of a circular order over ``0..n_side-1``.

    Returns the per-vertex slot lists and the pointer after the pass.
    """
    if quotas and max(quotas) > n_side:
        raise AllocationInfeasible(
            f"a vertex needs {max(quotas)} distinct slots but N = {n_side}")
    out = []
    ptr = start
    for q in quotas:
        out.append([(ptr + i) % n_side for i in range(q)])
        ptr = (ptr + q) % n_side
    return out, ptr


def round_robin_allocate(g: Graph, n_side: int, eps: Fraction = Fraction(1)) -> list[tuple[int, int]]:
    """``(v, slot)`` pairs for a single circular pass over ``L``."""
    slots, _ = round_robin([quota(g.degree(v), eps) for v in range(g.n)], n_side)
    return [(v, s) for v, ss in enumerate(slots) for s in ss]


def certified_expander(n_side: int, degree: int) -> BipartiteExpander:
    """Build X, stepping the degree up if certification fails at ``degree``.

    A larger degree keeps every hypothesis of the conductance argument (the
    expander degree only needs to dominate the V-side degrees in L).
    """
    d = max(MIN_EXPANDER_DEGREE, degree)
    while True:
        try:
            return build_bipartite_expander(n_side, d)
        except CertificationFailed:
            if d >= n_side:
                raise
            d += 1


def _assemble(g: Graph, n_side: int, l_slots: list[list[int]], r_slots: list[list[int]] | None,
              x: BipartiteExpander) -> tuple[Graph, list[str]]:
    n = g.n
    out = g.copy()
    out.add_vertices(2 * n_side)
    for v, ss in enumerate(l_slots):
        for s in ss:
            out.insert_edge(v, n + s)
    if r_slots is not None:
        for v, ss in enumerate(r_slots):
            for s in ss:
                out.insert_edge(v, n + n_side + s)
    for a, b in x.edges():
        out.insert_edge(n + a, n + n_side + b)
    labels = ["V"] * n + ["L"] * n_side + ["R"] * n_side
    return out, labels


def measured_alpha(out: Graph, l_vertices, d_x: int) -> Fraction:
    """Smallest α with every L degree in ``[d_X, α·d_X]``."""
    return Fraction(max(out.degree(v) for v in l_vertices), d_x)


def build_core_gadget(g: Graph, params: GadgetParams = GadgetParams()) -> ExpanderizedGraph:
    if params.mode == "bipartite":
        return build_bipartite_core_gadget(g)
    if params.mode == "tradeoff":
        return build_tradeoff_gadget(g, params.eps, params.delta)
    n = g.n
    n_side = max(MIN_SIDE, n + 2)
    quotas = [quota(g.degree(v), Fraction(1)) for v in range(n)]
    slots, _ = round_robin(quotas, n_side)
    d = ceil(sum(quotas) / n_side)
    x = certified_expander(n_side, d)
    out, labels = _assemble(g, n_side, slots, None, x)
    alpha = measured_alpha(out, range(n, n + n_side), x.degree)
    claim = min(x.phi / 10, Fraction(1, 5))
    return ExpanderizedGraph(out, labels, n, n_side, x, Fraction(1), alpha, claim,
                             [[n + s for s in ss] for ss in slots], "plain")


def build_tradeoff_gadget(g: Graph, eps: Fraction, delta: Fraction) -> ExpanderizedGraph:
    eps, delta = Fraction(eps), Fraction(delta)
    GadgetParams(eps, delta, "tradeoff")
    n = g.n
    n_side = max(MIN_SIDE, ceil(delta * n) + 2)
    return _tradeoff_with_side(g, eps, n_side, mode="tradeoff")


def _tradeoff_with_side(g: Graph, eps: Fraction, n_side: int, mode: str) -> ExpanderizedGraph:
    n = g.n
    quotas = [quota(g.degree(v), eps) for v in range(n)]
    slots, _ = round_robin(quotas, n_side)
    d = ceil(sum(quotas) / n_side) if quotas else MIN_EXPANDER_DEGREE
    x = certified_expander(n_side, d)
    out, labels = _assemble(g, n_side, slots, None, x)
    alpha = measured_alpha(out, range(n, n + n_side), x.degree)
    claim = x.phi * eps / (5 * alpha)
    return ExpanderizedGraph(out, labels, n, n_side, x, eps, alpha, claim,
                             [[n + s for s in ss] for ss in slots], mode)


def bipartition(g: Graph, parts=None) -> tuple[list[int], list[int]]:
    if parts is None:
        color = g.two_coloring()
        if color is None:
            raise NotBipartite("input graph contains an odd cycle")
        return ([v for v in range(g.n) if color[v] == 0],
                [v for v in range(g.n) if color[v] == 1])
    a, b = sorted(parts[0]), sorted(parts[1])
    if set(a) & set(b) or len(a) + len(b) != g.n:
        raise InvalidInput("parts must partition the vertex set")
    aset = set(a)
    for u, v in g.edges():
        if (u in aset) == (v in aset):
            raise NotBipartite(f"edge ({u}, {v}) lies inside one part")
    return a, b


def build_bipartite_core_gadget(g: Graph, parts=None) -> ExpanderizedGraph:
    """A-vertices attach to L, B-vertices to R; output sides are A∪R and B∪L."""
    a, b = bipartition(g, parts)
    n = g.n
    n_side = max(MIN_SIDE, max(len(a), len(b)) + 3)
    qa = [quota(g.degree(v), Fraction(1)) for v in a]
    qb = [quota(g.degree(v), Fraction(1)) for v in b]
    sa, _ = round_robin(qa, n_side)
    sb, _ = round_robin(qb, n_side)
    l_slots: list[list[int]] = [[] for _ in range(n)]
    r_slots: list[list[int]] = [[] for _ in range(n)]
    for v, ss in zip(a, sa):
        l_slots[v] = ss
    for v, ss in zip(b, sb):
        r_slots[v] = ss
    d = ceil(max(sum(qa), sum(qb)) / n_side)
    x = certified_expander(n_side, d)
    out, labels = _assemble(g, n_side, l_slots, r_slots, x)
    side_vertices = list(range(n, n + 2 * n_side))
    alpha = measured_alpha(out, side_vertices, x.degree)
    claim = min(x.phi / 10, Fraction(1, 5))
    alloc = [[n + s for s in l_slots[v]] + [n + n_side + s for s in r_slots[v]] for v in range(n)]
    return ExpanderizedGraph(out, labels, n, n_side, x, Fraction(1), alpha, claim, alloc,
                             "bipartite", parts=(a, b))


def output_sides(eg: ExpanderizedGraph) -> tuple[list[int], list[int]]:
    """The two color classes ``A ∪ R`` and ``B ∪ L`` of a bipartite gadget."""
    a, b = eg.parts
    return sorted(a) + list(eg.r_vertices), sorted(b) + list(eg.l_vertices)


def check_preconditions(eg: ExpanderizedGraph, g: Graph) -> dict[str, bool]:
    """The three hypotheses of the robust conductance argument, plus embedding.

    For the bipartite gadget ``L ∪ R`` plays the role of ``L``.
    """
    out = eg.graph
    n = eg.n_orig
    side = set(eg.l_vertices)
    if eg.mode == "bipartite":
        side |= set(eg.r_vertices)
    d = eg.expander_degree
    neighbors_ok = all(
        len(out.adj[v] & side) >= eg.eps * g.degree(v) + 1 for v in range(n))
    degs = [out.degree(w) for w in side]
    degrees_ok = min(degs) >= d and max(degs) <= eg.alpha * d
    expander_ok = eg.expander.certificate.meets and all(
        out.has_edge(eg.l_id(a), eg.r_id(b)) for a, b in eg.expander.edges())
    embed_ok = out.induced(range(n)) == g
    return {"neighbor_fraction": neighbors_ok, "l_degree_range": degrees_ok,
            "certified_expander": expander_ok, "embedding": embed_ok}
