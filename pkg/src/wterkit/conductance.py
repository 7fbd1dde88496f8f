"""Cut arithmetic, exact expansion by enumeration, and spectral bounds.

Exact values are :class:`fractions.Fraction`. Spectral values are floats
that have already been pushed in the conservative direction by the
eigensolver residual, so they can be compared directly against thresholds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numba
import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .errors import InvalidCut, InvalidInput, TooLargeForExact
from .graph import Graph

EXACT_MAX_VERTICES = 26
DENSE_MAX = 2048

_MODE_CONDUCTANCE = 0
_MODE_EXPANSION = 1


@dataclass
class Certificate:
    """Evidence that a graph meets (or misses) an expansion threshold.

    ``value`` is a Fraction for exact certificates. Spectral certificates
    also carry a Fraction, obtained by rounding the float bound down, so that
    downstream claims stay rational.
    """

    kind: str
    value: Fraction
    threshold: Fraction | None = None
    witness_cut: list[int] | None = None
    eigenvalue: float | None = None
    residual: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def meets(self) -> bool:
        return self.threshold is None or self.value >= self.threshold

    def to_json(self) -> dict:
        out = {"kind": self.kind,
               "value_num": self.value.numerator,
               "value_den": self.value.denominator}
        if self.kind == "spectral":
            out["value_float"] = float(self.value)
            out["eigenvalue"] = self.eigenvalue
            out["residual"] = self.residual
        if self.threshold is not None:
            out["threshold_num"] = self.threshold.numerator
            out["threshold_den"] = self.threshold.denominator
            out["meets"] = self.meets
        if self.witness_cut is not None:
            out["witness_cut"] = list(self.witness_cut)
        out.update(self.extra)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Certificate:
        thr = None
        if "threshold_num" in obj:
            thr = Fraction(obj["threshold_num"], obj["threshold_den"])
        if "value_num" in obj:
            value = Fraction(obj["value_num"], obj["value_den"])
        else:
            value = round_down(obj["value_float"])
        return cls(obj["kind"], value, thr, obj.get("witness_cut"),
                   obj.get("eigenvalue"), obj.get("residual"))


def round_down(x: float, den: int = 10**6) -> Fraction:
    """Largest multiple of ``1/den`` not exceeding ``x``."""
    return Fraction(math.floor(x * den), den)


def _validate_cut(g: Graph, side: Iterable[int]) -> set[int]:
    s = set(side)
    if not s or len(s) >= g.n:
        raise InvalidCut("cut side must be a nonempty proper subset")
    if any(not (0 <= v < g.n) for v in s):
        raise InvalidCut("cut contains out-of-range vertex")
    return s


def cut_conductance(g: Graph, side: Iterable[int]) -> Fraction:
    s = _validate_cut(g, side)
    vol_s = g.volume(s)
    den = min(vol_s, 2 * g.m - vol_s)
    if den == 0:
        return Fraction(0)
    return Fraction(g.boundary(s), den)


def cut_edge_expansion(g: Graph, side: Iterable[int]) -> Fraction:
    """``e(S, V∖S) / |S|`` for the smaller of the two sides."""
    s = _validate_cut(g, side)
    return Fraction(g.boundary(s), min(len(s), g.n - len(s)))


@numba.njit(cache=True)
def _gray_min(indptr, indices, deg, n, mode):
    # Walks 2^(n-1) - 1 subsets of {0..n-2} in Gray-code order; vertex n-1
    # stays outside, so each complementary pair is visited once.
    total_vol = 0
    for v in range(n):
        total_vol += deg[v]
    in_s = np.zeros(n, dtype=np.bool_)
    cut = 0
    vol = 0
    size = 0
    best_num = -1
    best_den = 1
    best_code = 0
    limit = np.int64(1) << (n - 1)
    for i in range(1, limit):
        # bit flipped between gray(i-1) and gray(i) is the lowest set bit of i
        v = 0
        j = i
        while (j & 1) == 0:
            j >>= 1
            v += 1
        t = 0
        for k in range(indptr[v], indptr[v + 1]):
            if in_s[indices[k]]:
                t += 1
        if in_s[v]:
            in_s[v] = False
            cut -= deg[v] - 2 * t
            vol -= deg[v]
            size -= 1
        else:
            in_s[v] = True
            cut += deg[v] - 2 * t
            vol += deg[v]
            size += 1
        if mode == 0:
            den = min(vol, total_vol - vol)
            if den == 0:
                num = 0
                den = 1
            else:
                num = cut
        else:
            den = min(size, n - size)
            num = cut
        if best_num < 0 or num * best_den < best_num * den:
            best_num = num
            best_den = den
            best_code = i ^ (i >> 1)
            if num == 0:
                break
    return best_num, best_den, best_code


def _enumerate_min(g: Graph, mode: int) -> tuple[Fraction, list[int]]:
    n = g.n
    if n < 2 or n > EXACT_MAX_VERTICES:
        raise TooLargeForExact(f"exact enumeration needs 2 <= n <= {EXACT_MAX_VERTICES}, got {n}")
    indptr, indices = g.to_csr()
    deg = np.diff(indptr)
    num, den, code = _gray_min(indptr, indices, deg, n, mode)
    side = [v for v in range(n - 1) if (code >> v) & 1]
    return Fraction(int(num), int(den)), side


def exact_conductance(g: Graph) -> tuple[Fraction, list[int]]:
    """Minimum conductance over all nonempty proper cuts, with a minimizer."""
    return _enumerate_min(g, _MODE_CONDUCTANCE)


def exact_edge_expansion(g: Graph) -> tuple[Fraction, list[int]]:
    """Minimum of ``e(S, V∖S)/|S|`` over nonempty ``S`` with ``|S| <= n/2``.

    The returned witness is the enumerated side; its complement may be the
    smaller one.
    """
    return _enumerate_min(g, _MODE_EXPANSION)


def _normalized_adjacency(g: Graph):
    deg = g.degrees().astype(float)
    inv = 1.0 / np.sqrt(deg)
    rows, cols = [], []
    for u, v in g.edges():
        rows += [u, v]
        cols += [v, u]
    a = scipy.sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))
    d = scipy.sparse.diags(inv)
    return d @ a @ d


def spectral_conductance_lower_bound(g: Graph) -> float:
    """Cheeger lower bound ``λ₂/2`` from the normalized Laplacian.

    λ₂ is reduced by the eigen-residual and a backward-error margin before
    halving. Disconnected graphs (and graphs with isolated vertices) get 0.
    """
    n = g.n
    if n < 2 or g.m == 0 or not g.is_connected():
        return 0.0
    m_norm = _normalized_adjacency(g)
    if n <= DENSE_MAX:
        lap = np.eye(n) - m_norm.toarray()
        w, vecs = scipy.linalg.eigh(lap, subset_by_index=[1, 1])
        lam2 = float(w[0])
        x = vecs[:, 0]
        resid = float(np.linalg.norm(lap @ x - lam2 * x))
        margin = 4.0 * n * np.finfo(float).eps * 2.0
    else:
        # largest two of the normalized adjacency give 1 - λ₁ and 1 - λ₂
        w, vecs = scipy.sparse.linalg.eigsh(m_norm, k=2, which="LA", tol=1e-10)
        order = np.argsort(w)
        mu2 = float(w[order[0]])
        x = vecs[:, order[0]]
        lam2 = 1.0 - mu2
        resid = float(np.linalg.norm(m_norm @ x - mu2 * x))
        margin = 1e-9
    return max(0.0, (lam2 - resid - margin) / 2.0)


def _check_bipartite_regular(g: Graph, left: Sequence[int], right: Sequence[int]) -> int:
    lset, rset = set(left), set(right)
    if len(lset) != len(left) or len(rset) != len(right) or lset & rset:
        raise InvalidInput("left/right must be disjoint vertex lists")
    if len(lset) + len(rset) != g.n:
        raise InvalidInput("bipartition must cover every vertex")
    degs = {g.degree(v) for v in range(g.n)}
    if len(degs) != 1:
        raise InvalidInput("graph is not regular")
    for u in lset:
        if any(w in lset for w in g.adj[u]):
            raise InvalidInput("edge inside the left side")
    for u in rset:
        if any(w in rset for w in g.adj[u]):
            raise InvalidInput("edge inside the right side")
    return degs.pop()


def biadjacency(g: Graph, left: Sequence[int], right: Sequence[int]) -> np.ndarray:
    col = {v: j for j, v in enumerate(right)}
    b = np.zeros((len(left), len(right)))
    for i, u in enumerate(left):
        for w in g.adj[u]:
            b[i, col[w]] = 1.0
    return b


def second_singular_value_bipartite(g: Graph, left: Sequence[int], right: Sequence[int]) -> float:
    """Upper bound on σ₂ of the biadjacency matrix of a regular bipartite graph."""
    _check_bipartite_regular(g, left, right)
    b = biadjacency(g, left, right)
    return second_singular_value(b)


def second_singular_value(b: np.ndarray) -> float:
    n = b.shape[0]
    if n < 2:
        return 0.0
    if n <= DENSE_MAX:
        u, s, vt = np.linalg.svd(b)
        sigma2 = float(s[1])
        uu, vv = u[:, 1], vt[1]
        margin = 4.0 * n * np.finfo(float).eps * float(s[0])
    else:
        u, s, vt = scipy.sparse.linalg.svds(scipy.sparse.csr_matrix(b), k=2, tol=1e-10)
        order = np.argsort(s)
        sigma2 = float(s[order[0]])
        uu, vv = u[:, order[0]], vt[order[0]]
        margin = 1e-9
    resid = max(float(np.linalg.norm(b @ vv - sigma2 * uu)),
                float(np.linalg.norm(b.T @ uu - sigma2 * vv)))
    return sigma2 + resid + margin
