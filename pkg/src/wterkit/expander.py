"""Deterministic d-regular bipartite expanders given as unions of matchings.

Left vertex ``x`` and right vertex ``y`` are both numbered ``0..N-1``; the
``i``-th matching sends ``x`` to ``matchings[i][x]``. Matching 0 is the
identity. Degrees ``d >= N/2`` use consecutive translations (a circulant,
which is already a good expander at that density); sparser degrees use
permutations drawn from a fixed splitmix64 stream, repaired to be
pairwise disjoint. Either way the guarantee comes from the certificate,
not from the construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .conductance import (
    EXACT_MAX_VERTICES,
    Certificate,
    exact_edge_expansion,
    round_down,
    second_singular_value,
)
from .errors import CertificationFailed, InfeasibleDegree, InvalidIndex
from .graph import Graph

PHI_TARGET = Fraction(1, 20)
MAX_ROUNDS = 64

_MASK = (1 << 64) - 1


class _SplitMix64:
    def __init__(self, *key: int):
        s = 0x9E3779B97F4A7C15
        for k in key:
            s = (s * 0x100000001B3 ^ (k & _MASK)) & _MASK
        self.state = s

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next() % bound

    def permutation(self, n: int) -> list[int]:
        p = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            p[i], p[j] = p[j], p[i]
        return p


@dataclass(frozen=True)
class BipartiteExpander:
    side_size: int
    degree: int
    matchings: tuple[tuple[int, ...], ...]
    certificate: Certificate

    @property
    def phi(self) -> Fraction:
        """Certified constant: X is a ``phi * degree`` edge expander."""
        return self.certificate.value

    def neighbor(self, left_vertex: int, slot: int) -> int:
        if not (0 <= left_vertex < self.side_size and 0 <= slot < self.degree):
            raise InvalidIndex(f"neighbor({left_vertex}, {slot}) out of range")
        return self.matchings[slot][left_vertex]

    def edges(self):
        """``(left, right)`` pairs, slot-major."""
        for perm in self.matchings:
            yield from enumerate(perm)

    def as_graph(self) -> Graph:
        """Left side is ``0..N-1``, right side ``N..2N-1``."""
        n = self.side_size
        return Graph(2 * n, ((x, n + y) for x, y in self.edges()))

    def biadjacency(self) -> np.ndarray:
        b = np.zeros((self.side_size, self.side_size))
        for x, y in self.edges():
            b[x, y] = 1.0
        return b


def neighbor(x: BipartiteExpander, left_vertex: int, slot: int) -> int:
    return x.neighbor(left_vertex, slot)


def _circulant(n_side: int, degree: int, rnd: int) -> list[list[int]]:
    """Translations ``x + s``; round 0 takes consecutive shifts ``0..d-1``."""
    if rnd == 0:
        shifts = list(range(degree))
    else:
        rest = _SplitMix64(n_side, degree, rnd).permutation(n_side - 1)[:degree - 1]
        shifts = [0] + [s + 1 for s in rest]
    return [[(x + s) % n_side for x in range(n_side)] for s in shifts]


def _repair(perm: list[int], used: list[set[int]], rng: _SplitMix64) -> bool:
    """Swap entries of ``perm`` until ``perm[x] not in used[x]`` for all x."""
    n = len(perm)
    for _ in range(8 * n):
        bad = [x for x in range(n) if perm[x] in used[x]]
        if not bad:
            return True
        for x in bad:
            if perm[x] not in used[x]:
                continue
            start = rng.below(n)
            for k in range(n):
                y = (start + k) % n
                if y != x and perm[y] not in used[x] and perm[x] not in used[y]:
                    perm[x], perm[y] = perm[y], perm[x]
                    break
    return all(perm[x] not in used[x] for x in range(n))


def _random_matchings(n_side: int, degree: int, rnd: int) -> list[list[int]] | None:
    rng = _SplitMix64(n_side, degree, rnd)
    mats = [list(range(n_side))]
    used = [{x} for x in range(n_side)]
    while len(mats) < degree:
        perm = rng.permutation(n_side)
        if not _repair(perm, used, rng):
            return None
        mats.append(perm)
        for x, y in enumerate(perm):
            used[x].add(y)
    return mats


def certify_edge_expansion(x: BipartiteExpander | list, phi_target: Fraction = PHI_TARGET,
                           n_side: int | None = None, degree: int | None = None) -> Certificate:
    """Certify ``phi`` with X a ``phi*d`` edge expander.

    Exact enumeration when ``2N <= 26``; otherwise the bipartite Cheeger
    bound ``h >= (d - σ₂)/2`` with σ₂ an upper bound on the second singular
    value of the biadjacency matrix.
    """
    if isinstance(x, BipartiteExpander):
        mats, n_side, degree = x.matchings, x.side_size, x.degree
    else:
        mats = x
    g = Graph(2 * n_side, ((a, n_side + b) for perm in mats for a, b in enumerate(perm)))
    if 2 * n_side <= EXACT_MAX_VERTICES:
        h, side = exact_edge_expansion(g)
        return Certificate("exact", h / degree, phi_target, witness_cut=side)
    b = np.zeros((n_side, n_side))
    for perm in mats:
        b[np.arange(n_side), perm] = 1.0
    sigma2 = second_singular_value(b)
    value = max(Fraction(0), round_down((degree - sigma2) / (2 * degree)))
    return Certificate("spectral", value, phi_target, eigenvalue=sigma2,
                       residual=None)


@lru_cache(maxsize=256)
def build_bipartite_expander(n_side: int, degree: int,
                             phi_target: Fraction = PHI_TARGET) -> BipartiteExpander:
    if degree > n_side:
        raise InfeasibleDegree(f"degree {degree} exceeds side size {n_side}")
    if n_side < 4 or degree < 3:
        raise InfeasibleDegree(f"need N >= 4 and d >= 3, got N={n_side}, d={degree}")
    last = None
    for rnd in range(MAX_ROUNDS):
        if 2 * degree >= n_side:
            mats = _circulant(n_side, degree, rnd)
        else:
            mats = _random_matchings(n_side, degree, rnd)
            if mats is None:
                continue
        cert = certify_edge_expansion(mats, phi_target, n_side, degree)
        last = cert
        if cert.meets:
            frozen = tuple(tuple(p) for p in mats)
            return BipartiteExpander(n_side, degree, frozen, cert)
    raise CertificationFailed(
        f"no certified expander for N={n_side}, d={degree} after {MAX_ROUNDS} rounds"
        + (f" (best certificate {float(last.value):.4f})" if last else ""))


def expander_header(x: BipartiteExpander) -> str:
    return f"bipartite N={x.side_size} d={x.degree} phi={x.phi.numerator}/{x.phi.denominator}"
