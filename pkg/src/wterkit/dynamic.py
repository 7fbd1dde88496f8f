"""Fully dynamic core gadget.

The state keeps ``G`` and ``G_exp`` in lockstep and records every edge
change it makes to ``G_exp`` as an :class:`UpdateEvent`. Replaying the log
on the initial ``G_exp`` reproduces the current one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Callable

from .errors import CapacityExhausted
from .expander import BipartiteExpander
from .gadget import MIN_SIDE, _tradeoff_with_side, certified_expander, quota, round_robin
from .graph import Graph

AMORT_BOUND = 40


@dataclass(frozen=True)
class UpdateEvent:
    op: str          # "+" or "-"
    u: int
    v: int
    layer: str       # "G", "V-L", "expander", "gadget"

    def line(self) -> str:
        return f"{self.op} {self.u} {self.v}"


class DegreeBuckets:
    """L vertices bucketed by degree with O(1) increment/decrement.

    Tracks the minimum and maximum degree; both move by at most one per
    change, so they are maintained without scanning.
    """

    def __init__(self, degrees: dict[int, int]):
        self.deg = dict(degrees)
        self.buckets: dict[int, set[int]] = {}
        for x, d in self.deg.items():
            self.buckets.setdefault(d, set()).add(x)
        self.lo = min(self.buckets)
        self.hi = max(self.buckets)

    def _move(self, x: int, new: int) -> None:
        old = self.deg[x]
        bucket = self.buckets[old]
        bucket.discard(x)
        self.buckets.setdefault(new, set()).add(x)
        self.deg[x] = new
        if not bucket:
            del self.buckets[old]
            if old == self.lo:
                self.lo = min(new, old + 1) if new > old else new
            if old == self.hi:
                self.hi = max(new, old - 1) if new < old else new
        self.lo = min(self.lo, new)
        self.hi = max(self.hi, new)

    def increment(self, x: int) -> None:
        self._move(x, self.deg[x] + 1)

    def decrement(self, x: int) -> None:
        self._move(x, self.deg[x] - 1)

    def ascending(self):
        """Vertices in (degree, id) order; each step is one successor query."""
        d = self.lo
        while d <= self.hi:
            for x in sorted(self.buckets.get(d, ())):
                yield x
            d += 1


@dataclass
class Counters:
    updates_in: int = 0
    insertions_in: int = 0
    events_out: int = 0
    update_calls: int = 0
    balance_calls: int = 0
    recompute_calls: int = 0
    successor_queries: int = 0
    # bumped by every BALANCE and RECOMPUTE
    epoch: int = 0
    # (epoch, insertion counter) whenever UPDATE raised the maximum L degree
    max_increase_at: list[tuple[int, int]] = field(default_factory=list)
    # insertion counter values at which BALANCE ran
    balance_at: list[int] = field(default_factory=list)


class DynamicExpanderState:
    """Live state of the dynamic gadget; see :func:`dyn_init`."""

    def __init__(self, g0: Graph, eps: Fraction = Fraction(1),
                 on_event: Callable[[DynamicExpanderState, UpdateEvent], None] | None = None):
        self.eps = Fraction(eps)
        self.n = g0.n
        self.n_side = max(MIN_SIDE, self.n + 2)
        self.g = g0.copy()
        static = _tradeoff_with_side(self.g, self.eps, self.n_side, mode="plain")
        self.gexp = static.graph
        self.labels = static.labels
        self.expander: BipartiteExpander = static.expander
        self.m0 = g0.m
        self.m_checkpoint = g0.m
        self.initial = self.gexp.copy()
        self.events: list[UpdateEvent] = []
        self.counters = Counters(events_out=self.gexp.m)
        self.on_event = on_event
        self._l_lo = self.n
        self._l_hi = self.n + self.n_side
        self.deg_l = [self._count_l(v) for v in range(self.n)]
        self.l_index = DegreeBuckets({x: self.gexp.degree(x) for x in range(self._l_lo, self._l_hi)})
        # the expander whose edges are guaranteed present; swapped mid-RECOMPUTE
        self.active = self.expander
        # X' while a RECOMPUTE is in flight
        self.incoming: BipartiteExpander | None = None

    # -- bookkeeping ------------------------------------------------------

    @property
    def d_x(self) -> int:
        return self.expander.degree

    def reference_degrees(self) -> tuple[int, ...]:
        """Expander degrees the L-degree range may be measured against.

        Outside RECOMPUTE this is just ``d_X``. While X is being replaced by
        X', both degrees qualify: the fully present one supplies the edge
        expansion, and the two differ by at most a constant factor.
        """
        if self.incoming is None:
            return (self.expander.degree,)
        return (self.expander.degree, self.incoming.degree)

    def _l_range_ok(self) -> bool:
        lo, hi = self.l_index.lo, self.l_index.hi
        return any(d <= lo and hi <= 4 * d for d in self.reference_degrees())

    def is_l(self, x: int) -> bool:
        return self._l_lo <= x < self._l_hi

    def l_id(self, slot: int) -> int:
        return self.n + slot

    def r_id(self, slot: int) -> int:
        return self.n + self.n_side + slot

    def _count_l(self, v: int) -> int:
        return sum(1 for w in self.gexp.adj[v] if self.is_l(w))

    def _emit(self, op: str, u: int, v: int, layer: str) -> None:
        if op == "+":
            self.gexp.insert_edge(u, v)
            step = 1
        else:
            self.gexp.delete_edge(u, v)
            step = -1
        for a, b in ((u, v), (v, u)):
            if self.is_l(a):
                if step > 0:
                    self.l_index.increment(a)
                else:
                    self.l_index.decrement(a)
                if b < self.n:
                    self.deg_l[b] += step
        ev = UpdateEvent(op, u, v, layer)
        self.events.append(ev)
        self.counters.events_out += 1
        if self.on_event is not None:
            self.on_event(self, ev)

    def _expander_edges(self, x: BipartiteExpander) -> list[tuple[int, int]]:
        return [(self.l_id(a), self.r_id(b)) for a, b in x.edges()]

    def _allocation(self) -> list[tuple[int, int]]:
        quotas = [quota(self.g.degree(v), self.eps) for v in range(self.n)]
        slots, _ = round_robin(quotas, self.n_side)
        return [(v, self.l_id(s)) for v, ss in enumerate(slots) for s in ss]

    def _current_vl(self) -> set[tuple[int, int]]:
        return {(v, w) for v in range(self.n) for w in self.gexp.adj[v] if self.is_l(w)}

    # -- procedures -------------------------------------------------------

    def needs_update(self, v: int) -> bool:
        return self.eps * self.g.degree(v) >= 2 * self.deg_l[v]

    def unbalanced(self) -> bool:
        return self.l_index.hi >= 2 * self.l_index.lo

    def proc_update(self, v: int) -> list[UpdateEvent]:
        start = len(self.events)
        k = self.deg_l[v]
        need = quota(self.g.degree(v), self.eps) - k
        nbrs = self.gexp.adj[v]
        picked = []
        hi_before = self.l_index.hi
        for x in self.l_index.ascending():
            self.counters.successor_queries += 1
            if x in nbrs:
                continue
            picked.append(x)
            if len(picked) == need:
                break
        if len(picked) < need:
            raise CapacityExhausted(f"only {len(picked)} of {need} L-candidates for vertex {v}")
        for x in picked:
            self._emit("+", v, x, "V-L")
        self.counters.update_calls += 1
        if self.l_index.hi > hi_before:
            self.counters.max_increase_at.append((self.counters.epoch, self.counters.insertions_in))
        return self.events[start:]

    def _replace_vl(self) -> None:
        new = self._allocation()
        current = self._current_vl()
        new_set = set(new)
        for v, x in new:
            if (v, x) not in current:
                self._emit("+", v, x, "V-L")
        for v, x in sorted(current - new_set):
            self._emit("-", v, x, "V-L")

    def proc_balance(self) -> list[UpdateEvent]:
        start = len(self.events)
        self._replace_vl()
        self.counters.balance_calls += 1
        self.counters.epoch += 1
        self.counters.balance_at.append(self.counters.insertions_in)
        return self.events[start:]

    def proc_recompute(self) -> list[UpdateEvent]:
        start = len(self.events)
        quotas = [quota(self.g.degree(v), self.eps) for v in range(self.n)]
        new_x = certified_expander(self.n_side, ceil(sum(quotas) / self.n_side))
        self.incoming = new_x
        old_edges = set(self._expander_edges(self.expander))
        new_edges = self._expander_edges(new_x)
        new_set = set(new_edges)
        for e in new_edges:
            if e not in old_edges:
                self._emit("+", *e, "expander")
        self.active = new_x
        for e in sorted(old_edges - new_set):
            self._emit("-", *e, "expander")
        self._replace_vl()
        self.expander = new_x
        self.incoming = None
        self.m_checkpoint = self.g.m
        self.counters.recompute_calls += 1
        self.counters.epoch += 1
        return self.events[start:]

    # -- public updates ---------------------------------------------------

    def insert(self, u: int, v: int) -> list[UpdateEvent]:
        self.g.insert_edge(u, v)
        start = len(self.events)
        self.counters.updates_in += 1
        self.counters.insertions_in += 1
        self._emit("+", u, v, "G")
        if self.g.m >= 2 * self.m_checkpoint + self.n:
            self.proc_recompute()
            return self.events[start:]
        for x in (v, u):
            if not self.needs_update(x):
                continue
            self.proc_update(x)
            if self.unbalanced():
                self.proc_balance()
        return self.events[start:]

    def delete(self, u: int, v: int) -> list[UpdateEvent]:
        self.g.delete_edge(u, v)
        start = len(self.events)
        self.counters.updates_in += 1
        self._emit("-", u, v, "G")
        m = self.g.m
        if self.n <= m and 2 * m <= self.m_checkpoint:
            self.proc_recompute()
        return self.events[start:]

    # -- inspection -------------------------------------------------------

    def amortization_report(self) -> dict:
        c = self.counters
        credit = c.updates_in + self.m0 + self.n
        ratio = Fraction(c.events_out, credit) if credit else Fraction(0)
        return {
            "total_updates_in": c.updates_in,
            "total_events_out": c.events_out,
            "credit": credit,
            "ratio": float(ratio),
            "ratio_num": ratio.numerator,
            "ratio_den": ratio.denominator,
            "bound": AMORT_BOUND,
            "violation": ratio > AMORT_BOUND,
            "update_calls": c.update_calls,
            "balance_calls": c.balance_calls,
            "recompute_calls": c.recompute_calls,
            "successor_queries": c.successor_queries,
        }

    def check_invariants(self) -> dict[str, bool]:
        """Conditions that keep every intermediate ``G_exp`` an expander."""
        gexp, g = self.gexp, self.g
        lazy = all(self.deg_l[v] >= max(3, ceil(self.eps * g.degree(v) / 2)) for v in range(self.n))
        robust = all(self.deg_l[v] >= self.eps * g.degree(v) / 5 + 1 for v in range(self.n))
        l_range = self._l_range_ok()
        active = all(gexp.has_edge(a, b) for a, b in self._expander_edges(self.active))
        return {"lazy_degree": lazy, "robust_fraction": robust,
                "l_degree_range": l_range, "active_expander": active}

    def check_event(self, ev: UpdateEvent) -> dict[str, bool]:
        """Incremental form of :meth:`check_invariants` for the last event.

        Only the event's endpoints change their degrees, the L-degree range
        is read off the index, and the active expander can only lose an edge
        through an expander-layer deletion.
        """
        lazy = True
        for x in (ev.u, ev.v):
            if x < self.n:
                dg = self.g.degree(x)
                lazy &= self.deg_l[x] >= max(3, ceil(self.eps * dg / 2))
        l_range = self._l_range_ok()
        active = True
        if ev.op == "-" and ev.layer == "expander":
            a, b = ev.u - self.n, ev.v - self.n - self.n_side
            active = self.active.matchings and all(p[a] != b for p in self.active.matchings)
        return {"lazy_degree": lazy, "l_degree_range": l_range, "active_expander": bool(active)}

    def increase_gaps(self) -> list[int]:
        """Insertions between consecutive rises of the max L degree, per epoch.

        The first rise of each epoch is free; the returned gaps cover the rest.
        """
        gaps = []
        prev = None
        for epoch, at in self.counters.max_increase_at:
            if prev is not None and prev[0] == epoch:
                gaps.append(at - prev[1])
            prev = (epoch, at)
        return gaps

    def static_equivalent(self) -> Graph:
        return _tradeoff_with_side(self.g, self.eps, self.n_side, mode="plain").graph


def dyn_init(g0: Graph, eps: Fraction = Fraction(1), on_event=None) -> DynamicExpanderState:
    return DynamicExpanderState(g0, eps, on_event)


def dyn_insert(st: DynamicExpanderState, u: int, v: int) -> list[UpdateEvent]:
    return st.insert(u, v)


def dyn_delete(st: DynamicExpanderState, u: int, v: int) -> list[UpdateEvent]:
    return st.delete(u, v)


def replay(initial: Graph, events) -> Graph:
    g = initial.copy()
    for ev in events:
        if ev.op == "+":
            g.insert_edge(ev.u, ev.v)
        else:
            g.delete_edge(ev.u, ev.v)
    return g


def format_events(events) -> str:
    return "".join(ev.line() + "\n" for ev in events)


def parse_updates(text: str) -> list[tuple[str, int, int]]:
    from .errors import ParseError

    out = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("+", "-"):
            raise ParseError(f"expected '+ u v' or '- u v', got {line!r}", lineno)
        try:
            out.append((parts[0], int(parts[1]), int(parts[2])))
        except ValueError:
            raise ParseError(f"non-integer endpoint in {line!r}", lineno) from None
    return out
