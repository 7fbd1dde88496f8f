"""Command line entry point.

Exit codes: 0 ok, 2 parse error, 3 precondition or budget violation,
4 usage error (including unknown claim kinds). Reports are JSON with sorted
keys; the only run-dependent field is ``elapsed_s``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

import numpy as np

from . import oracles, wters
from .conductance import (
    EXACT_MAX_VERTICES,
    exact_conductance,
    exact_edge_expansion,
    round_down,
    second_singular_value,
    spectral_conductance_lower_bound,
)
from .dynamic import UpdateEvent, dyn_init, format_events, parse_updates, replay
from .errors import ParseError, UsageError, WterError
from .gadget import GadgetParams, build_core_gadget
from .graph import Graph, parse_edge_list, random_graph, random_graph_m, write_edge_list

PROBLEMS = ("max-cut", "densest", "densify", "matching", "bpm", "k-clique",
            "h-subgraph", "max-clique", "dominating-set")
ORACLES = ("max-cut", "densest", "matching", "vertex-cover", "dominating-set", "max-clique",
           "k-clique", "distance", "subgraph", "bpm", "conductance", "edge-expansion")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_graph(path: str) -> Graph:
    text = _read_text(path)
    try:
        return parse_edge_list(text)
    except ParseError as exc:
        err = ParseError(f"{path}: {exc}")
        err.line = exc.line
        raise err from None


def _sha256(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _fj(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator, "float": float(x)}


def _json_default(o):
    if isinstance(o, Fraction):
        return _fj(o)
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, (set, frozenset, range)):
        return sorted(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def _emit_report(report: dict, path: str | None, started: float) -> None:
    report["elapsed_s"] = round(time.perf_counter() - started, 3)
    text = dumps(report)
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_json(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(obj))


# -- expanderize ------------------------------------------------------------

def cmd_expanderize(args) -> int:
    t0 = time.perf_counter()
    g = _read_graph(args.input)
    params = GadgetParams(_frac(args.eps), _frac(args.delta), args.mode)
    eg = build_core_gadget(g, params)
    write_edge_list(eg.graph, args.output)
    report = {"command": "expanderize", "input_sha256": _sha256(args.input),
              "parameters": {"mode": args.mode, "eps": args.eps, "delta": args.delta}}
    report.update(eg.report())
    report["preconditions"] = _preconditions_from_labels(eg.graph, report)
    _emit_report(report, args.report, t0)
    return 0


# -- dynamize ---------------------------------------------------------------

def cmd_dynamize(args) -> int:
    t0 = time.perf_counter()
    g0 = _read_graph(args.input)
    updates = parse_updates(_read_text(args.updates))
    if args.check_every < 0:
        raise UsageError("--check-every must be non-negative")
    failures: list[dict] = []
    checked = [0]

    def hook(st, ev):
        checked[0] += 1
        res = st.check_event(ev)
        if not all(res.values()) and len(failures) < 20:
            failures.append({"event": ev.line(), "layer": ev.layer, "checks": res})

    st = dyn_init(g0, _frac(args.eps))
    if args.initial_out:
        write_edge_list(st.gexp, args.initial_out)
    if args.check_every:
        st.on_event = hook
    samples = []
    for i, (op, u, v) in enumerate(updates, start=1):
        try:
            if op == "+":
                st.insert(u, v)
            else:
                st.delete(u, v)
        except WterError as exc:
            raise type(exc)(f"update {i} ({op} {u} {v}): {exc}") from None
        if args.check_every and i % args.check_every == 0:
            full = st.check_invariants()
            samples.append({"step": i, "checks": full,
                            "spectral_conductance_lower_bound": round(
                                spectral_conductance_lower_bound(st.gexp), 9)})
    if args.emit:
        with open(args.emit, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(format_events(st.events))
    if args.final_out:
        write_edge_list(st.gexp, args.final_out)
    report = {
        "command": "dynamize",
        "input_sha256": _sha256(args.input),
        "updates_sha256": _sha256(args.updates),
        "parameters": {"eps": args.eps, "check_every": args.check_every},
        "n": st.n, "N": st.n_side, "d_X": st.expander.degree,
        "final_m": st.g.m, "final_m_exp": st.gexp.m,
        "amortization": st.amortization_report(),
        "checks": {"events_checked": checked[0], "event_failures": failures,
                   "samples": samples,
                   "ok": not failures and all(all(s["checks"].values()) and
                                              s["spectral_conductance_lower_bound"] > 0
                                              for s in samples)},
    }
    _emit_report(report, args.report, t0)
    return 0


# -- wter -------------------------------------------------------------------

def _gadget_report(eg) -> dict:
    out = {"N": eg.n_side, "d_X": eg.expander_degree, "phi_X": _fj(eg.cert_phi),
           "alpha": _fj(eg.alpha), "conductance_claim": _fj(eg.conductance_claim),
           "vertices": eg.graph.n, "edges": eg.graph.m, "labels": list(eg.labels)}
    for k, v in sorted(eg.extra.items()):
        if k in ("F_L", "F_R", "pendants", "hosts"):
            out[k] = [min(v), max(v)] if v else []
        else:
            out[k] = v
    return out


def cmd_wter(args) -> int:
    t0 = time.perf_counter()
    g = _read_graph(args.input)
    eps = _frac(args.eps) if args.eps is not None else None
    report = {"command": "wter", "problem": args.problem, "input_sha256": _sha256(args.input),
              "parameters": {"eps": args.eps, "c": args.c, "k": args.k,
                             "dynamic": args.dynamic, "pattern": args.pattern}}
    p = args.problem
    if p == "max-cut":
        eg, smap = wters.wter_max_cut(g, eps if eps is not None else Fraction(1))
        out = eg.graph
        report["gadget"] = _gadget_report(eg)
    elif p == "densest":
        res, smap = wters.wter_densest(g, dynamic=args.dynamic)
        if args.dynamic:
            out = res.gexp
            report["gadget"] = {"N": res.n_side, "d_X": res.expander.degree,
                                "checks": wters.dynamic_densest_check(res)}
        else:
            out = res.graph
            report["gadget"] = _gadget_report(res)
    elif p == "densify":
        if args.c is None:
            raise UsageError("densify needs --c")
        out, smap = wters.wter_densify_clique_attach(g, args.c)
    elif p == "matching":
        eg, smap = wters.wter_matching(g)
        out = eg.graph
        report["gadget"] = _gadget_report(eg)
    elif p == "bpm":
        eg, smap = wters.wter_bipartite_perfect_matching(g)
        out = eg.graph
        report["gadget"] = _gadget_report(eg)
        report["output_parts"] = [list(s) for s in wters.bpm_output_parts(eg)]
    elif p == "k-clique":
        eg, smap = wters.wter_k_clique(g, args.k if args.k is not None else 3)
        out = eg.graph
        report["gadget"] = _gadget_report(eg)
    elif p == "h-subgraph":
        if not args.pattern:
            raise UsageError("h-subgraph needs --pattern h.el")
        eg, smap = wters.wter_h_subgraph(g, _read_graph(args.pattern))
        out = eg.graph
        report["gadget"] = _gadget_report(eg)
    elif p in ("max-clique", "dominating-set"):
        e = eps if eps is not None else Fraction(1, 2)
        fn = wters.wter_max_clique if p == "max-clique" else wters.wter_dominating_set
        eg, smap = fn(g, e)
        out = eg.graph
        report["gadget"] = _gadget_report(eg)
    else:  # argparse restricts choices
        raise UsageError(f"unknown problem {p!r}")
    write_edge_list(out, args.output)
    report["map"] = smap.to_json()
    if args.map:
        _write_json(smap.to_json(), args.map)
    _emit_report(report, args.report, t0)
    return 0


# -- omv-gen ----------------------------------------------------------------

def parse_matrix(text: str) -> np.ndarray:
    rows = []
    k = None
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if k is None:
            try:
                k = int(line)
            except ValueError:
                raise ParseError(f"expected k, got {line!r}", lineno) from None
            continue
        bits = line.replace(" ", "")
        if len(bits) != k or any(c not in "01" for c in bits):
            raise ParseError(f"expected {k} binary digits, got {line!r}", lineno)
        rows.append([int(c) for c in bits])
    if k is None:
        raise ParseError("missing k", 1)
    if len(rows) != k:
        raise ParseError(f"expected {k} rows, found {len(rows)}")
    return np.array(rows, dtype=np.int64).reshape(k, k)


def parse_queries(text: str, k: int) -> list[tuple[list[int], list[int]]]:
    out = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or any(len(p) != k or set(p) - {"0", "1"} for p in parts):
            raise ParseError(f"expected two binary strings of length {k}", lineno)
        out.append(([int(c) for c in parts[0]], [int(c) for c in parts[1]]))
    return out


def cmd_omv_gen(args) -> int:
    t0 = time.perf_counter()
    mat = parse_matrix(_read_text(args.matrix))
    queries = parse_queries(_read_text(args.queries), mat.shape[0]) if args.queries else []
    inst = wters.omv_build(mat)
    if args.graph:
        write_edge_list(inst.graph, args.graph)
    answers = []
    log = []
    agree = True
    for i, (u, v) in enumerate(queries):
        ans, events = wters.omv_query(inst, u, v)
        answers.append(ans)
        agree &= (ans == "dist3") == bool(wters.boolean_product(mat, u, v))
        log.append(f"# query {i}\n" + format_events(events))
    if args.emit:
        with open(args.emit, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("".join(log))
    if args.answers:
        with open(args.answers, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("".join(a + "\n" for a in answers))
    report = {"command": "omv-gen", "matrix_sha256": _sha256(args.matrix), "k": int(mat.shape[0]),
              "s": inst.s, "t": inst.t, "anchor": list(inst.anchor),
              "vertices": inst.graph.n, "gadget": _gadget_report(inst.gadget),
              "queries": len(queries), "answers": answers,
              "agrees_with_boolean_product": agree}
    _emit_report(report, args.report, t0)
    return 0


# -- oracle -----------------------------------------------------------------

def run_oracle(problem: str, g: Graph, k: int | None = None, s: int | None = None,
               t: int | None = None, pattern: Graph | None = None):
    if problem == "max-cut":
        return oracles.oracle_max_cut(g)
    if problem == "densest":
        return oracles.oracle_densest(g)
    if problem == "matching":
        return oracles.oracle_max_matching(g)
    if problem == "vertex-cover":
        return oracles.oracle_min_vertex_cover(g)
    if problem == "dominating-set":
        return oracles.oracle_min_dominating_set(g)
    if problem == "max-clique":
        return oracles.oracle_max_clique(g)
    if problem == "k-clique":
        return oracles.oracle_count_k_cliques(g, 3 if k is None else k)
    if problem == "distance":
        if s is None or t is None:
            raise UsageError("distance needs --s and --t")
        return oracles.oracle_distance(g, s, t)
    if problem == "subgraph":
        if pattern is None:
            raise UsageError("subgraph needs --pattern")
        return oracles.oracle_subgraph_iso(g, pattern)
    if problem == "bpm":
        color = g.two_coloring()
        if color is None:
            raise UsageError("bpm needs a bipartite graph")
        parts = ([v for v in range(g.n) if color[v] == 0], [v for v in range(g.n) if color[v] == 1])
        return oracles.oracle_bipartite_pm(g, parts)
    if problem == "conductance":
        return exact_conductance(g)[0]
    if problem == "edge-expansion":
        return exact_edge_expansion(g)[0]
    raise UsageError(f"unknown oracle {problem!r}")


def _value_text(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    if isinstance(x, Fraction):
        return str(x)
    return str(int(x)) if isinstance(x, (int, np.integer, float)) else str(x)


def cmd_oracle(args) -> int:
    g = _read_graph(args.input)
    pattern = _read_graph(args.pattern) if args.pattern else None
    val = run_oracle(args.problem, g, args.k, args.s, args.t, pattern)
    sys.stdout.write(_value_text(val) + "\n")
    return 0


# -- verify -----------------------------------------------------------------

def _labels_split(labels):
    v = [i for i, lab in enumerate(labels) if lab == "V"]
    lv = [i for i, lab in enumerate(labels) if lab == "L"]
    rv = [i for i, lab in enumerate(labels) if lab == "R"]
    return v, lv, rv


def _report_frac(obj) -> Fraction:
    return Fraction(obj["num"], obj["den"])


def _preconditions_from_labels(g: Graph, report: dict) -> dict:
    """Robust-lemma hypotheses recomputed from the output graph and its labels."""
    v_ids, l_ids, r_ids = _labels_split(report["labels"])
    vset = set(v_ids)
    side = set(l_ids) | (set(r_ids) if report["mode"] == "bipartite" else set())
    eps = _report_frac(report["eps"])
    alpha = _report_frac(report["alpha"])
    d = report["d_X"]
    nbr = all(len(g.adj[v] & side) >= eps * len(g.adj[v] & vset) + 1 for v in v_ids)
    degs = [g.degree(w) for w in side]
    rng = bool(degs) and min(degs) >= d and max(degs) <= alpha * d
    lset, rset = set(l_ids), set(r_ids)
    regular = all(len(g.adj[a] & rset) == d for a in l_ids) and \
        all(len(g.adj[b] & lset) == d for b in r_ids)
    phi = _report_frac(report["phi_X"])
    if regular and l_ids:
        n_side = len(l_ids)
        if 2 * n_side <= EXACT_MAX_VERTICES:
            sub = g.induced(l_ids + r_ids)
            h, _ = exact_edge_expansion(sub)
            value = h / d
        else:
            b = np.zeros((n_side, n_side))
            pos = {w: i for i, w in enumerate(r_ids)}
            for i, a in enumerate(l_ids):
                for w in g.adj[a] & rset:
                    b[i, pos[w]] = 1.0
            value = max(Fraction(0), round_down((d - second_singular_value(b)) / (2 * d)))
        cert_ok = value >= phi
    else:
        value, cert_ok = Fraction(0), False
    return {"neighbor_fraction": nbr, "l_degree_range": rng, "certified_expander": cert_ok,
            "recomputed_phi_X": _fj(value)}


def _conductance_evidence(g: Graph, threshold: Fraction) -> dict:
    if g.n <= EXACT_MAX_VERTICES:
        phi, cut = exact_conductance(g)
        ok = phi >= threshold
        ev = {"method": "exact", "conductance": _fj(phi)}
        if not ok:
            ev["witness_cut"] = cut
        return {"pass": ok, "evidence": ev}
    lb = spectral_conductance_lower_bound(g)
    return {"pass": lb >= threshold,
            "evidence": {"method": "spectral", "lower_bound": round(lb, 9)}}


def _resolve(base: str, path: str) -> str:
    return path if os.path.isabs(path) else os.path.join(base, path)


def _map_from_json(obj) -> wters.SolutionMap:
    value = obj["value"]
    if isinstance(value, str):
        value = Fraction(value)
    elif isinstance(value, dict) and "factor" in value:
        value = {"offset": value["offset"], "factor": value["factor"]}
    return wters.SolutionMap(obj["problem"], obj["kind"], value)


_MAP_ORACLE = {"max-cut": "max-cut", "densest": "densest", "matching": "matching",
               "min-vertex-cover": "vertex-cover", "min-dominating-set": "dominating-set",
               "max-clique": "max-clique", "k-clique-count": "k-clique",
               "bipartite-perfect-matching": "bpm", "h-subgraph": "subgraph"}


def _check_claim(claim: dict, target: str, kind_of_target: str, base: str) -> dict:
    kind = claim.get("kind")
    out = {"kind": kind}

    def need_graph() -> Graph:
        if kind_of_target != "graph":
            raise UsageError(f"claim {kind!r} needs a graph target")
        return _read_graph(target)

    def need_events():
        if kind_of_target != "events":
            raise UsageError(f"claim {kind!r} needs an event-log target")
        return [UpdateEvent(op, u, v, "") for op, u, v in parse_updates(_read_text(target))]

    if kind == "conductance_ge":
        g = need_graph()
        out.update(_conductance_evidence(g, _frac(str(claim["value"]))))
    elif kind == "robust_preconditions":
        g = need_graph()
        rep = claim.get("report")
        if isinstance(rep, str):
            rep = json.loads(_read_text(_resolve(base, rep)))
        res = _preconditions_from_labels(g, rep)
        out["pass"] = all(v for k, v in res.items() if k != "recomputed_phi_X")
        out["evidence"] = res
    elif kind == "offset_identity":
        g = need_graph()
        smap = claim["map"]
        if isinstance(smap, str):
            smap = json.loads(_read_text(_resolve(base, smap)))
        sm = _map_from_json(smap)
        orig = _read_graph(_resolve(base, claim["original"]))
        problem = _MAP_ORACLE.get(sm.problem)
        if problem is None:
            raise UsageError(f"no oracle for problem {sm.problem!r}")
        pattern = _read_graph(_resolve(base, claim["pattern"])) if claim.get("pattern") else None
        k = claim.get("k")
        if problem == "k-clique" and k is None:
            k = int(sm.value) - 1
        if problem == "bpm":
            parts = claim.get("parts")
            a = oracles.oracle_bipartite_pm(orig, wters.bipartition(orig))
            b = oracles.oracle_bipartite_pm(g, parts) if parts else run_oracle("bpm", g)
        else:
            a = run_oracle(problem, orig, k=k, pattern=pattern)
            b = run_oracle(problem, g, k=k, pattern=pattern)
        rec = sm.recover(b)
        out["pass"] = rec == a
        out["evidence"] = {"original": _value_text(a), "output": _value_text(b),
                           "recovered": _value_text(rec)}
    elif kind == "replay":
        events = need_events()
        initial = _read_graph(_resolve(base, claim["initial"]))
        expected = _read_graph(_resolve(base, claim["expected"]))
        try:
            final = replay(initial, events)
            out["pass"] = final == expected
            out["evidence"] = {"events": len(events), "final_m": final.m, "expected_m": expected.m}
        except WterError as exc:
            out["pass"] = False
            out["evidence"] = {"events": len(events), "error": f"{type(exc).__name__}: {exc}"}
    elif kind == "amortization_ratio":
        events = need_events()
        initial = _read_graph(_resolve(base, claim["initial"]))
        updates = parse_updates(_read_text(_resolve(base, claim["updates"])))
        bound = Fraction(str(claim.get("bound", 40)))
        # the initial build counts as output, as in the live report
        events_out = len(events) + dyn_init(initial).gexp.m
        credit = len(updates) + initial.m + initial.n
        ratio = Fraction(events_out, credit) if credit else Fraction(0)
        out["pass"] = ratio <= bound
        out["evidence"] = {"events_out": events_out, "credit": credit, "ratio": _fj(ratio)}
    else:
        raise UsageError(f"unknown claim kind {kind!r}")
    return out


def _target_kind(path: str) -> str:
    for raw in _read_text(path).split("\n"):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        return "events" if line[0] in "+-" else "graph"
    return "events"


def _claims_from(obj) -> list[dict]:
    if isinstance(obj, list):
        return obj
    if "claims" in obj:
        return obj["claims"]
    if "conductance_claim" in obj and "labels" in obj:
        # an expanderize report vouches for its own output
        return [{"kind": "robust_preconditions", "report": obj},
                {"kind": "conductance_ge", "value": str(_report_frac(obj["conductance_claim"]))}]
    raise UsageError("claims file must be a list, {'claims': [...]}, or an expanderize report")


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    claims = _claims_from(json.loads(_read_text(args.claims)))
    kind = _target_kind(args.target)
    base = os.path.dirname(os.path.abspath(args.claims))
    results = [_check_claim(c, args.target, kind, base) for c in claims]
    ok = all(r["pass"] for r in results)
    report = {"command": "verify", "target_sha256": _sha256(args.target), "target_kind": kind,
              "claims": results, "pass": ok}
    _emit_report(report, args.report, t0)
    return 0 if ok else 1


# -- gen (seeded test data) ---------------------------------------------------

def cmd_gen(args) -> int:
    rng = np.random.default_rng(args.seed)
    if args.what == "graph":
        if args.m is not None:
            g = random_graph_m(args.n, args.m, rng)
        else:
            g = random_graph(args.n, args.p, rng)
        write_edge_list(g, args.output)
    elif args.what == "updates":
        g = _read_graph(args.input).copy()
        lines = []
        for _ in range(args.count):
            if g.m and (rng.random() < args.delete_rate or g.m == g.n * (g.n - 1) // 2):
                edges = sorted(g.edges())
                u, v = edges[int(rng.integers(len(edges)))]
                g.delete_edge(u, v)
                lines.append(f"- {u} {v}")
            else:
                while True:
                    u, v = (int(x) for x in rng.integers(g.n, size=2))
                    if u != v and not g.has_edge(u, v):
                        break
                g.insert_edge(u, v)
                lines.append(f"+ {u} {v}")
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("".join(x + "\n" for x in lines))
    elif args.what == "matrix":
        mat = rng.integers(0, 2, size=(args.k, args.k))
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"{args.k}\n" + "".join("".join(map(str, r)) + "\n" for r in mat))
    elif args.what == "queries":
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            for _ in range(args.count):
                u, v = rng.integers(0, 2, size=(2, args.k))
                fh.write("".join(map(str, u)) + " " + "".join(map(str, v)) + "\n")
    return 0


# -- wiring -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wterkit", description="Deterministic expander reductions toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("expanderize", help="apply the core gadget")
    e.add_argument("--mode", choices=("plain", "tradeoff", "bipartite"), default="plain")
    e.add_argument("--eps", default="1")
    e.add_argument("--delta", default="1")
    e.add_argument("input")
    e.add_argument("output")
    e.add_argument("--report")
    e.set_defaults(func=cmd_expanderize)

    d = sub.add_parser("dynamize", help="drive the fully dynamic gadget")
    d.add_argument("input")
    d.add_argument("updates")
    d.add_argument("--eps", default="1")
    d.add_argument("--emit")
    d.add_argument("--report")
    d.add_argument("--check-every", type=int, default=0)
    d.add_argument("--initial-out")
    d.add_argument("--final-out")
    d.set_defaults(func=cmd_dynamize)

    w = sub.add_parser("wter", help="reduce a problem instance to an expander instance")
    w.add_argument("problem", choices=PROBLEMS)
    w.add_argument("input")
    w.add_argument("output")
    w.add_argument("--map")
    w.add_argument("--report")
    w.add_argument("--eps")
    w.add_argument("--c", type=int)
    w.add_argument("--k", type=int)
    w.add_argument("--pattern")
    w.add_argument("--dynamic", action="store_true")
    w.set_defaults(func=cmd_wter)

    o = sub.add_parser("omv-gen", help="build an OMv / st-SP(3 vs 5) instance and answer queries")
    o.add_argument("matrix")
    o.add_argument("--queries")
    o.add_argument("--emit")
    o.add_argument("--answers")
    o.add_argument("--graph")
    o.add_argument("--report")
    o.set_defaults(func=cmd_omv_gen)

    r = sub.add_parser("oracle", help="exact reference value")
    r.add_argument("problem", choices=ORACLES)
    r.add_argument("input")
    r.add_argument("--k", type=int)
    r.add_argument("--s", type=int)
    r.add_argument("--t", type=int)
    r.add_argument("--pattern")
    r.set_defaults(func=cmd_oracle)

    v = sub.add_parser("verify", help="check claims against a graph or an event log")
    v.add_argument("target")
    v.add_argument("claims")
    v.add_argument("--report")
    v.set_defaults(func=cmd_verify)

    gn = sub.add_parser("gen", help="seeded test data")
    gn.add_argument("what", choices=("graph", "updates", "matrix", "queries"))
    gn.add_argument("output")
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--n", type=int, default=10)
    gn.add_argument("--p", type=float, default=0.3)
    gn.add_argument("--m", type=int)
    gn.add_argument("--k", type=int, default=4)
    gn.add_argument("--count", type=int, default=10)
    gn.add_argument("--input")
    gn.add_argument("--delete-rate", type=float, default=0.4)
    gn.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "what", None) == "updates" and not args.input:
            raise UsageError("gen updates needs --input")
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"ParseError: {exc}\n")
        return exc.exit_code
    except WterError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
