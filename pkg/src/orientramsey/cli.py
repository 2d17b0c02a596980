"""Command line front end.

Exit codes: 0 success, 1 domain or decision failure, 2 usage error,
3 indeterminate (search budget exhausted).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .density import max_2_density, max_density
from .errors import DomainError, NotABConstructibleError, OrientRamseyError, ParseError, PreconditionError
from .graph import Graph, Orientation
from .io import format_orientation, read_graph, to_dot
from .oracle import Indeterminate, arrows_component_wise, decide_tt3_fast, find_k4
from .patterns import is_complete, is_cycle_graph, parse_pattern, pattern_class

OK, FAIL, USAGE, INDETERMINATE = 0, 1, 2, 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.data: dict = {}
        self.lines: list[str] = []

    def put(self, key, value, text=None):
        self.data[key] = value
        if text is not None:
            self.lines.append(text)

    def flush(self):
        if self.as_json:
            print(json.dumps(self.data, sort_keys=True, default=str))
        elif self.lines:
            print("\n".join(self.lines))


def _pattern(spec: str):
    try:
        return parse_pattern(spec)
    except ParseError as exc:
        raise _Usage(str(exc)) from exc


def _edges(g: Graph):
    return [list(e) for e in g.sorted_edges()]


def _vertices(g: Graph):
    return list(g.active_vertices())


# -- commands ---------------------------------------------------------------------------

def cmd_density(a, out: _Out) -> int:
    g = read_graph(a.graph)
    rep = max_2_density(g) if a.two else max_density(g)
    out.put("value", str(rep), str(rep))
    out.put("witness", list(rep.witness))
    out.put("kind", rep.kind)
    return OK


def cmd_components(a, out: _Out) -> int:
    from .structure import h_components

    g = read_graph(a.graph)
    h = _pattern(a.pattern).base
    dec = h_components(g, h)
    comps = []
    for c, copies in zip(dec.components, dec.component_copies):
        comps.append({"vertices": _vertices(c), "edges": _edges(c), "copies": len(copies)})
        out.lines.append(f"component: {len(_vertices(c))} vertices, {c.m} edges, {len(copies)} copies")
    out.put("components", comps)
    out.put("uncovered_edges", [list(e) for e in sorted(dec.leftover_edges)],
            f"edges in no copy: {len(dec.leftover_edges)}")
    return OK


def cmd_blocks(a, out: _Out) -> int:
    from .structure import copyset_for, h_closure_peel, union_graph

    g = read_graph(a.graph)
    h = _pattern(a.pattern).base
    cs = copyset_for(g, h)
    union = union_graph(g.n, cs.copies) if cs.copies else Graph(g.n)
    closure = h_closure_peel(union, h, cs)
    bound = max_2_density(h).value
    blocks = []
    out.lines.append(f"peeled copies: {len(closure.peeled)}; closed core edges: {closure.closed_core.m}")
    for b in closure.blocks:
        d = max_density(b)
        blocks.append({"vertices": _vertices(b), "edges": _edges(b), "density": str(d), "below_m2": d.value < bound})
        out.lines.append(f"block: {len(_vertices(b))} vertices, {b.m} edges, m = {d}"
                         f" ({'<' if d.value < bound else '>='} m2 = {bound})")
    out.put("peeled", len(closure.peeled))
    out.put("blocks", blocks)
    return OK


def cmd_sequence(a, out: _Out) -> int:
    from .structure import construction_sequence, h_components, type_steps_cycle, type_steps_triangle

    g = read_graph(a.graph)
    pattern = _pattern(a.pattern)
    h = pattern.base
    dec = h_components(g, h)
    seqs = []
    for comp in dec.components:
        seq = construction_sequence(comp, h)
        if is_complete(h) and h.n == 3:
            seq = type_steps_triangle(seq)
        elif is_cycle_graph(h) and h.n >= 4:
            seq = type_steps_cycle(seq, h.n)
        steps = []
        for i, st in enumerate(seq.steps):
            steps.append({"copy": [list(e) for e in st.copy.sorted_edges()], "type": st.step_type})
            out.lines.append(f"H{i + 1}: {st.step_type or 'start'} {[tuple(e) for e in st.copy.sorted_edges()]}")
        out.lines.append("")
        seqs.append(steps)
    out.put("sequences", seqs)
    if out.lines and out.lines[-1] == "":
        out.lines.pop()
    return OK


def _witness_text(o: Orientation, fmt: str) -> str:
    return to_dot(o) if fmt == "dot" else format_orientation(o) + "\n"


def cmd_orient(a, out: _Out) -> int:
    from .orienters import orient_avoid

    g = read_graph(a.graph)
    pattern = _pattern(a.pattern)
    try:
        res = orient_avoid(g, pattern)
    except OrientRamseyError as exc:
        if pattern_class(pattern) == "tt" and pattern.n == 3 and find_k4(g) is not None:
            k4 = find_k4(g)
            out.put("status", "arrows", f"arrows: K4 obstruction on {list(k4)}")
            out.put("obstruction", "K4")
            out.put("vertices", list(k4))
            return FAIL
        if isinstance(exc, NotABConstructibleError):
            out.put("status", "not-ab-constructible",
                    f"not AB-constructible: {exc.obstruction_kind} obstruction; {exc}")
            out.put("obstruction", exc.obstruction_kind)
            return FAIL
        raise
    text = _witness_text(res.orientation, a.format)
    out.put("status", "oriented")
    out.put("method", res.method)
    out.put("orientation", format_orientation(res.orientation))
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text)
        out.lines.append(f"oriented ({res.method}); written to {a.out}")
    else:
        out.lines.append(text.rstrip("\n"))
    return OK


def cmd_arrows(a, out: _Out) -> int:
    g = read_graph(a.graph)
    pattern = _pattern(a.pattern)
    if a.method == "tt3-fast":
        if pattern_class(pattern) != "tt" or pattern.n != 3:
            raise DomainError("tt3-fast only decides the transitive triangle")
        res = decide_tt3_fast(g, a.budget)
    else:
        res = arrows_component_wise(g, pattern, a.budget)
    if isinstance(res, Indeterminate):
        out.put("status", "indeterminate", f"indeterminate after {res.nodes_explored} nodes (budget {a.budget})")
        out.put("nodes", res.nodes_explored)
        return INDETERMINATE
    out.put("nodes", res.nodes_explored)
    if res.arrows:
        out.put("status", "arrows", f"arrows ({res.note})" if res.note else "arrows")
        return OK
    out.put("status", "not-arrows", "not arrows")
    out.put("witness", format_orientation(res.witness))
    out.lines.append(_witness_text(res.witness, a.format).rstrip("\n"))
    return OK


def cmd_sweep(a, out: _Out) -> int:
    from .experiments import read_config, threshold_sweep

    cfg = read_config(a.config)
    workers = a.threads if a.threads is not None else cfg.workers
    res = threshold_sweep(cfg, workers=max(1, workers))
    csv_text = res.to_csv()
    if a.out:
        with open(a.out, "w", newline="") as fh:
            fh.write(csv_text)
        out.put("rows", len(res.rows), f"{len(res.rows)} rows written to {a.out}")
    else:
        out.put("csv", csv_text, csv_text.rstrip("\n"))
    return OK


def cmd_check(a, out: _Out) -> int:
    """Does the density hypothesis of the matching theorem hold for this graph?"""
    from .orienters import antidirected_density_ok
    from .structure import is_ab_constructible, h_components, TRIANGLE

    g = read_graph(a.graph)
    pattern = _pattern(a.pattern)
    cls = pattern_class(pattern)
    if cls == "tt" and pattern.n == 3:
        bad = []
        for comp in h_components(g, TRIANGLE).components:
            ok, ob = is_ab_constructible(comp)
            if not ok:
                bad.append(_vertices(ob))
        holds = not bad
        out.put("hypothesis", "every K3-component AB-constructible")
        out.put("obstructions", bad)
        out.lines.append("AB-constructible" if holds else f"not AB-constructible; obstructions on {bad}")
    elif cls == "anti":
        holds, why = antidirected_density_ok(g, pattern)
        out.put("hypothesis", why, why)
    else:
        m = max_density(g) if g.edges else None
        m2 = max_2_density(pattern.base).value
        holds = m is None or m.value < m2
        out.put("m", str(m) if m else "0")
        out.put("m2", str(m2))
        out.lines.append(f"m(G) = {m if m else 0} {'<' if holds else '>='} m2(H) = {m2}")
    out.put("holds", holds)
    return OK if holds else FAIL


# -- argument parsing --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orientramsey", description="Orientation Ramsey toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--json", action="store_true", help="machine-readable output; errors as JSON on stderr")
    p.add_argument("--threads", type=int, default=None, help="cap on worker processes")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def graph_cmd(name, help_, pattern=True):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--graph", required=True, help="graph6 or edge-list file")
        if pattern:
            s.add_argument("--pattern", required=True, help="pattern name or orientation file")
        s.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return s

    s = graph_cmd("density", "maximum density m(G), or m2(G) with --two", pattern=False)
    s.add_argument("--two", action="store_true")
    graph_cmd("components", "H-components of the graph")
    graph_cmd("blocks", "H-closed core and H-blocks with their densities")
    graph_cmd("sequence", "typed construction sequence per component")
    s = graph_cmd("orient", "orientation avoiding the pattern")
    s.add_argument("--out")
    s.add_argument("--format", choices=("dot", "edges"), default="dot")
    s = graph_cmd("arrows", "exact decision of G -> pattern")
    s.add_argument("--budget", type=int, default=1_000_000)
    s.add_argument("--method", choices=("oracle", "tt3-fast"), default="oracle")
    s.add_argument("--format", choices=("dot", "edges"), default="dot")
    s = sub.add_parser("sweep", help="threshold sweep from a key-value config")
    s.add_argument("--config", required=True)
    s.add_argument("--out")
    s.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    s.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    graph_cmd("check", "test the density hypothesis of the matching theorem")
    return p


COMMANDS = {
    "density": cmd_density,
    "components": cmd_components,
    "blocks": cmd_blocks,
    "sequence": cmd_sequence,
    "orient": cmd_orient,
    "arrows": cmd_arrows,
    "sweep": cmd_sweep,
    "check": cmd_check,
}


def _error(as_json: bool, kind: str, message: str, code: int) -> int:
    if as_json:
        print(json.dumps({"error": kind, "message": message, "exit": code}, sort_keys=True), file=sys.stderr)
    else:
        print(f"error: {message}", file=sys.stderr)
    return code


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except _Usage as exc:
        return _error(as_json, "usage", f"{exc}\n{parser.format_usage().strip()}", USAGE)
    if a.command is None:
        return _error(as_json, "usage", parser.format_usage().strip(), USAGE)
    if a.threads is not None and a.threads < 1:
        return _error(as_json, "usage", "--threads must be >= 1", USAGE)
    out = _Out(as_json)
    try:
        code = COMMANDS[a.command](a, out)
    except _Usage as exc:
        return _error(as_json, "usage", str(exc), USAGE)
    except ParseError as exc:
        return _error(as_json, "parse", str(exc), FAIL)
    except PreconditionError as exc:
        return _error(as_json, "precondition", str(exc), FAIL)
    except (OrientRamseyError, OSError) as exc:
        return _error(as_json, type(exc).__name__, str(exc), FAIL)
    out.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
