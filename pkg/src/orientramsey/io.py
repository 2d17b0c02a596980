"""Text formats: graph6, the ``n; u-v ...`` edge list, oriented edge lists, DOT."""

from __future__ import annotations

import re
from pathlib import Path
from typing import Hashable, Iterable

from .errors import GraphValidationError, ParseError
from .graph import Graph, Orientation

G6_HEADER = ">>graph6<<"


# -- graph6 ------------------------------------------------------------------

def _g6_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(g: Graph) -> str:
    out = bytearray(_g6_size(g.n))
    acc = nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = acc << 1 | g.has_edge(i, j)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def from_graph6(text: str | bytes) -> Graph:
    data = text.encode("ascii", "replace") if isinstance(text, str) else bytes(text)
    base = 0
    if data.startswith(G6_HEADER.encode()):
        base = len(G6_HEADER)
    data = data[base:].rstrip(b"\r\n")
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise ParseError(f"invalid graph6 byte {c!r}", base + i)
    if not data:
        raise ParseError("empty graph6 string", base)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise ParseError("truncated graph6 size field", base + len(data))
        n, pos = 0, 8
        for c in data[2:8]:
            n = n << 6 | (c - 63)
    else:
        if len(data) < 4:
            raise ParseError("truncated graph6 size field", base + len(data))
        n, pos = 0, 4
        for c in data[1:4]:
            n = n << 6 | (c - 63)
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(
            f"graph6 body has {len(body)} bytes, expected {need} for n={n}",
            base + pos + min(len(body), need),
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            c = body[k // 6] - 63
            if c >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if k % 6 and body and (body[-1] - 63) & ((1 << (6 - k % 6)) - 1):
        raise ParseError("nonzero graph6 padding bits", base + len(data) - 1)
    return Graph(n, edges)


# -- edge lists ----------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)([->])(\d+)")


def _parse_edge_tokens(text: str) -> tuple[int, list[tuple[int, int, str, int]]]:
    semi = text.find(";")
    if semi < 0:
        raise ParseError("edge list needs '<n>;' header", 0)
    head = text[:semi].strip()
    if not head.isdigit():
        raise ParseError(f"vertex count {head!r} is not a non-negative integer", 0)
    n = int(head)
    tokens = []
    for m in re.finditer(r"\S+", text[semi + 1 :]):
        off = semi + 1 + m.start()
        tm = _TOKEN.fullmatch(m.group())
        if not tm:
            raise ParseError(f"malformed edge token {m.group()!r}", off)
        tokens.append((int(tm.group(1)), int(tm.group(3)), tm.group(2), off))
    return n, tokens


def parse_edge_list(text: str) -> Graph:
    n, tokens = _parse_edge_tokens(text)
    for u, v, _, off in tokens:
        if u == v:
            raise GraphValidationError(f"loop at vertex {u} (byte offset {off})")
    return Graph(n, [(u, v) for u, v, _, _ in tokens])


def parse_orientation(text: str) -> Orientation:
    """``n; t>h ... u-v`` where ``>`` tokens are arcs and ``-`` tokens unoriented edges."""
    n, tokens = _parse_edge_tokens(text)
    base = Graph(n, [(u, v) for u, v, _, _ in tokens])
    return Orientation(base, [(u, v) for u, v, kind, _ in tokens if kind == ">"])


def format_edge_list(g: Graph) -> str:
    return f"{g.n}; " + " ".join(f"{u}-{v}" for u, v in g.sorted_edges()) if g.edges else f"{g.n};"


def format_orientation(o: Orientation) -> str:
    parts = []
    for u, v in o.base.sorted_edges():
        a = o.arc(u, v)
        parts.append(f"{a[0]}>{a[1]}" if a else f"{u}-{v}")
    return f"{o.n}; " + " ".join(parts) if parts else f"{o.n};"


def parse_graph(text: str) -> Graph:
    """Edge-list text if it has a ``;`` header, graph6 otherwise."""
    stripped = text.strip()
    if ";" in stripped:
        return parse_edge_list(stripped)
    line = stripped.splitlines()[0] if stripped else ""
    return from_graph6(line)


def serialize(g: Graph, fmt: str = "edgelist") -> str:
    if fmt == "graph6":
        return to_graph6(g)
    if fmt == "edgelist":
        return format_edge_list(g)
    raise ValueError(f"unknown format {fmt!r}")


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def relabel_dense(pairs: Iterable[tuple[Hashable, Hashable]]) -> tuple[Graph, tuple]:
    """Build a Graph from arbitrary vertex labels; returns it with the label table."""
    pairs = list(pairs)
    labels: dict = {}
    for u, v in pairs:
        for x in (u, v):
            labels.setdefault(x, len(labels))
    g = Graph(len(labels), [(labels[u], labels[v]) for u, v in pairs])
    return g, tuple(labels)


# -- DOT -----------------------------------------------------------------------

def to_dot(o: Orientation, name: str = "G", labels=None) -> str:
    lab = (lambda v: labels[v]) if labels is not None else (lambda v: v)
    lines = [f"digraph {name} {{"]
    for v in range(o.n):
        if not o.base.adj[v]:
            lines.append(f'  "{lab(v)}";')
    for u, v in o.base.sorted_edges():
        a = o.arc(u, v)
        if a:
            lines.append(f'  "{lab(a[0])}" -> "{lab(a[1])}";')
        else:
            lines.append(f'  "{lab(u)}" -> "{lab(v)}" [dir=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"
