"""Named oriented patterns and pattern classification.

Names accepted by :func:`parse_pattern`:

``tt3``, ``ttk:K``        transitive tournament on K vertices
``dircycle:L``            directed L-cycle
``cycle:L:STRING``        L-cycle, ``STRING[i]`` is ``+`` for i -> i+1 and ``-`` for i+1 -> i
``anti:cL``               anti-directed (alternating) L-cycle, L even
``anti:kA,B``             K_{A,B} with every arc from the A side to the B side
"""

from __future__ import annotations

import re
from pathlib import Path

from .density import max_2_density
from .errors import DomainError, ParseError
from .graph import (
    Graph,
    Orientation,
    blocks_of,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_or_cycle_order,
)


def transitive_tournament(k: int) -> Orientation:
    if k < 1:
        raise DomainError("TT_k needs k >= 1")
    g = complete_graph(k)
    return Orientation(g, g.edges)


def tt3() -> Orientation:
    return transitive_tournament(3)


def cycle_from_blockstring(s: str) -> Orientation:
    if len(s) < 3 or set(s) - {"+", "-"}:
        raise DomainError(f"block string must be >= 3 symbols from '+-', got {s!r}")
    t = len(s)
    g = cycle_graph(t)
    return Orientation(g, [(i, (i + 1) % t) if c == "+" else ((i + 1) % t, i) for i, c in enumerate(s)])


def directed_cycle(t: int) -> Orientation:
    return cycle_from_blockstring("+" * t)


def antidirected_cycle(t: int) -> Orientation:
    if t % 2:
        raise DomainError("an anti-directed cycle must have even length")
    return cycle_from_blockstring("+-" * (t // 2))


def antidirected_biclique(a: int, b: int) -> Orientation:
    g = complete_bipartite(a, b)
    return Orientation(g, g.edges)  # edges are (u, a+v) with u < a+v


def blockstring(o: Orientation) -> str:
    """Inverse of :func:`cycle_from_blockstring` for cycles labelled 0..t-1 in order."""
    t = o.n
    if o.base != cycle_graph(t):
        raise DomainError("not a standard-labelled cycle")
    return "".join("+" if o.has_arc(i, (i + 1) % t) else "-" for i in range(t))


_NAME = re.compile(r"tt3|ttk:(\d+)|dircycle:(\d+)|cycle:(\d+):([+-]+)|anti:c(\d+)|anti:k(\d+),(\d+)")


def parse_pattern(spec: str) -> Orientation:
    """A pattern by name, or from an orientation file when ``spec`` is a path."""
    m = _NAME.fullmatch(spec.strip())
    if m:
        if spec.strip() == "tt3":
            return tt3()
        k, dl, cl, cs, al, aa, ab = m.groups()
        if k:
            return transitive_tournament(int(k))
        if dl:
            return directed_cycle(int(dl))
        if cl:
            if int(cl) != len(cs):
                raise DomainError(f"block string {cs!r} has length {len(cs)}, expected {cl}")
            return cycle_from_blockstring(cs)
        if al:
            return antidirected_cycle(int(al))
        return antidirected_biclique(int(aa), int(ab))
    path = Path(spec)
    if path.is_file():
        from .io import parse_orientation

        o = parse_orientation(path.read_text())
        if not o.is_total():
            raise DomainError("pattern file must orient every edge")
        return o
    raise ParseError(f"unknown pattern {spec!r}", 0)


# -- classification ------------------------------------------------------------

def is_cycle_graph(g: Graph) -> bool:
    if g.n < 3 or g.m != g.n or len(g.active_vertices()) != g.n:
        return False
    try:
        _, closed = path_or_cycle_order(g)
    except DomainError:
        return False
    return closed


def is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def is_antidirected_pattern(p: Orientation) -> bool:
    return p.is_antidirected()


def pattern_class(p: Orientation) -> str:
    """One of ``cycle``, ``cyclic``, ``tt``, ``anti``, ``other``.

    Any orientation of a cycle of length >= 4 is ``cycle`` (directed ones
    included); an anti-directed C4 is ``cycle`` too.  ``cyclic`` means some
    other pattern with a directed cycle, e.g. the cyclic triangle.
    """
    if not p.is_total():
        raise DomainError("pattern must be a total orientation")
    if is_cycle_graph(p.base) and p.n >= 4:
        return "cycle"
    if not p.is_acyclic():
        return "cyclic"
    if is_complete(p.base) and p.n >= 3:
        return "tt"
    if p.is_antidirected():
        return "anti"
    return "other"


def cycle_longest_block(p: Orientation) -> int:
    return max(b.length for b in blocks_of(p))


def pattern_m2(p: Orientation):
    return max_2_density(p.base).value
