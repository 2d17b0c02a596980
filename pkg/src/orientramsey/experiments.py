"""G(n,p) sampling, arrow-probability estimates and threshold sweeps.

Sampling is coupled: trial ``t`` draws one uniform per vertex pair from a
Philox stream keyed by ``(seed, t)`` and includes the pair iff ``u < p``.
The same uniforms serve every ``c`` on the grid, so the arrow indicator of a
trial is monotone in ``c``, and results do not depend on how trials are
scheduled across worker processes.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy.stats import binomtest

from .density import max_2_density, max_density
from .errors import (
    BlockOrientationError,
    DensityEnvelopeError,
    DomainError,
    NotABConstructibleError,
    PreconditionError,
    UnsupportedPatternError,
)
from .graph import Graph, complete_graph, wheel_graph
from .oracle import Indeterminate, arrows_component_wise, decide_tt3_fast, find_k4
from .patterns import parse_pattern, pattern_class
from .structure import copyset_for, count_subgraphs, h_closure_peel, j_family, union_graph

METHODS = ("constructive-first", "oracle", "tt3-fast")
CSV_COLUMNS = ("n", "c", "p", "trials", "arrow", "indeterminate", "estimate", "ci_lo", "ci_hi")


# -- configuration --------------------------------------------------------------------

@dataclass(frozen=True)
class SweepConfig:
    n_values: tuple[int, ...]
    exponent: Fraction
    c_values: tuple[float, ...]
    trials: int
    seed: int
    budget: int
    pattern: str = "tt3"
    method: str = "constructive-first"
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError("trials must be >= 1")
        if self.budget < 1:
            raise DomainError("budget must be >= 1")
        if self.method not in METHODS:
            raise DomainError(f"method must be one of {', '.join(METHODS)}")
        if any(n < 1 for n in self.n_values):
            raise DomainError("n values must be positive")
        if any(c <= 0 for c in self.c_values):
            raise DomainError("c values must be positive")
        for n in self.n_values:
            for c in self.c_values:
                p = edge_probability(n, c, self.exponent)
                if not 0 < p <= 1:
                    raise DomainError(f"p = {p} for n={n}, c={c} is outside (0, 1]")

    def points(self) -> list[tuple[int, float, float]]:
        return [(n, c, edge_probability(n, c, self.exponent)) for n in self.n_values for c in self.c_values]


def edge_probability(n: int, c: float, exponent) -> float:
    return float(c) * float(n) ** (-float(exponent))


def _split(v: str) -> list[str]:
    return [s.strip() for s in v.replace(";", ",").split(",") if s.strip()]


def parse_config(text: str) -> SweepConfig:
    """``key = value`` lines; ``#`` starts a comment.  seed and budget are required."""
    kv = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"line {lineno}: expected key = value")
        k, v = (s.strip() for s in line.split("=", 1))
        kv[k.lower()] = v
    for req in ("seed", "budget", "n", "c", "exponent", "trials"):
        if req not in kv:
            raise DomainError(f"config is missing required key {req!r}")
    known = {"seed", "budget", "n", "c", "exponent", "trials", "pattern", "method", "workers"}
    extra = sorted(set(kv) - known)
    if extra:
        raise DomainError(f"unknown config keys: {', '.join(extra)}")
    try:
        return SweepConfig(
            n_values=tuple(int(s) for s in _split(kv["n"])),
            exponent=Fraction(kv["exponent"]),
            c_values=tuple(float(s) for s in _split(kv["c"])),
            trials=int(kv["trials"]),
            seed=int(kv["seed"]),
            budget=int(kv["budget"]),
            pattern=kv.get("pattern", "tt3"),
            method=kv.get("method", "constructive-first"),
            workers=int(kv.get("workers", "1")),
        )
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad config value: {exc}") from exc


def read_config(path) -> SweepConfig:
    return parse_config(Path(path).read_text())


# -- sampling ----------------------------------------------------------------------------

def pair_uniforms(n: int, seed: int, trial: int) -> np.ndarray:
    """One uniform per pair (i, j), i < j, in row-major order."""
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))
    return rng.random(n * (n - 1) // 2)


def graph_from_uniforms(n: int, u: np.ndarray, p: float) -> Graph:
    iu, ju = np.triu_indices(n, 1)
    keep = u < p
    return Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def sample_gnp(n: int, p: float, seed: int = 0, trial: int = 0) -> Graph:
    if not 0 <= p <= 1:
        raise DomainError("p must lie in [0, 1]")
    return graph_from_uniforms(n, pair_uniforms(n, seed, trial), p)


# -- deciding one sample ----------------------------------------------------------------------

_CONSTRUCTIVE_MISSES = (
    PreconditionError,
    NotABConstructibleError,
    BlockOrientationError,
    UnsupportedPatternError,
    DensityEnvelopeError,
)


def decide(g: Graph, pattern_name: str, method: str, budget: int):
    """True (arrows), False (does not) or None (indeterminate within budget)."""
    pattern = parse_pattern(pattern_name)
    if method == "tt3-fast":
        if pattern_class(pattern) != "tt" or pattern.n != 3:
            raise DomainError("tt3-fast only decides the transitive triangle")
        res = decide_tt3_fast(g, budget)
    elif method == "oracle":
        res = arrows_component_wise(g, pattern, budget)
    else:
        from .orienters import orient_avoid

        try:
            orient_avoid(g, pattern)
            return False
        except _CONSTRUCTIVE_MISSES:
            pass
        if pattern_class(pattern) == "tt" and pattern.n == 3 and find_k4(g) is not None:
            return True
        res = arrows_component_wise(g, pattern, budget)
    if isinstance(res, Indeterminate):
        return None
    return res.arrows


def _trial_row(args) -> list:
    """Decisions of one coupled trial at every (n, c) point."""
    points, seed, trial, pattern, method, budget = args
    out = []
    cache: dict[int, np.ndarray] = {}
    for n, _, p in points:
        if n not in cache:
            cache[n] = pair_uniforms(n, seed, trial)
        out.append(decide(graph_from_uniforms(n, cache[n], p), pattern, method, budget))
    return out


# -- estimation ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    n: int
    c: float
    p: float
    trials: int
    arrow: int
    indeterminate: int
    estimate: float
    ci_lo: float
    ci_hi: float
    decisions: tuple = field(default=(), compare=False, repr=False)


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([r.n, repr(r.c), repr(r.p), r.trials, r.arrow, r.indeterminate,
                        f"{r.estimate:.6f}", f"{r.ci_lo:.6f}", f"{r.ci_hi:.6f}"])
        return buf.getvalue()


def aggregate(n: int, c: float, p: float, decisions) -> SweepRow:
    decisions = tuple(decisions)
    ind = sum(1 for d in decisions if d is None)
    hits = sum(1 for d in decisions if d is True)
    decided = len(decisions) - ind
    if decided == 0:
        raise DomainError(f"every trial at n={n}, c={c} was indeterminate")
    ci = binomtest(hits, decided).proportion_ci(confidence_level=0.95, method="wilson")
    return SweepRow(n, c, p, len(decisions), hits, ind, hits / decided, float(ci.low), float(ci.high), decisions)


def _run(points, cfg_seed, trials, pattern, method, budget, workers) -> SweepResult:
    jobs = [(points, cfg_seed, t, pattern, method, budget) for t in range(trials)]
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            per_trial = list(ex.map(_trial_row, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        per_trial = [_trial_row(j) for j in jobs]
    rows = [aggregate(n, c, p, [per_trial[t][k] for t in range(trials)]) for k, (n, c, p) in enumerate(points)]
    return SweepResult(tuple(rows))


def estimate_arrow_probability(
    n: int, p: float, pattern: str = "tt3", trials: int = 100, seed: int = 0,
    method: str = "constructive-first", budget: int = 1_000_000, workers: int = 1,
) -> SweepRow:
    if method not in METHODS:
        raise DomainError(f"method must be one of {', '.join(METHODS)}")
    if not 0 <= p <= 1:
        raise DomainError("p must lie in [0, 1]")
    if method == "tt3-fast" and pattern != "tt3":
        raise DomainError("tt3-fast only decides the transitive triangle")
    return _run([(n, float("nan"), p)], seed, trials, pattern, method, budget, workers).rows[0]


def threshold_sweep(cfg: SweepConfig, workers: int | None = None) -> SweepResult:
    if cfg.method == "tt3-fast" and cfg.pattern != "tt3":
        raise DomainError("tt3-fast only decides the transitive triangle")
    points = cfg.points()
    if not points:
        return SweepResult(())
    return _run(points, cfg.seed, cfg.trials, cfg.pattern, cfg.method, cfg.budget, workers or cfg.workers)


# -- desk checks -----------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockCheckReport:
    trials: int
    passing: int
    fraction: float
    worst: Fraction | None
    unknown: int

    def __str__(self):
        return f"{self.passing}/{self.trials} trials with every block below m2 (worst block density {self.worst})"


def blocks_below_m2(g: Graph, h: Graph, bound: Fraction):
    """(all blocks below bound, worst density, density unknown)."""
    cs = copyset_for(g, h)
    if not cs.copies:
        return True, None, False
    union = union_graph(g.n, cs.copies)
    closure = h_closure_peel(union, h, cs)
    worst = None
    for b in closure.blocks:
        try:
            d = max_density(b).value
        except DensityEnvelopeError:
            return False, worst, True
        worst = d if worst is None else max(worst, d)
    return worst is None or worst < bound, worst, False


def block_density_check(n: int, p: float, h: Graph, trials: int, seed: int = 0) -> BlockCheckReport:
    bound = max_2_density(h).value
    ok = 0
    unknown = 0
    worst = None
    for t in range(trials):
        g = sample_gnp(n, p, seed, t)
        good, w, unk = blocks_below_m2(g, h, bound)
        ok += good
        unknown += unk
        if w is not None:
            worst = w if worst is None else max(worst, w)
    return BlockCheckReport(trials, ok, ok / trials if trials else 1.0, worst, unknown)


@dataclass(frozen=True)
class ObstructionReport:
    n: int
    p: float
    trials: int
    mean_k4: float
    mean_w5: float
    mean_j: float
    bound_k4: float
    bound_w5: float
    bound_j: float

    @property
    def within_bounds(self) -> bool:
        return self.mean_k4 <= self.bound_k4 and self.mean_w5 <= self.bound_w5 and self.mean_j <= self.bound_j


def obstruction_count_check(n: int, p: float, trials: int, seed: int = 0) -> ObstructionReport:
    """Mean counts of K4, W5 and J-members against n^4p^6, n^5p^8 and |J| n^6p^9."""
    k4, w5, fam = complete_graph(4), wheel_graph(4), j_family()
    sums = [0, 0, 0]
    for t in range(trials):
        g = sample_gnp(n, p, seed, t)
        sums[0] += count_subgraphs(g, k4)
        sums[1] += count_subgraphs(g, w5)
        sums[2] += sum(count_subgraphs(g, j) for j in fam)
    means = [s / trials for s in sums]
    return ObstructionReport(
        n, p, trials, *means,
        bound_k4=n**4 * p**6, bound_w5=n**5 * p**8, bound_j=len(fam) * n**6 * p**9,
    )


def default_sweep_workers() -> int:
    import os

    return max(1, min(8, os.cpu_count() or 1))


__all__ = [
    "SweepConfig", "SweepResult", "SweepRow", "parse_config", "read_config", "sample_gnp",
    "estimate_arrow_probability", "threshold_sweep", "block_density_check", "obstruction_count_check",
    "decide", "edge_probability",
]
