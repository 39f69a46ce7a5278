"""Random group-membership simulation.

A population of freely mixing individuals is split into groups every census,
with group sizes drawn from a symmetric Dirichlet. Association networks are
accumulated census by census, dichotomized (or filtered at a frequency
threshold) and their Newman assortativity recorded.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .gambit import CensusData
from .measures import newman_from_adjacency


@dataclass(frozen=True)
class SimulationConfig:
    population: int = 100
    groups_per_census: int = 20
    censuses: int = 20
    runs: int = 10
    dirichlet_alpha: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.population < 2:
            raise ValueError("population must be at least 2")
        if self.groups_per_census < 1:
            raise ValueError("groups_per_census must be at least 1")
        if self.censuses < 1:
            raise ValueError("censuses must be at least 1")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if not self.dirichlet_alpha > 0:
            raise ValueError("dirichlet_alpha must be positive")

    def as_dict(self) -> dict:
        return asdict(self)


# "decay_50" raises the replicate count to pin down how r fades with effort;
# 10 censuses at full sampling is a common minimum for group-based data.
PRESETS = {
    "decay": SimulationConfig(),
    "decay_50": SimulationConfig(runs=50),
    "filtering": SimulationConfig(censuses=10, runs=50),
    "small": SimulationConfig(population=50, groups_per_census=10, censuses=10, runs=1),
}


@dataclass(frozen=True, eq=False)
class SimulationTrace:
    """Per-run, per-census results; row ``r`` column ``c`` is after census ``c + 1``.

    ``assortativity`` holds NaN exactly where ``defined`` is False; always
    consult ``defined`` rather than testing for NaN.
    """

    config: SimulationConfig
    assortativity: np.ndarray
    defined: np.ndarray
    edges: np.ndarray
    associations_observed: np.ndarray
    data: tuple
    threshold: float | None = None

    def rows(self):
        """Yield ``(run, census, value_or_None, edges, associations)`` with 1-based indices."""
        runs, cens = self.defined.shape
        for r in range(runs):
            for c in range(cens):
                val = float(self.assortativity[r, c]) if self.defined[r, c] else None
                yield r + 1, c + 1, val, int(self.edges[r, c]), int(self.associations_observed[r, c])


@dataclass(frozen=True, eq=False)
class TraceSummary:
    """Per-census order statistics over defined run values.

    Entries are None where every run was undefined at that census.
    """

    census: np.ndarray
    median: list
    q25: list
    q75: list
    min: list
    max: list
    n_undefined: np.ndarray

    def rows(self):
        for i, c in enumerate(self.census):
            yield int(c), self.median[i], self.q25[i], self.q75[i], self.min[i], self.max[i], int(self.n_undefined[i])


def draw_group_sizes(population: int, groups: int, alpha: float, rng: np.random.Generator) -> np.ndarray:
    """Group sizes for one census.

    Proportions come from a symmetric Dirichlet(alpha) built from normalised
    unit-scale Gamma draws; sizes are the floored shares of the population and
    each leftover individual is added to a uniformly chosen group. Sizes sum
    to ``population`` and may be zero.
    """
    while True:
        g = rng.gamma(alpha, 1.0, size=groups)
        total = g.sum()
        if total > 0:  # tiny alpha can underflow every draw to 0
            break
    sizes = np.floor(population * (g / total)).astype(np.int64)
    remainder = population - int(sizes.sum())
    if remainder:
        np.add.at(sizes, rng.integers(0, groups, size=remainder), 1)
    return sizes


def run_census(individuals, sizes, rng: np.random.Generator) -> tuple:
    """Uniformly random partition of ``individuals`` into groups of the given sizes."""
    sizes = [int(s) for s in sizes]
    individuals = list(individuals)
    if sum(sizes) != len(individuals) or min(sizes, default=0) < 0:
        raise ValueError(f"group sizes {sizes} do not partition {len(individuals)} individuals")
    order = rng.permutation(len(individuals))
    bounds = np.cumsum([0] + sizes)
    return tuple(frozenset(individuals[i] for i in order[a:b]) for a, b in zip(bounds[:-1], bounds[1:]))


def _census_indices(cfg: SimulationConfig, rng) -> list:
    """Per census, a list of index arrays (one per group)."""
    out = []
    for _ in range(cfg.censuses):
        sizes = draw_group_sizes(cfg.population, cfg.groups_per_census, cfg.dirichlet_alpha, rng)
        order = rng.permutation(cfg.population)
        bounds = np.cumsum(np.r_[0, sizes])
        out.append([order[a:b] for a, b in zip(bounds[:-1], bounds[1:])])
    return out


def _names(n: int) -> list:
    width = len(str(n - 1))
    return [f"i{i:0{width}d}" for i in range(n)]


def _run_trace(cfg: SimulationConfig, seq: np.random.SeedSequence, thresholds):
    rng = np.random.default_rng(seq)
    indices = _census_indices(cfg, rng)
    n = cfg.population
    counts = np.zeros((n, n), dtype=np.int64)
    k = len(thresholds)
    r = np.full((k, cfg.censuses), np.nan)
    ok = np.zeros((k, cfg.censuses), dtype=bool)
    edges = np.zeros((k, cfg.censuses), dtype=np.int64)
    assoc = np.zeros(cfg.censuses, dtype=np.int64)
    observed = 0
    for c, groups in enumerate(indices):
        for idx in groups:
            counts[np.ix_(idx, idx)] += 1
            observed += len(idx) * (len(idx) - 1) // 2
        np.fill_diagonal(counts, 0)
        assoc[c] = observed
        for t, thr in enumerate(thresholds):
            adj = counts > 0 if thr is None else (counts / (c + 1)) >= thr
            np.fill_diagonal(adj, False)
            edges[t, c] = int(adj.sum()) // 2
            val = newman_from_adjacency(adj)
            if val is not None:
                r[t, c], ok[t, c] = val, True
    names = _names(n)
    data = CensusData(tuple(tuple(frozenset(names[i] for i in idx) for idx in groups) for groups in indices))
    return r, ok, edges, assoc, data


def _run_all(cfg: SimulationConfig, thresholds, threads: int):
    seqs = np.random.SeedSequence(cfg.seed).spawn(cfg.runs)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda s: _run_trace(cfg, s, thresholds), seqs))
    else:
        results = [_run_trace(cfg, s, thresholds) for s in seqs]
    traces = []
    for t, thr in enumerate(thresholds):
        traces.append(
            SimulationTrace(
                config=cfg,
                assortativity=np.stack([res[0][t] for res in results]),
                defined=np.stack([res[1][t] for res in results]),
                edges=np.stack([res[2][t] for res in results]),
                associations_observed=np.stack([res[3] for res in results]),
                data=tuple(res[4] for res in results),
                threshold=thr,
            )
        )
    return traces


def run_simulation(cfg: SimulationConfig, threads: int = 1) -> SimulationTrace:
    """Dichotomized cumulative-network assortativity for every run and census.

    Each run draws from its own RNG stream spawned from ``cfg.seed``, so the
    result does not depend on ``threads``.
    """
    return _run_all(cfg, [None], threads)[0]


def filtering_experiment(cfg: SimulationConfig, thresholds, threads: int = 1) -> dict:
    """Same simulation as :func:`run_simulation`, but the cumulative network
    (frequency weights, i.e. shared censuses / censuses so far) is filtered at
    each threshold before measuring.

    Returns ``{threshold: SimulationTrace}``; the census data are identical to
    those of ``run_simulation(cfg)``.
    """
    thresholds = [float(t) for t in thresholds]
    if not thresholds:
        raise ValueError("need at least one threshold")
    for t in thresholds:
        if not 0 < t <= 1:
            raise ValueError(f"frequency threshold must lie in (0, 1], got {t}")
    traces = _run_all(cfg, thresholds, threads)
    return dict(zip(thresholds, traces))


def summarize_trace(trace: SimulationTrace) -> TraceSummary:
    runs, cens = trace.defined.shape
    stats = {name: [] for name in ("median", "q25", "q75", "min", "max")}
    for c in range(cens):
        vals = trace.assortativity[trace.defined[:, c], c]
        if len(vals) == 0:
            for lst in stats.values():
                lst.append(None)
            continue
        q25, med, q75 = np.percentile(vals, [25, 50, 75])
        stats["median"].append(float(med))
        stats["q25"].append(float(q25))
        stats["q75"].append(float(q75))
        stats["min"].append(float(vals.min()))
        stats["max"].append(float(vals.max()))
    return TraceSummary(
        census=np.arange(1, cens + 1),
        n_undefined=(~trace.defined).sum(axis=0),
        **stats,
    )
