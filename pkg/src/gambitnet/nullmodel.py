"""Group-size-preserving null models for census data and Monte-Carlo tests.

Two randomizations are offered:

``resample``
    Each census independently: the individuals seen in it are dealt at random
    into groups with the census's original sizes.

``swap``
    A Markov chain of checkerboard swaps on the occurrence matrix. Swaps only
    pair columns of the same census, so group sizes, each individual's number
    of sightings, and the one-group-per-census constraint are all kept.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numba
import numpy as np

from .gambit import CensusData, OccurrenceMatrix, cooccurrence, to_occurrence_matrix
from .graph import BINARY, Network
from .measures import ADJACENCY_STATISTICS, AssortativityResult

RESAMPLE = "resample"
SWAP = "swap"
MAX_DRAWS = 100
_BUFFER = 1 << 16


class UndefinedStatisticError(ValueError):
    """The statistic has no value on the observed network."""


@dataclass(frozen=True)
class PermutationTestResult:
    statistic: str
    method: str
    observed: float
    null_values: list = field(repr=False)
    n_undefined: int
    p_greater: float
    p_less: float
    p_two_sided: float
    replicates: int
    burn_in: int
    thin: int
    seed: int


def resample_groups(data: CensusData, rng: np.random.Generator) -> CensusData:
    """Reassign each census's participants uniformly at random to groups of
    the original sizes (group order and labels are kept)."""
    new = []
    for census in data.censuses:
        members = sorted(set().union(*census)) if census else []
        order = rng.permutation(len(members))
        pos = 0
        groups = []
        for g in census:
            groups.append(frozenset(members[i] for i in order[pos : pos + len(g)]))
            pos += len(g)
        new.append(tuple(groups))
    return CensusData(tuple(new), data.census_labels, data.group_labels)


@numba.njit(cache=True)
def _swap_kernel(cells, cell_row, cell_col, cell_census, start, stop, n_steps, max_draws, u):
    # Runs until n_steps swaps are attempted or the uniform buffer could run
    # dry inside a step. Returns (steps taken, uniforms consumed, swaps made).
    n_ones = cell_row.shape[0]
    used = 0
    done = 0
    swapped = 0
    if n_ones == 0:
        return n_steps, 0, 0
    while done < n_steps and used + 2 * max_draws <= u.shape[0]:
        for _ in range(max_draws):
            k1 = min(int(u[used] * n_ones), n_ones - 1)
            c = cell_census[k1]
            width = stop[c] - start[c]
            k2 = start[c] + min(int(u[used + 1] * width), width - 1)
            used += 2
            i = cell_row[k1]
            g = cell_col[k1]
            j = cell_row[k2]
            h = cell_col[k2]
            if g != h and cells[i, h] == 0 and cells[j, g] == 0:
                cells[i, g] = 0
                cells[j, h] = 0
                cells[i, h] = 1
                cells[j, g] = 1
                cell_col[k1] = h
                cell_col[k2] = g
                swapped += 1
                break
        done += 1
    return done, used, swapped


class SwapChain:
    """Checkerboard-swap Markov chain over an occurrence matrix.

    A step draws a random 1-cell (i, g) and a random 1-cell (j, h) from the
    same census; if i is absent from h and j from g the 2x2 block is flipped.
    Up to ``max_draws`` draws are made per step before giving up and leaving
    the matrix unchanged. Because every individual is in at most one group per
    census, the number of valid swaps depends only on the group sizes, so the
    retries keep the proposal symmetric and the chain's stationary law uniform.
    """

    def __init__(self, m: OccurrenceMatrix, rng: np.random.Generator, max_draws: int = MAX_DRAWS):
        self.template = m
        self.rng = rng
        self.max_draws = int(max_draws)
        self.cells = np.array(m.cells, dtype=np.uint8, copy=True)
        rows, cols = np.nonzero(self.cells)
        census = m.column_census[cols]
        order = np.lexsort((rows, cols, census))
        self.cell_row = rows[order].astype(np.int64)
        self.cell_col = cols[order].astype(np.int64)
        self.cell_census = census[order].astype(np.int64)
        n_c = max(m.n_censuses, 1)
        counts = np.bincount(self.cell_census, minlength=n_c)
        self.start = np.r_[0, np.cumsum(counts)[:-1]].astype(np.int64)
        self.stop = np.cumsum(counts).astype(np.int64)
        self.steps = 0
        self.swaps = 0

    @property
    def n_ones(self) -> int:
        return len(self.cell_row)

    def advance(self, n_steps: int) -> None:
        remaining = int(n_steps)
        while remaining > 0:
            size = min(_BUFFER, 2 * self.max_draws * remaining)
            u = self.rng.random(max(size, 2 * self.max_draws))
            done, _, swapped = _swap_kernel(
                self.cells, self.cell_row, self.cell_col, self.cell_census,
                self.start, self.stop, remaining, self.max_draws, u,
            )
            remaining -= done
            self.steps += done
            self.swaps += swapped

    def matrix(self) -> OccurrenceMatrix:
        return self.template.with_cells(self.cells.copy())


def swap_step(m: OccurrenceMatrix, rng: np.random.Generator, max_draws: int = MAX_DRAWS) -> OccurrenceMatrix:
    """One checkerboard swap within a census; returns a new matrix.

    The input is returned unchanged (as a copy) if no valid swap turns up in
    ``max_draws`` draws.
    """
    chain = SwapChain(m, rng, max_draws)
    chain.advance(1)
    return chain.matrix()


def _adjacency_statistic(statistic, individuals):
    if isinstance(statistic, str):
        try:
            return statistic, ADJACENCY_STATISTICS[statistic]
        except KeyError:
            raise ValueError(f"unknown statistic {statistic!r}") from None

    def on_network(adj):
        res = statistic(Network.from_adjacency(individuals, adj.astype(float), kind=BINARY))
        if isinstance(res, AssortativityResult):
            return res.value
        return None if res is None else float(res)

    return getattr(statistic, "__name__", "custom"), on_network


def _binary_adjacency(cells):
    return cooccurrence(cells) > 0


def _check_matrix(m: OccurrenceMatrix, cells, rows, cols):
    if not (
        np.array_equal(cells.sum(axis=1, dtype=np.int64), rows)
        and np.array_equal(cells.sum(axis=0, dtype=np.int64), cols)
        and m.with_cells(cells).census_structure_ok()
    ):
        raise AssertionError("swap chain broke the occurrence-matrix margins")


def p_values(observed: float, null_defined) -> tuple[float, float, float]:
    """Add-one Monte-Carlo p-values (greater, less, two-sided)."""
    null = np.asarray(null_defined, dtype=float)
    n = len(null)
    p_greater = (1 + int((null >= observed).sum())) / (1 + n)
    p_less = (1 + int((null <= observed).sum())) / (1 + n)
    return p_greater, p_less, min(1.0, 2 * min(p_greater, p_less))


def permutation_test(
    data: CensusData,
    statistic="newman",
    replicates: int = 1000,
    method: str = SWAP,
    burn_in: int | None = None,
    thin: int | None = None,
    seed: int = 0,
    threads: int = 1,
    validate: bool = False,
) -> PermutationTestResult:
    """Compare a statistic of the observed binary association network with its
    distribution under a group-size-preserving null model.

    ``statistic`` is ``"newman"``, ``"spearman"`` or a callable taking a binary
    :class:`Network` and returning a float, None, or an AssortativityResult.
    For the swap method ``burn_in`` defaults to 1000 steps per 1-cell and
    ``thin`` to one step per 1-cell. Undefined null replicates are counted in
    ``n_undefined`` and left out of the p-values. ``validate`` re-checks
    margins and census structure at every recorded swap state.
    """
    if replicates < 1:
        raise ValueError("replicates must be at least 1")
    if method not in (RESAMPLE, SWAP):
        raise ValueError(f"unknown method {method!r}")
    m = to_occurrence_matrix(data)
    name, stat = _adjacency_statistic(statistic, m.individuals)

    observed = stat(_binary_adjacency(m.cells))
    if observed is None:
        raise UndefinedStatisticError(
            f"{name} is undefined on the observed binary network (no edges or zero degree "
            "variance); with this much co-membership analyse the weighted network instead"
        )

    n_ones = int(m.cells.sum())
    if method == SWAP:
        burn_in = 1000 * n_ones if burn_in is None else int(burn_in)
        thin = n_ones if thin is None else int(thin)
        if burn_in < 0 or thin < 1:
            raise ValueError("swap method needs burn_in >= 0 and thin >= 1")
        null = _swap_nulls(m, stat, replicates, burn_in, thin, seed, validate)
    else:
        burn_in, thin = 0, 1
        null = _resample_nulls(m, stat, replicates, seed, threads)

    defined = [v for v in null if v is not None]
    pg, pl, p2 = p_values(observed, defined)
    return PermutationTestResult(
        statistic=name,
        method=method,
        observed=float(observed),
        null_values=null,
        n_undefined=len(null) - len(defined),
        p_greater=pg,
        p_less=pl,
        p_two_sided=p2,
        replicates=replicates,
        burn_in=burn_in,
        thin=thin,
        seed=seed,
    )


def _swap_nulls(m, stat, replicates, burn_in, thin, seed, validate):
    chain = SwapChain(m, np.random.default_rng(seed))
    rows, cols = m.row_sums, m.col_sums
    chain.advance(burn_in)
    null = []
    for i in range(replicates):
        if i:
            chain.advance(thin)
        if validate:
            _check_matrix(m, chain.cells, rows, cols)
        null.append(stat(_binary_adjacency(chain.cells)))
    return null


def _resample_nulls(m, stat, replicates, seed, threads):
    # per census: participant rows and the column range of its groups
    layout = []
    for c in range(m.n_censuses):
        cols = np.flatnonzero(m.column_census == c)
        participants = np.flatnonzero(m.cells[:, cols].any(axis=1)) if len(cols) else np.empty(0, int)
        sizes = m.cells[:, cols].sum(axis=0, dtype=np.int64)
        col_of_slot = np.repeat(cols, sizes)
        layout.append((participants, col_of_slot))
    seqs = np.random.SeedSequence(seed).spawn(replicates)

    def one(seq):
        rng = np.random.default_rng(seq)
        cells = np.zeros_like(m.cells)
        for participants, col_of_slot in layout:
            cells[rng.permutation(participants), col_of_slot] = 1
        return stat(_binary_adjacency(cells))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, seqs))
    return [one(s) for s in seqs]
