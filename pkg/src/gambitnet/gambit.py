"""Group-membership census data and the networks built from it.

Every pair of individuals seen in the same group during a census is taken to
be associated in that census ("gambit of the group").
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import WEIGHTED, Network

COUNT = "count"
FREQUENCY = "frequency"


@dataclass(frozen=True)
class CensusData:
    """Ordered censuses, each a tuple of groups (frozensets of individuals).

    Groups may be empty. ``census_labels`` and ``group_labels`` default to
    positional strings and only matter for CSV round trips.
    """

    censuses: tuple
    census_labels: tuple = None
    group_labels: tuple = None

    def __post_init__(self):
        censuses = tuple(tuple(frozenset(g) for g in census) for census in self.censuses)
        clabels = self.census_labels
        if clabels is None:
            clabels = tuple(str(i) for i in range(len(censuses)))
        glabels = self.group_labels
        if glabels is None:
            glabels = tuple(tuple(str(j) for j in range(len(c))) for c in censuses)
        clabels = tuple(str(c) for c in clabels)
        glabels = tuple(tuple(str(g) for g in gl) for gl in glabels)
        if len(clabels) != len(censuses) or len(set(clabels)) != len(clabels):
            raise ValueError("census labels must be unique, one per census")
        for c, (census, gl) in enumerate(zip(censuses, glabels)):
            if len(gl) != len(census) or len(set(gl)) != len(gl):
                raise ValueError(f"census {clabels[c]!r}: group labels must be unique, one per group")
            seen = set()
            for group in census:
                dup = seen & group
                if dup:
                    who = sorted(dup)[0]
                    raise ValueError(f"census {clabels[c]!r}: individual {who!r} appears in more than one group")
                seen |= group
        object.__setattr__(self, "censuses", censuses)
        object.__setattr__(self, "census_labels", clabels)
        object.__setattr__(self, "group_labels", glabels)

    def __len__(self):
        return len(self.censuses)

    @property
    def individuals(self) -> tuple:
        everyone = set()
        for census in self.censuses:
            for group in census:
                everyone |= group
        return tuple(sorted(everyone))

    def group_sizes(self) -> list[list[int]]:
        return [[len(g) for g in census] for census in self.censuses]

    def prefix(self, n: int) -> "CensusData":
        """The first ``n`` censuses."""
        return CensusData(self.censuses[:n], self.census_labels[:n], self.group_labels[:n])


@dataclass(frozen=True, eq=False)
class OccurrenceMatrix:
    """Binary individuals x group-occasions matrix.

    ``column_census[j]`` is the census index of column ``j``; columns of one
    census are contiguous and in group order.
    """

    cells: np.ndarray
    individuals: tuple
    column_census: np.ndarray
    n_censuses: int
    census_labels: tuple = None
    column_labels: tuple = None

    @property
    def row_sums(self) -> np.ndarray:
        return self.cells.sum(axis=1, dtype=np.int64)

    @property
    def col_sums(self) -> np.ndarray:
        return self.cells.sum(axis=0, dtype=np.int64)

    @property
    def shape(self):
        return self.cells.shape

    def with_cells(self, cells: np.ndarray) -> "OccurrenceMatrix":
        return OccurrenceMatrix(
            cells, self.individuals, self.column_census, self.n_censuses,
            self.census_labels, self.column_labels,
        )

    def census_structure_ok(self) -> bool:
        """True if no individual occupies two columns of the same census."""
        for c in range(self.n_censuses):
            cols = self.column_census == c
            if cols.any() and self.cells[:, cols].sum(axis=1).max() > 1:
                return False
        return True

    def to_census_data(self) -> CensusData:
        censuses, glabels = [], []
        for c in range(self.n_censuses):
            cols = np.flatnonzero(self.column_census == c)
            censuses.append(
                tuple(frozenset(self.individuals[i] for i in np.flatnonzero(self.cells[:, j])) for j in cols)
            )
            glabels.append(tuple(self.column_labels[j] for j in cols) if self.column_labels else None)
        if self.column_labels is None:
            glabels = None
        return CensusData(tuple(censuses), self.census_labels, None if glabels is None else tuple(glabels))


def accumulate(data: CensusData, weighting: str = COUNT) -> Network:
    """Weighted co-membership network.

    Edge weight is the number of censuses in which the pair shared a group
    (``"count"``), or that number divided by the number of censuses
    (``"frequency"``). Every individual ever observed is a node.
    """
    if len(data) == 0:
        raise ValueError("need at least one census")
    if weighting not in (COUNT, FREQUENCY):
        raise ValueError(f"unknown weighting {weighting!r}")
    counts = Counter()
    for census in data.censuses:
        for group in census:
            counts.update(combinations(sorted(group), 2))
    denom = 1 if weighting == COUNT else len(data)
    return Network(data.individuals, {pair: c / denom for pair, c in counts.items()}, kind=WEIGHTED)


def to_occurrence_matrix(data: CensusData) -> OccurrenceMatrix:
    individuals = data.individuals
    row = {ind: i for i, ind in enumerate(individuals)}
    n_cols = sum(len(c) for c in data.censuses)
    cells = np.zeros((len(individuals), n_cols), dtype=np.uint8)
    column_census = np.empty(n_cols, dtype=np.int64)
    labels = []
    j = 0
    for c, census in enumerate(data.censuses):
        for g, group in enumerate(census):
            for ind in group:
                cells[row[ind], j] = 1
            column_census[j] = c
            labels.append(data.group_labels[c][g])
            j += 1
    return OccurrenceMatrix(cells, individuals, column_census, len(data), data.census_labels, tuple(labels))


def cooccurrence(cells: np.ndarray) -> np.ndarray:
    """Pairwise shared-group counts with a zeroed diagonal."""
    x = cells.astype(np.int32, copy=False)
    co = x @ x.T
    np.fill_diagonal(co, 0)
    return co


def network_from_matrix(m: OccurrenceMatrix, weighting: str = COUNT) -> Network:
    """Same network as :func:`accumulate` on the equivalent census data."""
    if m.n_censuses == 0:
        raise ValueError("need at least one census")
    if weighting not in (COUNT, FREQUENCY):
        raise ValueError(f"unknown weighting {weighting!r}")
    co = cooccurrence(m.cells).astype(float)
    if weighting == FREQUENCY:
        co /= m.n_censuses
    return Network.from_adjacency(m.individuals, co, kind=WEIGHTED)
