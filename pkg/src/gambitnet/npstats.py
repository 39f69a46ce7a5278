"""Rank-based tests (Kruskal-Wallis, Wilcoxon rank-sum and signed-rank) and
the meta-analysis of published network assortativities.

p-values use the large-sample approximations with tie and continuity
corrections, the same convention R's ``kruskal.test`` / ``wilcox.test``
fall back to when ties are present.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.stats import chi2, norm

SOCIAL_DIRECT = "social_direct"
SOCIAL_GROUP = "social_group"
NONSOCIAL = "nonsocial"
CLASSES = (SOCIAL_DIRECT, SOCIAL_GROUP, NONSOCIAL)


@dataclass(frozen=True)
class NetworkRecord:
    name: str
    size: int
    network_class: str
    assortativity: float
    type: str = ""
    method: str = ""
    source: str = ""

    def __post_init__(self):
        if not -1 <= self.assortativity <= 1:
            raise ValueError(f"{self.name}: assortativity {self.assortativity} outside [-1, 1]")
        if self.network_class not in CLASSES:
            raise ValueError(f"{self.name}: unknown class {self.network_class!r}")


@dataclass(frozen=True)
class RankTestResult:
    statistic: float
    statistic_name: str
    p_value: float
    df: int | None = None
    tie_corrected: bool = True
    continuity_corrected: bool = False


def classify(net_type: str, method: str) -> str:
    net_type = net_type.strip().lower()
    method = method.strip().lower()
    if net_type == "social" and method == "direct":
        return SOCIAL_DIRECT
    if net_type == "social" and method == "group":
        return SOCIAL_GROUP
    return NONSOCIAL


def rank_with_ties(values: Sequence[float]) -> list[float]:
    """1-based ranks, tied values sharing the mean of their positions."""
    a = np.asarray(values)
    if a.size == 0:
        raise ValueError("cannot rank an empty sequence")
    order = np.argsort(a, kind="mergesort")
    sorted_vals = a[order]
    ranks = np.empty(a.size, dtype=float)
    # boundaries of runs of equal values
    starts = np.flatnonzero(np.r_[True, sorted_vals[1:] != sorted_vals[:-1]])
    ends = np.r_[starts[1:], a.size]
    for s, e in zip(starts, ends):
        ranks[order[s:e]] = (s + 1 + e) / 2.0
    return ranks.tolist()


def _tie_sum(values) -> int:
    _, counts = np.unique(np.asarray(values), return_counts=True)
    return int((counts**3 - counts).sum())


def _two_sided_normal(stat, mean, var, continuity):
    if var <= 0:
        return 1.0
    diff = stat - mean
    if continuity:
        diff -= math.copysign(0.5, diff) if diff != 0 else 0.0
    z = diff / math.sqrt(var)
    return float(min(1.0, 2 * min(norm.cdf(z), norm.sf(z))))


def kruskal_wallis(*groups: Sequence[float]) -> RankTestResult:
    """Tie-corrected Kruskal-Wallis H with a chi-squared (df = k - 1) p-value."""
    if len(groups) < 2 or any(len(g) == 0 for g in groups):
        raise ValueError("need at least two non-empty groups")
    pooled = np.concatenate([np.asarray(g, dtype=float) for g in groups])
    n = len(pooled)
    if n < 3:
        raise ValueError("need at least three observations")
    ranks = np.asarray(rank_with_ties(pooled))
    correction = 1 - _tie_sum(pooled) / (n**3 - n)
    if correction == 0:
        raise ValueError("all values are tied; H is undefined")
    # centred form: no cancellation, and exactly 0 when mean ranks coincide
    h, start, centre = 0.0, 0, (n + 1) / 2
    for g in groups:
        r = ranks[start : start + len(g)]
        h += len(g) * (r.mean() - centre) ** 2
        start += len(g)
    h = 12 / (n * (n + 1)) * h / correction
    df = len(groups) - 1
    return RankTestResult(h, "H", float(chi2.sf(h, df)), df=df)


def wilcoxon_rank_sum(a: Sequence[float], b: Sequence[float], continuity: bool = True) -> RankTestResult:
    """Two-sample rank-sum test; W is the Mann-Whitney U of the first sample."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    na, nb = len(a), len(b)
    if na == 0 or nb == 0:
        raise ValueError("both samples must be non-empty")
    pooled = np.concatenate([a, b])
    n = na + nb
    ranks = np.asarray(rank_with_ties(pooled))
    w = ranks[:na].sum() - na * (na + 1) / 2
    var = na * nb / 12 * ((n + 1) - _tie_sum(pooled) / (n * (n - 1)))
    p = _two_sided_normal(w, na * nb / 2, var, continuity)
    return RankTestResult(float(w), "W", p, continuity_corrected=continuity)


def wilcoxon_signed_rank(values: Sequence[float], mu: float = 0.0, continuity: bool = True) -> RankTestResult:
    """One-sample signed-rank test against ``mu``.

    Values equal to ``mu`` are dropped before ranking; V is the rank sum of the
    positive differences.
    """
    d = np.asarray(values, dtype=float) - mu
    d = d[d != 0]
    m = len(d)
    if m == 0:
        raise ValueError("all values equal mu; V is undefined")
    ranks = np.asarray(rank_with_ties(np.abs(d)))
    v = ranks[d > 0].sum()
    var = m * (m + 1) * (2 * m + 1) / 24 - _tie_sum(np.abs(d)) / 48
    p = _two_sided_normal(v, m * (m + 1) / 4, var, continuity)
    return RankTestResult(float(v), "V", p, continuity_corrected=continuity)


def load_records(path=None) -> list[NetworkRecord]:
    """Read a ``name,size,type,assortativity,method,source`` CSV.

    With no path, the bundled 88-network table is loaded.
    """
    if path is None:
        handle = resources.files("gambitnet.data").joinpath("table1.csv").open(encoding="utf-8", newline="")
    else:
        handle = open(path, encoding="utf-8", newline="")
    with handle as fh:
        reader = csv.DictReader(fh)
        expected = ["name", "size", "type", "assortativity", "method", "source"]
        if reader.fieldnames != expected:
            raise ValueError(f"dataset header must be {','.join(expected)}, got {reader.fieldnames}")
        records = []
        for lineno, row in enumerate(reader, start=2):
            try:
                records.append(
                    NetworkRecord(
                        name=row["name"],
                        size=int(row["size"]),
                        network_class=classify(row["type"], row["method"]),
                        assortativity=float(row["assortativity"]),
                        type=row["type"],
                        method=row["method"],
                        source=row["source"],
                    )
                )
            except (TypeError, ValueError) as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
    if not records:
        raise ValueError("dataset is empty")
    return records


def _result_dict(res: RankTestResult, **extra) -> dict:
    out = {"statistic_name": res.statistic_name, "statistic": res.statistic, "p_value": res.p_value}
    if res.df is not None:
        out["df"] = res.df
    out.update(extra)
    return out


def meta_analysis(records: Sequence[NetworkRecord]) -> dict:
    """Class means, Kruskal-Wallis across classes, pairwise rank-sum tests and
    one-sample signed-rank tests against zero.

    Rank-sum W is reported for both orientations since which sample counts as
    "first" is a convention.
    """
    by_class = {}
    for rec in records:
        by_class.setdefault(rec.network_class, []).append(rec.assortativity)
    present = [c for c in CLASSES if c in by_class]
    if len(present) < 2:
        raise ValueError("meta-analysis needs at least two network classes")

    report = {
        "n_networks": len(records),
        "classes": {
            c: {"n": len(by_class[c]), "mean": float(np.mean(by_class[c]))} for c in present
        },
        "kruskal_wallis": _result_dict(kruskal_wallis(*(by_class[c] for c in present))),
        "rank_sum": [],
        "signed_rank": {},
    }
    for first, second in combinations(present, 2):
        res = wilcoxon_rank_sum(by_class[first], by_class[second])
        n1, n2 = len(by_class[first]), len(by_class[second])
        report["rank_sum"].append(
            _result_dict(
                res,
                first=first,
                second=second,
                n_first=n1,
                n_second=n2,
                statistic_complement=n1 * n2 - res.statistic,
            )
        )
    for c in present:
        res = wilcoxon_signed_rank(by_class[c])
        report["signed_rank"][c] = _result_dict(res, n=len(by_class[c]), mu=0.0)
    return report
