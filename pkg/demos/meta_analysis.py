"""
Published assortativities by network class
==========================================

"""

from gambitnet.npstats import load_records, meta_analysis

records = load_records()
report = meta_analysis(records)

for cls, info in report["classes"].items():
    print(f"{cls:14s} n={info['n']:2d} mean={info['mean']:+.3f}")

kw = report["kruskal_wallis"]
print(f"\nKruskal-Wallis H = {kw['statistic']:.2f}, df = {kw['df']}, p = {kw['p_value']:.2g}")

for rs in report["rank_sum"]:
    print(f"{rs['first']} vs {rs['second']}: W = {rs['statistic']:g} / {rs['statistic_complement']:g}, p = {rs['p_value']:.3g}")

for cls, sr in report["signed_rank"].items():
    print(f"{cls} vs 0: V = {sr['statistic']:g}, p = {sr['p_value']:.3g}")
