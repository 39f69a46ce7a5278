"""
Assortativity of random group networks as sightings accumulate
==============================================================

Individuals join random groups each census, so any degree correlation is an
artefact of the construction. Watch it fade as censuses accumulate.
"""

from gambitnet.simulate import PRESETS, run_simulation, summarize_trace

cfg = PRESETS["decay"]
print(cfg)

trace = run_simulation(cfg)
summary = summarize_trace(trace)


def show(x):
    return "   undef" if x is None else f"{x:+8.3f}"


print("census  median      q25      q75  undefined")
for census, med, q25, q75, _, _, n_undef in summary.rows():
    print(f"{census:6d} {show(med)} {show(q25)} {show(q75)} {n_undef:10d}")
