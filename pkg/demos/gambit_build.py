"""
From group sightings to an association network
==============================================

"""

from gambitnet import CensusData, accumulate, dichotomize, filter_edges
from gambitnet.gambit import network_from_matrix, to_occurrence_matrix

# two censuses; everyone in a group is assumed associated with everyone else
data = CensusData(
    [
        [{"A", "B", "C"}, {"D", "E"}],
        [{"A", "B"}, {"C", "D"}, {"E"}],
    ],
    census_labels=["morning", "evening"],
)

counts = accumulate(data)
print("count weights    :", dict(counts.edges))

freq = accumulate(data, "frequency")
print("frequency weights:", dict(freq.edges))

# the same network through the individuals x groups occurrence matrix
m = to_occurrence_matrix(data)
print("occurrence matrix\n", m.cells)
assert network_from_matrix(m, "frequency") == freq

print("binary edges     :", sorted(dichotomize(counts).edges))
print("kept at freq 1.0 :", sorted(filter_edges(freq, 1.0).edges))
