# One embedded 3-cube. Corner order is binary-counter: bit j of the corner
# index is coordinate j, so v100 sits at index 1 and v001 at index 4.
vertex v000
vertex v001
vertex v010
vertex v011
vertex v100
vertex v101
vertex v110
vertex v111
cube 3 v000 v100 v010 v110 v001 v101 v011 v111
