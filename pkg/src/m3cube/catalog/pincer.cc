# Two hyperplanes that cross in the left squares and touch again at d
# without a square: an inter-osculating pair with clean single planes.
vertex a
vertex b
vertex c
vertex d
vertex e
vertex f
vertex h
cube 2 a b c d
cube 2 c d e f
cube 2 b f d h
