# One embedded square; both hyperplanes are clean.
vertex a
vertex b
vertex c
vertex d
cube 2 a b c d
