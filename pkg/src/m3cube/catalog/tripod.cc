# Three squares sharing a corner pairwise along three edges: the link at o
# has an empty triangle, so the complex is not nonpositively curved.
vertex o
vertex x
vertex xy
vertex xz
vertex y
vertex yz
vertex z
cube 2 o x y xy
cube 2 o x z xz
cube 2 o y z yz
