# Three squares in a cycle with one flip: the core hyperplane is one-sided
# and nothing else goes wrong.
vertex x0
vertex x1
vertex x2
vertex y0
vertex y1
vertex y2
cube 2 x0 x1 y0 y1
cube 2 x1 x2 y1 y2
cube 2 x2 y0 y2 x0
