# Single square with left and right edges identified by a flip. The
# horizontal hyperplane is one-sided (and meets itself at the fold).
vertex a
vertex b
cube 2 a b b a
