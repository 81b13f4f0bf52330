# Square with two corners identified: the vertical hyperplane crosses
# itself inside the square and nothing else goes wrong.
vertex a
vertex b
vertex c
cube 2 a b b c
