# 3-cube with two pairs of corners identified: one hyperplane self
# intersects and the doubled link simplices break the NPC condition.
vertex A
vertex B
vertex C
vertex D
vertex E
vertex F
cube 3 A B B C D E E F
