# Six-square annulus whose core circle is wrapped twice around a triangle:
# the rung hyperplane stays two-sided and embedded but osculates itself at
# Y, Q and S, where two of its dual edges meet without a shared square.
vertex Q
vertex S
vertex Y
vertex x0
vertex x1
vertex x2
vertex x3
vertex x4
vertex x5
cube 2 x0 x1 Y Q
cube 2 x1 x2 Q S
cube 2 x2 x3 S Y
cube 2 x3 x4 Y Q
cube 2 x4 x5 Q S
cube 2 x5 x0 S Y
