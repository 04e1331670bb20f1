"""Spaces: lattice boxes, stacked lattices, asymptotic sums, nets.

Run:  python3 demos/01_spaces_and_nets.py
"""

import asdimlab as al

# A lattice box with the taxicab metric.  Point ids are the coordinates.
square = al.build_grid_space(2, 1, 2)
print(f"{square.label}: {square.n_points} points")
print("d((1,1), (-1,-1)) =", square.dist("1,1", "-1,-1"))
al.validate_metric(square)
print("metric axioms verified exhaustively")

# The stacked-lattice space: axis i quantized by c_i.
cup = al.build_cup_c_space((1, 2, 4), 3, 4)
print(f"\n{cup.label}: {cup.n_points} points")
print("(0,2,0) present:", "0,2,0" in cup.points)
print("(0,1,0) present:", "0,1,0" in cup.points)

# Asymptotic sum: parts placed with growing gaps through basepoints.
part = al.interval_space(0, 1)
summed = al.build_asymptotic_sum([part] * 3, ["0", "0", "0"], [2, 3, 5])
print(f"\n{summed.label}:")
print("d(part0's 1, part2's 1) =", summed.dist("0:1", "2:1"), "(= 1 + (2+3+5) + 1)")
al.validate_metric(summed)

# Greedy nets: maximal r-separated subsets with a retraction witness.
line = al.interval_space(0, 5)
net, witness = al.greedy_r_net(line, 2)
print(f"\n2-net of {{0..5}}: {net.points}")
report = al.check_coarse_embedding(witness)
print("retraction satisfies its declared controls:", report.ok)

net2, _ = al.greedy_r_net(net, 2)
print("net of the net is the net itself:", net2.points == net.points)
