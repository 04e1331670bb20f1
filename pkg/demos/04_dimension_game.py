"""The dimension game: B names demands, A answers minimal covers.

Run:  python3 demos/04_dimension_game.py
"""

import asdimlab as al

line = al.interval_space(-8, 8)
cfg = al.GameConfig(bound=2, kcap=5, rmax=4)

g = al.new_game(line, cfg)
for r in (2, 2):
    g = al.a_respond(al.b_move(g, r))
    last = g.rounds[-1]
    print(f"B plays r={last.r}; A answers k={last.k}; status: {g.status}")

print("transcript valid:", al.validate_transcript(g).ok)
print("stabilized at round:", al.is_stabilized(g))

# If A may use only one family, B wins immediately on the 5-point interval.
small = al.interval_space(-2, 2)
beaten = al.play_script(small, al.GameConfig(bound=2, kcap=1, rmax=6), [2])
print(f"\nkcap=1 on [-2,2]: status {beaten.status} (B's demand: {beaten.failed_r})")

# The set of B-prefixes that keep the game alive is exactly the
# nondecreasing empirical tree at matched caps.
tree = al.empirical_dim_tree(
    line, al.EmpiricalTreeConfig(rmax=3, lmax=3, bound=2, variant="nondecreasing")
)
seq = (2, 3)
played = al.play_script(line, al.GameConfig(bound=2, kcap=5, rmax=3), seq)
print(f"\nB script {seq}: A won within {len(seq)} rounds:",
      played.status == "a-wins")
print(f"{seq} in the empirical tree:", seq in tree)
