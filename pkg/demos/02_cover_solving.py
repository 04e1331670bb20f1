"""Cover feasibility: exact verdicts, witnesses, the brick construction.

Run:  python3 demos/02_cover_solving.py
"""

import asdimlab as al

# The small-cube obstruction: one 2-disjoint family of diameter <= 2 cannot
# cover the 5-point interval, and the independent enumeration agrees.
line = al.interval_space(-2, 2)
print("[-2,2], s=(2),  D=2:", al.solve_s_cover(line, (2,), 2).status)
print("oracle says:        ", al.exhaustive_cover_oracle(line, (2,), 2))

# Two families suffice.
res = al.solve_s_cover(line, (2, 2), 2)
print("[-2,2], s=(2,2),D=2:", res.status)
for i, fam in enumerate(res.witness.families):
    print(f"  family {i}:", [sorted(s, key=int) for s in fam.sets])

# Same story one dimension up: the 5x5 grid defeats two families.
square = al.build_grid_space(2, 1, 2)
print("\n[-2,2]^2, s=(2,2), D=2:", al.solve_s_cover(square, (2, 2), 2).status)
d = al.seq_dimension(square, (2,), 3)
print("least sufficient family count minus one:", d.dimension)

# The brick construction shows n+1 families always suffice at scale r.
bc = al.brick_cover(2, 4, 16)
rep = al.check_s_cover(bc.space, bc.cover)
print(f"\nbrick cover of {bc.space.label}: {len(bc.cover.families)} families, "
      f"bound {bc.cover.bound} <= {bc.c_constant}*4, valid: {rep.ok}")

# Per-space feasibility without a uniform bound: every interval [0,m] is
# coverable at bound m, but no bound 4 works for the whole family.
spaces = [al.interval_space(0, m) for m in range(13)]
uni = al.family_solve_uniform(spaces, (2,), 4)
print(f"\nuniform bound 4 over intervals [0,m], m<=12: {uni.status} "
      f"(first failing: {uni.failing_label})")
