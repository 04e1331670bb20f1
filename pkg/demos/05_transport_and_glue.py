"""Moving covers around: traces, transport along coarse maps, gluing,
sums and fiberwise composition.

Run:  python3 demos/05_transport_and_glue.py
"""

import asdimlab as al

line = al.interval_space(-4, 4)
cover = al.solve_s_cover(line, (2, 2), 3).witness

# Trace: restriction to a subset stays valid with the same declarations.
sub, traced = al.trace_cover(line, cover, [str(v) for v in range(-2, 3)])
print("trace valid on the subset:", al.check_s_cover(sub, traced).ok)

# Transport along x -> 2x into the even sublattice.
src = al.interval_space(0, 6)
tgt = al.subspace(al.interval_space(0, 12), [str(2 * i) for i in range(7)], label="2Z12")
doubling = al.CoarseMap(
    src, tgt, {p: str(2 * int(p)) for p in src.points},
    al.ControlPair(al.StepFunction.scale(2), al.StepFunction.scale(2), 0),
)
src_cover = al.make_cover(src.label, (3, 3), 2,
                          [[{"0", "1", "2"}, {"6"}], [{"3", "4", "5"}]])
out = al.transport_cover(src_cover, doubling, E=2)
print("\ntransported demands:", out.cover.demands, "bound:", out.cover.bound)
print("transported cover valid:", al.check_s_cover(tgt, out.cover).ok)

# Glue: traces along a chain reassemble into a cover of the union.
b1, b2, b3 = ["0"], ["-1", "0", "1"], list(line.points)
provided = [al.trace_cover(line, cover, b)[1] for b in (b1, b2, b3)]
glued = al.glue_covers(line, [b1, b2, b3], provided, mode="chain")
print("\nglue over the chain succeeded:", glued.ok)

# ...and fails honestly when no consistent global cover exists.
tiny = al.interval_space(-2, 2)
pinned = [al.make_cover("x", (2,), 2, [[{"0"}]])]
failed = al.glue_covers(tiny, [["0"], tiny.points], [pinned, None], s=(2,), D=2)
print("glue against an infeasible level fails:", not failed.ok)

# Sums: identically-demanded covers of far-apart parts merge familywise.
space, merged = al.finite_sum_cover([(line, cover), (line, cover)], separation=10)
print("\nsum-space cover valid:", al.check_s_cover(space, merged).ok)

# Fibering: a cover of the base plus covers of the preimages composes.
X = al.build_grid_space(2, 1, 2)
Y = al.interval_space(-2, 2, label="base")
proj = {p: p.split(",")[0] for p in X.points}
expansive = al.CoarseMap(
    X, Y, proj,
    al.ControlPair(al.StepFunction(breaks=((0, 0), (100, 0))), al.StepFunction.identity(), 0),
)
base = al.solve_s_cover(Y, (3, 3), 2).witness
fibers = []
for fam in base.families:
    row = []
    for B in fam.sets:
        pre = [p for p in X.points if proj[p] in B]
        subspace = al.subspace(X, pre, label=f"pre{sorted(B)}")
        row.append(al.solve_s_cover(subspace, (1, 1), 1).witness)
    fibers.append(row)
composed = al.fiber_compose(expansive, base, fibers)
print("fiber-composed cover valid:", al.check_s_cover(X, composed).ok,
      "demands:", composed.demands)
