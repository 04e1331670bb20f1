"""Sweep harness over the stacked-lattice space: minimal cover power after
two rounds of demands, tabulated over (r1, r2) and the bound.

Run:  python3 demos/06_cupc_sweep.py
"""

from asdimlab.experiment import format_cupc_table, run_cupc

result = run_cupc((1, 2, 4), box=16)
print(format_cupc_table(result))

# The table is observational: whether the second round's answer is constant
# across the r2 sweep is reported per (bound, r1) and never asserted.
