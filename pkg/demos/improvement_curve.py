#!/usr/bin/env python3
"""Improvement over local averages as network density varies.

Replicates the ideal-regime study at a reduced scale: networks are
generated across a range of target densities, each one is fitted, and
the improvement in MSE is smoothed against edges-per-vertex.  The
break-even point (where the smoothed improvement settles above zero)
is printed, and the dot cloud plus curve goes to
demos/output/improvement_curve.png.

Pass a higher replicate count on the command line for smoother output
(default 150; the full study uses 300+).
"""

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from netdate import improvement_curve, positive_crossing, run_experiment
from netdate.io import write_curve, write_experiment_records

replicates = int(sys.argv[1]) if len(sys.argv) > 1 else 150
out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

print(f"running {replicates} ideal-regime replicates ...")
records = run_experiment("ideal", replicates, seed_base=1)
accepted = [r for r in records if r.accepted]
print(f"{len(accepted)} accepted, "
      f"{sum(r.converged for r in accepted)} converged fits")

curve = improvement_curve(records)
crossing = positive_crossing(curve)
print(f"kernel bandwidth (Silverman): {curve.bandwidth:.3f}")
print(f"improvement becomes stably positive at "
      f"{crossing:.2f} edges per vertex" if crossing is not None
      else "improvement never settles above zero")

write_experiment_records(out_dir / "ideal_records.csv", records)
write_curve(out_dir / "ideal_curve.csv", curve)

xs = np.array([r.edges_per_vertex for r in accepted])
ys = np.array([r.improvement for r in accepted])
fig, ax = plt.subplots(figsize=(7, 4.5))
ax.scatter(xs, ys, s=10, alpha=0.5, label="one network per dot")
ax.plot(curve.grid_x, curve.values, color="crimson", lw=2,
        label="smoothed improvement")
ax.axhline(0.0, color="gray", lw=1)
if crossing is not None:
    ax.axvline(crossing, color="crimson", lw=1, ls=":",
               label=f"break-even at {crossing:.2f}")
ax.set_xlabel("edges per vertex")
ax.set_ylabel("improvement in MSE (years$^2$)")
ax.legend()
fig.tight_layout()
target = out_dir / "improvement_curve.png"
fig.savefig(target, dpi=130)
print(f"wrote {target}, plus ideal_records.csv and ideal_curve.csv")
