"""How equilibrium behavior shifts as one prior cell is swept.

Sweeping prior[0][0] pins that cell and rescales the remaining mass
proportionally, so firm 1 type 1's conditional weight on the patient
opponent moves through q = 3v / (1 + 2v).  The values below are chosen
to land q on 0.67, 0.45, 0.23 and 0.02.  As type 1 becomes more
convinced it faces the impatient type, it trades later.
"""
from pathlib import Path

import numpy as np

from impactgame import conditionals, load_scenario, sample, solve
from impactgame.cli import _apply_sweep_value

ROOT = Path(__file__).resolve().parents[1]

scen = load_scenario(str(ROOT / "scenarios" / "two_type.json"))
targets_q = [0.67, 0.45, 0.23, 0.02]
values = [q / (3.0 - 2.0 * q) for q in targets_q]

print(f"{'v=prior[0][0]':>14} {'q=p1[0][0]':>11} {'v0 (type 1)':>12} "
      f"{'done by t=0.5':>14}")
grid = np.linspace(0.0, 1.0, 401)
half = np.searchsorted(grid, 0.5)
for q, v in zip(targets_q, values):
    swept = _apply_sweep_value(scen, "prior[0][0]", v)
    beliefs = conditionals(swept.prior)
    sol = solve(swept)
    comp = sample(sol, grid).component(1, 0)
    frac = comp.positions[half] / comp.positions[-1]
    print(f"{v:14.6f} {beliefs.p1[0, 0]:11.4f} {sol.v0[0]:12.4f} {frac:14.1%}")

print("\nlower q -> heavier weight on the impatient opponent -> firm 1")
print("type 1 starts slower and back-loads its trading; at q=0.02 its")
print("initial rate is negative: it sells into the expected early price")
print("pressure and buys back once the impatient opponent is done.")
